#pragma once

#include "qsheaf/rational.hpp"

#include <vector>

namespace qsheaf {

/// Polyhedral cone given by generators, with an exact H-representation
/// obtained by Fourier–Motzkin projection of {x = G λ, λ ≥ 0}.
class RationalCone {
public:
    RationalCone() = default;
    RationalCone(std::vector<RatVec> generators, std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<RatVec>& generators() const { return generators_; }
    /// Rows a with a·x ≥ 0, scaled to primitive integer vectors.
    const std::vector<RatVec>& inequalities() const { return inequalities_; }
    /// Rows a with a·x = 0.
    const std::vector<RatVec>& equations() const { return equations_; }

    bool contains(const RatVec& x) const;
    bool contains(const IntVec& x) const;

    /// Generators not in the cone spanned by the others, in input order;
    /// of several parallel copies only the last survives.
    std::vector<RatVec> irredundant_generators() const;

private:
    std::size_t dim_ = 0;
    std::vector<RatVec> generators_;
    std::vector<RatVec> inequalities_;
    std::vector<RatVec> equations_;
};

RatVec to_ratvec(const IntVec& v);

}  // namespace qsheaf
