#pragma once

#include "qsheaf/deformation.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qsheaf {

struct EnhancedEdge {
    std::size_t rho;
    std::int64_t i;  // 0 <= i <= d_rho
    friend bool operator==(const EnhancedEdge&, const EnhancedEdge&) = default;
};

/// Data of the moduli space X_beta needed downstream. Its fan is never built:
/// everything is a function of the exponents h0(d_c) and the primitive
/// collections of the base fan.
struct SectorData {
    CurveClass beta;
    bool effective = true;
    bool nonempty = true;
    std::vector<EnhancedEdge> enhanced_edges;
    std::vector<std::size_t> degenerate;  // rays rho whose (rho, 0) is degenerate
    std::int64_t n_beta = 0;
    std::vector<std::int64_t> exponents;  // h0(d_c) per class
    std::vector<Polynomial> ideal_gens;

    Ideal ideal() const;
};

SectorData sector(const Fan& fan, const ClassLattice& cl, const LinearData& lin, const CurveClass& beta);

struct Transition {
    CurveClass source;
    CurveClass target;
    Polynomial r;
};

/// R = prod_c Q_c^(h0(d_c') - h0(d_c)); throws NotDominating.
Transition transition(const ClassLattice& cl, const LinearData& lin, const CurveClass& upper, const CurveClass& lower);

/// R * Q_{K_beta} is a multiple of Q_{K_beta'} for every collection, checked on
/// exponents of the Q_c.
bool transfer_check(const Fan& fan, const ClassLattice& cl, const LinearData& lin, const CurveClass& upper,
                    const CurveClass& lower);

/// Sum over rays of h0(d_rho) minus the Picard rank.
std::int64_t sector_dimension(const ClassLattice& cl, const CurveClass& beta);

/// Thread-safe memo of sector() for one (fan, deformation).
class SectorCache {
public:
    SectorCache(const Fan& fan, const ClassLattice& cl, const LinearData& lin) : fan_(fan), cl_(cl), lin_(lin) {}
    std::shared_ptr<const SectorData> get(const CurveClass& beta);

private:
    const Fan& fan_;
    const ClassLattice& cl_;
    const LinearData& lin_;
    std::mutex mutex_;
    std::map<IntVec, std::shared_ptr<const SectorData>> entries_;
};

}  // namespace qsheaf
