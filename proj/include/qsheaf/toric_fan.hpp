#pragma once

#include "qsheaf/linalg.hpp"
#include "qsheaf/rational.hpp"

#include <cstddef>
#include <vector>

namespace qsheaf {

/// Sorted ray indices spanning a cone.
using ConeIndices = std::vector<std::size_t>;

/// Complete smooth simplicial fan. Rays keep their input order; every
/// downstream symbol (D_i, x_i, classes) is indexed by it.
class Fan {
public:
    std::size_t rank() const { return rank_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<IntVec>& rays() const { return rays_; }
    const IntVec& ray(std::size_t i) const { return rays_[i]; }
    const std::vector<ConeIndices>& max_cones() const { return max_cones_; }

    /// True when the (sorted) index set spans a cone of the fan.
    bool is_face(const ConeIndices& s) const;

    /// Every cone, the zero cone first, then by dimension and lexicographically.
    std::vector<ConeIndices> cones() const;

    /// Inverse of the ray matrix of max cone `k` (columns = rays).
    const QMatrix& cone_inverse(std::size_t k) const { return inverses_[k]; }

private:
    friend Fan build_fan(std::size_t, std::vector<IntVec>, std::vector<ConeIndices>);

    std::size_t rank_ = 0;
    std::vector<IntVec> rays_;
    std::vector<ConeIndices> max_cones_;
    std::vector<QMatrix> inverses_;
};

/// Validates primitivity, smoothness, distinctness and completeness.
/// Projectivity is taken on trust.
Fan build_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<ConeIndices> max_cones);

struct PrimitiveCollection {
    ConeIndices edges;
    std::size_t size() const { return edges.size(); }
    bool contains(std::size_t rho) const;
    friend bool operator==(const PrimitiveCollection&, const PrimitiveCollection&) = default;
};

/// Minimal non-faces, sorted lexicographically by their index lists.
std::vector<PrimitiveCollection> primitive_collections(const Fan& fan);

struct ConeLocation {
    ConeIndices cone;
    RatVec coefficients;  // strictly positive, aligned with `cone`
};

/// The unique cone holding `point` in its relative interior.
ConeLocation locate_cone(const Fan& fan, const RatVec& point);

/// f-vector: number of cones of each dimension 0..rank.
std::vector<std::int64_t> face_counts(const Fan& fan);

}  // namespace qsheaf
