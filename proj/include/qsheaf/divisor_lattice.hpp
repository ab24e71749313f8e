#pragma once

#include "qsheaf/cone.hpp"
#include "qsheaf/toric_fan.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace qsheaf {

/// A curve class. `coords` are coordinates in the curve basis (dual to the
/// Picard basis); `d[rho]` is the intersection number D_rho · beta.
struct CurveClass {
    IntVec coords;
    IntVec d;

    std::int64_t c1() const;  // c_1(X)·beta = sum of d
    bool is_zero() const;

    friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.coords == b.coords; }
    friend std::strong_ordering operator<=>(const CurveClass& a, const CurveClass& b) { return a.coords <=> b.coords; }
};

CurveClass operator+(const CurveClass& a, const CurveClass& b);
CurveClass operator-(const CurveClass& a, const CurveClass& b);
CurveClass operator*(std::int64_t k, const CurveClass& a);

/// A linear-equivalence class of toric divisors.
struct EquivClass {
    std::size_t id = 0;
    ConeIndices members;
    std::size_t size() const { return members.size(); }
    std::size_t representative() const { return members.front(); }
};

/// Picard group, curve lattice and Mori cone of a smooth complete toric variety.
///
/// The Picard basis is the set of classes [D_rho] for the rays outside the
/// first maximal cone (in ray order); the curve basis is dual to it, so the
/// intersection pairing is the plain dot product of coordinates.
class ClassLattice {
public:
    std::size_t pic_rank() const { return basis_rays_.size(); }
    std::size_t num_rays() const { return divisor_classes_.size(); }

    const std::vector<std::size_t>& basis_rays() const { return basis_rays_; }
    const IntVec& divisor_class(std::size_t rho) const { return divisor_classes_[rho]; }
    const std::vector<IntVec>& divisor_classes() const { return divisor_classes_; }
    const std::vector<CurveClass>& curve_basis() const { return curve_basis_; }

    const std::vector<EquivClass>& classes() const { return classes_; }
    std::size_t class_of(std::size_t rho) const { return class_of_[rho]; }
    /// d_c^beta for an equivalence class c.
    std::int64_t class_degree(const CurveClass& beta, std::size_t c) const {
        return beta.d[classes_[c].representative()];
    }

    CurveClass curve(IntVec coords) const;
    CurveClass zero_curve() const { return curve(IntVec(pic_rank(), 0)); }
    /// Validates sum d_rho v_rho = 0 before converting.
    CurveClass curve_from_intersections(const IntVec& d) const;

    /// Extremal wall classes, sorted by descending intersection vector.
    const std::vector<CurveClass>& mori_generators() const { return mori_generators_; }
    const RationalCone& mori_cone() const { return mori_cone_; }
    bool is_effective(const CurveClass& beta) const { return mori_cone_.contains(beta.coords); }
    /// True when the Mori generators form a Z-basis of the curve lattice.
    bool mori_unimodular() const { return mori_unimodular_; }
    /// Coordinates of beta in the Mori generator basis (requires mori_unimodular()).
    IntVec mori_coordinates(const CurveClass& beta) const;

private:
    friend ClassLattice class_lattice(const Fan& fan);

    std::vector<IntVec> rays_;
    std::vector<std::size_t> basis_rays_;
    std::vector<IntVec> divisor_classes_;
    std::vector<CurveClass> curve_basis_;
    std::vector<EquivClass> classes_;
    std::vector<std::size_t> class_of_;
    std::vector<CurveClass> mori_generators_;
    RationalCone mori_cone_;
    bool mori_unimodular_ = false;
    QMatrix mori_inverse_;
};

ClassLattice class_lattice(const Fan& fan);

std::vector<EquivClass> equiv_classes(const ClassLattice& cl);

struct ClassMultiplicity {
    std::size_t class_id;
    std::int64_t multiplicity;
};

struct BetaK {
    CurveClass beta;
    ConeIndices sigma;                    // cone holding sum_{rho in K} v_rho
    std::vector<ClassMultiplicity> minus;  // [K^-] with multiplicity -d_c
    std::vector<std::size_t> plus;         // [K]
};

BetaK beta_K(const Fan& fan, const ClassLattice& cl, const PrimitiveCollection& k);

/// The distinct wall classes of all codimension-one cones, before pruning.
std::vector<CurveClass> wall_classes(const Fan& fan, const ClassLattice& cl);

/// Extremal generators of the Mori cone.
std::vector<CurveClass> mori_generators(const Fan& fan, const ClassLattice& cl);

/// Whether the cone spanned by the beta_K equals the Mori cone.
bool beta_k_cone_matches_mori(const Fan& fan, const ClassLattice& cl);

bool dominates(const ClassLattice& cl, const CurveClass& upper, const CurveClass& lower);

struct Anchor {
    CurveClass anchor;
    CurveClass positive;    // beta_A
    std::int64_t multiple;  // n
};

/// beta_hat = sum(sectors) + n * beta_A with beta_A positive on every class.
Anchor find_anchor_detailed(const ClassLattice& cl, const std::vector<CurveClass>& sectors, std::int64_t bound = 10);
CurveClass find_anchor(const ClassLattice& cl, const std::vector<CurveClass>& sectors, std::int64_t bound = 10);

/// Lattice points of the Mori cone with c1 = value. Requires c1 > 0 on every
/// Mori generator.
std::vector<CurveClass> effective_slice(const ClassLattice& cl, std::int64_t c1_value);

/// Nonnegative integer combinations sum a_i g_i of the Mori generators with
/// sum a_i <= max_terms and c1 <= max_c1, deduplicated and sorted.
std::vector<CurveClass> mori_window(const ClassLattice& cl, std::int64_t max_c1, std::int64_t max_terms);

bool is_fano_type(const ClassLattice& cl);

}  // namespace qsheaf
