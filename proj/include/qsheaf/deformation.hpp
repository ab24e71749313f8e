#pragma once

#include "qsheaf/divisor_lattice.hpp"
#include "qsheaf/groebner.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsheaf {

/// One coefficient a_{rho m} of E_rho = sum_m a_{rho m} chi^m. `a` lives in W
/// (a linear form in the Picard generators).
struct DeformationEntry {
    std::size_t rho = 0;
    IntVec m;
    Polynomial a;
};

/// An entry whose coefficient is still text in D/psi symbols.
struct RawDeformationEntry {
    std::size_t rho = 0;
    IntVec m;
    std::string coeff;
};

struct Deformation {
    std::vector<DeformationEntry> entries;  // sorted by (rho, m)
    bool is_tangent = false;
};

/// Validates indices, character membership in the polytope of D_rho and
/// uniqueness of (rho, m); coefficients must be linear forms.
Deformation parse_deformation(const Fan& fan, const ClassLattice& cl, std::vector<DeformationEntry> entries);
Deformation parse_deformation(const Fan& fan, const ClassLattice& cl, const std::vector<RawDeformationEntry>& raw);

/// Entries (rho, 0, [D_rho]) for every ray.
Deformation tangent_deformation(const Fan& fan, const ClassLattice& cl);

/// Lattice points of the polytope of D_rho: <m, v_r> >= -delta(rho, r).
std::vector<IntVec> characters(const Fan& fan, std::size_t rho);

/// For a character m of D_rho, the column rho' of the linear slot it fills
/// (rho itself for m = 0), or nullopt for a nonlinear term.
std::optional<std::size_t> linear_slot(const Fan& fan, std::size_t rho, const IntVec& m);

/// Per equivalence class c (indexed by class id): the matrix A_c with rows
/// and columns in ascending ray order, and Q_c = det A_c.
struct LinearData {
    std::size_t pic_rank = 0;
    std::vector<PolyMatrix> matrices;
    std::vector<Polynomial> q;
};

LinearData linear_part(const Fan& fan, const ClassLattice& cl, const Deformation& e);

struct LocalFreeness {
    bool pass = true;
    RatVec witness;        // failing point, or base point of a failing line
    RatVec direction;      // nonempty when the failure was found along a line
    std::string detail;
    std::size_t points_checked = 0;
    std::size_t lines_checked = 0;
};

/// Probabilistic: samples random points, a generic point of every torus
/// orbit, and random lines (where a common factor of all maximal minors
/// exposes a rank drop), and checks that the |rays| x pic_rank matrix of
/// E_rho(x) has full rank. A pass is evidence, not a certificate.
LocalFreeness local_freeness_check(const Fan& fan, const ClassLattice& cl, const Deformation& e, int trials,
                                   std::uint64_t seed = 0x5eedULL);

/// Product of Q_c over the distinct classes met by the collection.
Polynomial collection_product(const ClassLattice& cl, const LinearData& lin, const PrimitiveCollection& k);

/// One generator Q_K per primitive collection, in collection order.
Ideal sr_ideal(const Fan& fan, const ClassLattice& cl, const LinearData& lin);

struct Polymology {
    Ideal ideal;
    GroebnerBasis gb;
    std::vector<std::int64_t> dims;  // degrees 0..dim X
    Monomial generator;              // the standard monomial spanning the top degree
};

/// Throws DegenerateDeformation when the top degree is not one-dimensional,
/// degree dim X + 1 survives, or some graded piece exceeds the h-vector.
Polymology polymology(const Fan& fan, const ClassLattice& cl, const LinearData& lin, GroebnerCache* cache = nullptr);

/// h-vector of the fan from its face counts.
std::vector<std::int64_t> h_vector(const Fan& fan);

}  // namespace qsheaf
