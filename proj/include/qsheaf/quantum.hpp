#pragma once

#include "qsheaf/instanton.hpp"
#include "qsheaf/novikov.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qsheaf {

/// F_beta = prod_c Q_c^h1(d_c).
Polynomial four_fermi(const ClassLattice& cl, const LinearData& lin, const CurveClass& beta);

/// Shared state for correlator evaluation: the sector memo and an optional
/// Gröbner cache.
struct CorrelatorContext {
    const Fan& fan;
    const ClassLattice& cl;
    const LinearData& lin;
    GroebnerCache* cache = nullptr;
    SectorCache* sectors = nullptr;
    std::int64_t anchor_bound = 10;
};

struct SectorCorrelator {
    CurveClass beta;
    Rational lambda;
    std::string note;  // empty, or why the value is a structural zero
};

/// lambda with NF(R_{anchor,beta} * p * F_beta) = lambda * g(anchor). Only the
/// homogeneous part of p of degree c1·beta + dim X contributes.
SectorCorrelator correlator_sector(const CorrelatorContext& ctx, const Polynomial& p, const CurveClass& beta,
                                   const CurveClass& anchor);

/// Top-degree standard monomial of the anchor sector; throws AnchorDegenerate
/// unless that piece is one-dimensional.
Monomial anchor_generator(const CorrelatorContext& ctx, const CurveClass& anchor);

struct CorrelatorReport {
    Polynomial p;
    CurveClass anchor;
    Monomial generator;
    std::vector<SectorCorrelator> sectors;
    NovikovSeries series;
};

/// Sum over effective beta with c1·beta + dim X equal to the degree of some
/// component of p and c1·beta <= max_c1_degree, all against one anchor.
/// Throws NonFanoEnumerationUnbounded when the degree slices are infinite.
CorrelatorReport correlator_series(const CorrelatorContext& ctx, const Polynomial& p, std::int64_t max_c1_degree);

/// The same for an explicit sector list (and anchor, if given).
CorrelatorReport correlator_over(const CorrelatorContext& ctx, const Polynomial& p,
                                 const std::vector<CurveClass>& sectors, std::optional<CurveClass> anchor = {});

struct QuantumRelation {
    PrimitiveCollection k;
    BetaK beta_k;
    Polynomial lhs;  // Q_K
    Polynomial rhs;  // prod over [K^-] of Q_c^(-d_c)
    NovikovPolynomial difference;
};

std::vector<QuantumRelation> qsr_generators(const Fan& fan, const ClassLattice& cl, const LinearData& lin);

/// Replaceable h0/h1 for checking the checker.
struct RiemannRochFunctions {
    std::function<std::int64_t(std::int64_t)> h0;
    std::function<std::int64_t(std::int64_t)> h1;
    static RiemannRochFunctions standard();
};

/// Class-by-class exponent identity between
///   R_{beta', beta+beta_K} F_{beta+beta_K} Q_K  and  R_{beta', beta} F_beta prod_{[K^-]} Q_c^(-d_c).
/// Throws NotDominating unless beta' dominates beta and beta + beta_K.
bool verify_qc_relation(const ClassLattice& cl, const QuantumRelation& rel, const CurveClass& beta,
                        const CurveClass& upper, const RiemannRochFunctions& rr = RiemannRochFunctions::standard());

/// The same identity checked by multiplying out both sides.
bool verify_qc_expansion(const ClassLattice& cl, const LinearData& lin, const QuantumRelation& rel,
                         const CurveClass& beta, const CurveClass& upper);

/// <Y Q_K>_{beta+beta_K} == <Y rhs>_beta against the anchor `upper`.
bool verify_qc_correlator(const CorrelatorContext& ctx, const QuantumRelation& rel, const CurveClass& beta,
                          const CurveClass& upper, const Polynomial& y);

struct VerificationRow {
    std::size_t relation;
    CurveClass beta;
    CurveClass upper;
    bool exponent_ok;
    std::optional<bool> expansion_ok;
};

/// Exponent check for every relation and every beta in the Mori window with
/// c1 <= grid (at most `grid` generators), each against find_anchor of
/// {beta, beta + beta_K}. Every `expansion_stride`-th row (0 = none) is also
/// multiplied out.
std::vector<VerificationRow> verify_grid(const Fan& fan, const ClassLattice& cl, const LinearData& lin,
                                         std::int64_t grid, std::size_t expansion_stride = 0,
                                         std::int64_t anchor_bound = 10);

/// Coefficients of <Y r> over the window c1 <= max_c1 (at most max_terms
/// generators); every entry is zero when r annihilates correlators.
NovikovSeries relation_correlator(const CorrelatorContext& ctx, const QuantumRelation& rel, const Polynomial& y,
                                  std::int64_t max_c1, std::int64_t max_terms);

/// Normal form modulo QSR in the ring of psi_1..psi_k and q_1..q_k (Mori
/// generators), block order psi >> q. Throws UnsupportedNovikovShape unless
/// the Mori generators are a lattice basis and every beta_K has nonnegative
/// Mori coordinates.
NovikovPolynomial quantum_normal_form(const Fan& fan, const ClassLattice& cl, const LinearData& lin,
                                      const NovikovPolynomial& p, GroebnerCache* cache = nullptr);

/// QSR as an ideal in the psi,q ring described above.
Ideal qsr_ideal(const Fan& fan, const ClassLattice& cl, const LinearData& lin);

}  // namespace qsheaf
