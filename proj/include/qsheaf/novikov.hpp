#pragma once

#include "qsheaf/divisor_lattice.hpp"
#include "qsheaf/polynomial.hpp"

#include <map>
#include <string>

namespace qsheaf {

/// Element of Sym*W ⊗ C[q^beta]: a finite sum of q^beta times polynomials in
/// the Picard generators, keyed by curve-basis coordinates of beta.
class NovikovPolynomial {
public:
    NovikovPolynomial() = default;
    NovikovPolynomial(std::size_t nvars, std::size_t curve_rank) : nvars_(nvars), curve_rank_(curve_rank) {}

    static NovikovPolynomial classical(const Polynomial& p, std::size_t curve_rank);
    static NovikovPolynomial q_power(const IntVec& beta, std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    std::size_t curve_rank() const { return curve_rank_; }
    const std::map<IntVec, Polynomial>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    bool has_quantum_terms() const;

    /// The q^0 part.
    Polynomial classical_part() const;
    /// Every q^beta (beta != 0) set to zero.
    NovikovPolynomial at_q_zero() const;

    NovikovPolynomial& operator+=(const NovikovPolynomial& rhs);
    NovikovPolynomial& operator*=(const NovikovPolynomial& rhs);
    NovikovPolynomial& operator*=(const Rational& c);
    NovikovPolynomial operator-() const;
    NovikovPolynomial pow(unsigned k) const;

    friend NovikovPolynomial operator+(NovikovPolynomial a, const NovikovPolynomial& b) { return a += b; }
    friend NovikovPolynomial operator-(NovikovPolynomial a, const NovikovPolynomial& b) { return a += -b; }
    friend NovikovPolynomial operator*(NovikovPolynomial a, const NovikovPolynomial& b) { return a *= b; }
    friend bool operator==(const NovikovPolynomial&, const NovikovPolynomial&) = default;

    /// Homogeneous when every term has degree (psi-degree + c1·beta) equal to
    /// one value; returns that value, or nullopt.
    std::optional<int> weighted_degree(const ClassLattice& cl) const;

    std::string to_string(const ClassLattice& cl) const;

private:
    std::size_t nvars_ = 0;
    std::size_t curve_rank_ = 0;
    std::map<IntVec, Polynomial> parts_;
};

/// Sum of lambda_beta q^beta with rational coefficients.
using NovikovSeries = std::map<IntVec, Rational>;

/// "q1^2*q2" in Mori generator exponents when those form a lattice basis,
/// otherwise "q^(a,b)" in curve-basis coordinates; "1" for beta = 0.
std::string q_monomial_string(const ClassLattice& cl, const IntVec& beta);
std::string series_to_string(const ClassLattice& cl, const NovikovSeries& s);

/// psi1..psik
std::vector<std::string> psi_names(std::size_t k);

}  // namespace qsheaf
