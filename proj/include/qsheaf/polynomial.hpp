#pragma once

#include "qsheaf/rational.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace qsheaf {

using Monomial = std::vector<int>;

int degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial operator+(const Monomial& a, const Monomial& b);
Monomial operator-(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic order with x_1 > x_2 > ...; optionally a block
/// order comparing the first `split` variables by grevlex first and the rest
/// by grevlex second.
class MonomialOrder {
public:
    MonomialOrder() = default;
    static MonomialOrder block(std::size_t split) {
        MonomialOrder o;
        o.split_ = split;
        return o;
    }

    std::size_t split() const { return split_; }
    bool is_block() const { return split_ != std::numeric_limits<std::size_t>::max(); }
    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    std::size_t split_ = std::numeric_limits<std::size_t>::max();
};

struct Term {
    Monomial exponents;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over Q; terms are kept sorted by decreasing monomial
/// order and never carry a zero coefficient.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars, MonomialOrder order = {}) : nvars_(nvars), order_(order) {}

    static Polynomial constant(std::size_t nvars, const Rational& c, MonomialOrder order = {});
    static Polynomial variable(std::size_t nvars, std::size_t i, MonomialOrder order = {});
    static Polynomial monomial(Monomial m, const Rational& c, MonomialOrder order = {});
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms, MonomialOrder order = {});

    std::size_t nvars() const { return nvars_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    const Term& leading_term() const { return terms_.front(); }
    const Monomial& leading_monomial() const { return terms_.front().exponents; }
    const Rational& leading_coeff() const { return terms_.front().coeff; }

    /// Maximal total degree over all variables; -1 for zero.
    int total_degree() const;
    /// All terms share one total degree.
    bool is_homogeneous() const;
    Rational coefficient(const Monomial& m) const;

    Polynomial monic() const;
    Polynomial pow(unsigned k) const;
    Polynomial with_order(MonomialOrder order) const;
    /// Embed into a ring with more variables appended on the right.
    Polynomial extended(std::size_t nvars, MonomialOrder order) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// e.g. "3/2*x1^2*x2 - x3 + 1" with the supplied variable names.
    std::string to_string(const std::vector<std::string>& names) const;

private:
    void check_ring(const Polynomial& other) const;

    std::size_t nvars_ = 0;
    MonomialOrder order_;
    std::vector<Term> terms_;
};

/// Variable names x1..xn.
std::vector<std::string> default_names(std::size_t n, const std::string& stem);

}  // namespace qsheaf
