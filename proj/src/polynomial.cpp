#include "qsheaf/polynomial.hpp"

#include "qsheaf/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qsheaf {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    return m;
}

Monomial operator-(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

namespace {

std::strong_ordering grevlex(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) {
    int da = 0, db = 0;
    for (std::size_t i = from; i < to; ++i) da += a[i], db += b[i];
    if (da != db) return da <=> db;
    for (std::size_t i = to; i-- > from;)
        if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    const std::size_t n = a.size();
    if (!is_block() || split_ >= n) return grevlex(a, b, 0, n);
    if (auto c = grevlex(a, b, 0, split_); c != 0) return c;
    return grevlex(a, b, split_, n);
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c, MonomialOrder order) {
    Polynomial p(nvars, order);
    if (sgn(c) != 0) p.terms_.push_back({Monomial(nvars, 0), c});
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i, MonomialOrder order) {
    Monomial m(nvars, 0);
    m.at(i) = 1;
    return monomial(std::move(m), 1, order);
}

Polynomial Polynomial::monomial(Monomial m, const Rational& c, MonomialOrder order) {
    Polynomial p(m.size(), order);
    if (sgn(c) != 0) p.terms_.push_back({std::move(m), c});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms, MonomialOrder order) {
    std::map<Monomial, Rational> acc;
    for (auto& t : terms) {
        if (t.exponents.size() != nvars) throw Error(Errc::InvalidInput, "term has wrong number of variables");
        acc[t.exponents] += t.coeff;
    }
    Polynomial p(nvars, order);
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) p.terms_.push_back({m, c});
    std::sort(p.terms_.begin(), p.terms_.end(),
              [&](const Term& a, const Term& b) { return order.greater(a.exponents, b.exponents); });
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree(terms_.front().exponents) == 0);
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, degree(t.exponents));
    return d;
}

bool Polynomial::is_homogeneous() const {
    for (const auto& t : terms_)
        if (degree(t.exponents) != degree(terms_.front().exponents)) return false;
    return true;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.exponents == m) return t.coeff;
    return 0;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Polynomial p = *this;
    Rational inv = 1 / leading_coeff();
    for (auto& t : p.terms_) t.coeff *= inv;
    return p;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(nvars_, 1, order_);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
    Polynomial p = *this;
    p.order_ = order;
    std::sort(p.terms_.begin(), p.terms_.end(),
              [&](const Term& a, const Term& b) { return order.greater(a.exponents, b.exponents); });
    return p;
}

Polynomial Polynomial::extended(std::size_t nvars, MonomialOrder order) const {
    if (nvars < nvars_) throw Error(Errc::InvalidInput, "cannot shrink a polynomial ring");
    std::vector<Term> terms;
    for (auto t : terms_) {
        t.exponents.resize(nvars, 0);
        terms.push_back(std::move(t));
    }
    return from_terms(nvars, std::move(terms), order);
}

void Polynomial::check_ring(const Polynomial& other) const {
    if (nvars_ != other.nvars_ || !(order_ == other.order_))
        throw Error(Errc::InvalidInput, "polynomials from different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_ring(rhs);
    std::vector<Term> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < rhs.terms_.size()) {
        if (j == rhs.terms_.size()) {
            out.push_back(std::move(terms_[i++]));
            continue;
        }
        if (i == terms_.size()) {
            out.push_back(rhs.terms_[j++]);
            continue;
        }
        auto c = order_.compare(terms_[i].exponents, rhs.terms_[j].exponents);
        if (c > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (c < 0) {
            out.push_back(rhs.terms_[j++]);
        } else {
            Rational s = terms_[i].coeff + rhs.terms_[j].coeff;
            if (sgn(s) != 0) out.push_back({std::move(terms_[i].exponents), s});
            ++i, ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    check_ring(rhs);
    std::map<Monomial, Rational> acc;
    for (const auto& a : terms_)
        for (const auto& b : rhs.terms_) acc[a.exponents + b.exponents] += a.coeff * b.coeff;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) out.push_back({m, c});
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return order_.greater(a.exponents, b.exponents); });
    terms_ = std::move(out);
    return *this;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        c = abs(c);
        bool has_vars = degree(t.exponents) > 0;
        bool wrote = false;
        if (c != 1 || !has_vars) {
            os << c.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] == 0) continue;
            if (wrote) os << '*';
            os << names.at(i);
            if (t.exponents[i] > 1) os << '^' << t.exponents[i];
            wrote = true;
        }
        first = false;
    }
    return os.str();
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
    return out;
}

}  // namespace qsheaf
