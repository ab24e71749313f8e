#include "qsheaf/novikov.hpp"

#include "qsheaf/error.hpp"

#include <sstream>

namespace qsheaf {

namespace {

bool is_zero_vec(const IntVec& v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

NovikovPolynomial NovikovPolynomial::classical(const Polynomial& p, std::size_t curve_rank) {
    NovikovPolynomial n(p.nvars(), curve_rank);
    if (!p.is_zero()) n.parts_.emplace(IntVec(curve_rank, 0), p);
    return n;
}

NovikovPolynomial NovikovPolynomial::q_power(const IntVec& beta, std::size_t nvars) {
    NovikovPolynomial n(nvars, beta.size());
    n.parts_.emplace(beta, Polynomial::constant(nvars, 1));
    return n;
}

bool NovikovPolynomial::has_quantum_terms() const {
    for (const auto& [beta, p] : parts_)
        if (!is_zero_vec(beta)) return true;
    return false;
}

Polynomial NovikovPolynomial::classical_part() const {
    auto it = parts_.find(IntVec(curve_rank_, 0));
    return it == parts_.end() ? Polynomial(nvars_) : it->second;
}

NovikovPolynomial NovikovPolynomial::at_q_zero() const { return classical(classical_part(), curve_rank_); }

NovikovPolynomial& NovikovPolynomial::operator+=(const NovikovPolynomial& rhs) {
    if (nvars_ != rhs.nvars_ || curve_rank_ != rhs.curve_rank_)
        throw Error(Errc::InvalidInput, "Novikov polynomials from different rings");
    for (const auto& [beta, p] : rhs.parts_) {
        auto [it, fresh] = parts_.try_emplace(beta, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }
    return *this;
}

NovikovPolynomial& NovikovPolynomial::operator*=(const NovikovPolynomial& rhs) {
    if (nvars_ != rhs.nvars_ || curve_rank_ != rhs.curve_rank_)
        throw Error(Errc::InvalidInput, "Novikov polynomials from different rings");
    NovikovPolynomial out(nvars_, curve_rank_);
    for (const auto& [a, p] : parts_)
        for (const auto& [b, q] : rhs.parts_) {
            IntVec s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            NovikovPolynomial term(nvars_, curve_rank_);
            Polynomial prod = p * q;
            if (!prod.is_zero()) term.parts_.emplace(std::move(s), std::move(prod));
            out += term;
        }
    *this = std::move(out);
    return *this;
}

NovikovPolynomial& NovikovPolynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        parts_.clear();
        return *this;
    }
    for (auto& [beta, p] : parts_) p *= c;
    return *this;
}

NovikovPolynomial NovikovPolynomial::operator-() const {
    NovikovPolynomial n = *this;
    for (auto& [beta, p] : n.parts_) p = -p;
    return n;
}

NovikovPolynomial NovikovPolynomial::pow(unsigned k) const {
    NovikovPolynomial r = classical(Polynomial::constant(nvars_, 1), curve_rank_);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
}

std::optional<int> NovikovPolynomial::weighted_degree(const ClassLattice& cl) const {
    std::optional<int> deg;
    for (const auto& [beta, p] : parts_) {
        const int qdeg = static_cast<int>(cl.curve(beta).c1());
        for (const auto& t : p.terms()) {
            int d = degree(t.exponents) + qdeg;
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
    }
    return deg ? deg : std::optional<int>(0);
}

std::string q_monomial_string(const ClassLattice& cl, const IntVec& beta) {
    if (is_zero_vec(beta)) return "1";
    std::ostringstream os;
    if (cl.mori_unimodular()) {
        IntVec a = cl.mori_coordinates(cl.curve(beta));
        bool first = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            if (!first) os << '*';
            os << 'q' << (i + 1);
            if (a[i] != 1) os << '^' << a[i];
            first = false;
        }
        return os.str();
    }
    os << "q^" << to_string(beta);
    return os.str();
}

std::string NovikovPolynomial::to_string(const ClassLattice& cl) const {
    if (parts_.empty()) return "0";
    auto names = psi_names(nvars_);
    std::ostringstream os;
    bool first = true;
    // Classical part first, then by curve coordinates.
    std::vector<const std::pair<const IntVec, Polynomial>*> order;
    for (const auto& kv : parts_)
        if (is_zero_vec(kv.first)) order.insert(order.begin(), &kv);
        else order.push_back(&kv);
    for (const auto* kv : order) {
        const auto& [beta, p] = *kv;
        std::string q = q_monomial_string(cl, beta);
        for (const auto& t : p.terms()) {
            Rational c = t.coeff;
            os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
            first = false;
            c = abs(c);
            std::string mono = Polynomial::monomial(t.exponents, 1).to_string(names);
            bool unit_mono = degree(t.exponents) == 0;
            std::vector<std::string> factors;
            if (c != 1) factors.push_back(c.get_str());
            if (!unit_mono) factors.push_back(mono);
            if (q != "1") factors.push_back(q);
            if (factors.empty()) factors.push_back("1");
            for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        }
    }
    return os.str();
}

std::string series_to_string(const ClassLattice& cl, const NovikovSeries& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [beta, c] : s) {
        if (sgn(c) == 0) continue;
        os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
        first = false;
        Rational a = abs(c);
        std::string q = q_monomial_string(cl, beta);
        if (a == 1)
            os << q;
        else if (q == "1")
            os << a.get_str();
        else
            os << a.get_str() << '*' << q;
    }
    return first ? "0" : os.str();
}

std::vector<std::string> psi_names(std::size_t k) { return default_names(k, "psi"); }

}  // namespace qsheaf
