#include "qsheaf/groebner.hpp"

#include "qsheaf/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qsheaf {

namespace {

// Working polynomial with cheap access to, and removal of, its leading term.
class Workspace {
public:
    explicit Workspace(const Polynomial& p)
        : nvars_(p.nvars()), order_(p.order()), terms_(Desc{&order_}) {
        for (const auto& t : p.terms()) terms_.emplace(t.exponents, t.coeff);
    }

    bool empty() const { return terms_.empty(); }
    std::pair<Monomial, Rational> pop() {
        auto it = terms_.begin();
        auto out = std::make_pair(it->first, it->second);
        terms_.erase(it);
        return out;
    }
    const Monomial& lead() const { return terms_.begin()->first; }
    const Rational& lead_coeff() const { return terms_.begin()->second; }

    // this -= c * x^shift * g
    void subtract(const Rational& c, const Monomial& shift, const Polynomial& g) {
        for (const auto& t : g.terms()) {
            Monomial m = t.exponents + shift;
            auto [it, fresh] = terms_.try_emplace(std::move(m), 0);
            it->second -= c * t.coeff;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

private:
    struct Desc {
        const MonomialOrder* order;
        bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
    };
    std::size_t nvars_;
    MonomialOrder order_;
    std::map<Monomial, Rational, Desc> terms_;
};

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial a = Polynomial::monomial(l - f.leading_monomial(), 1 / f.leading_coeff(), f.order()) * f;
    Polynomial b = Polynomial::monomial(l - g.leading_monomial(), 1 / g.leading_coeff(), g.order()) * g;
    return a - b;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Polynomial reduce_against(const Polynomial& p, const std::vector<Polynomial>& basis, std::size_t skip) {
    Workspace w(p);
    std::vector<Term> rem;
    while (!w.empty()) {
        const Monomial& lt = w.lead();
        std::size_t hit = basis.size();
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (i != skip && !basis[i].is_zero() && divides(basis[i].leading_monomial(), lt)) {
                hit = i;
                break;
            }
        if (hit == basis.size()) {
            auto [m, c] = w.pop();
            rem.push_back({std::move(m), std::move(c)});
        } else {
            const auto& g = basis[hit];
            Rational c = w.lead_coeff() / g.leading_coeff();
            Monomial shift = lt - g.leading_monomial();
            w.subtract(c, shift, g);
        }
    }
    // Remainder terms were emitted in decreasing order already.
    return Polynomial::from_terms(p.nvars(), std::move(rem), p.order());
}

}  // namespace

std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(Errc::InvalidInput, "division by zero polynomial");
    Workspace w(a);
    std::vector<Term> quot, rem;
    while (!w.empty()) {
        const Monomial& lt = w.lead();
        if (divides(b.leading_monomial(), lt)) {
            Rational c = w.lead_coeff() / b.leading_coeff();
            Monomial shift = lt - b.leading_monomial();
            quot.push_back({shift, c});
            w.subtract(c, shift, b);
        } else {
            auto [m, c] = w.pop();
            rem.push_back({std::move(m), std::move(c)});
        }
    }
    return {Polynomial::from_terms(a.nvars(), std::move(quot), a.order()),
            Polynomial::from_terms(a.nvars(), std::move(rem), a.order())};
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divide(a, b);
    if (!r.is_zero()) throw Error(Errc::NotExactDivision, "division leaves a nonzero remainder");
    return q;
}

Polynomial det(const PolyMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error(Errc::NonSquare, "determinant of a non-square matrix");
    if (n == 0) throw Error(Errc::NonSquare, "determinant of an empty matrix");
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (n == 3) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    PolyMatrix a = m;
    const auto nv = a[0][0].nvars();
    const auto ord = a[0][0].order();
    Polynomial prev = Polynomial::constant(nv, 1, ord);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Polynomial(nv, ord);
            std::swap(a[p], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

bool GroebnerBasis::is_unit() const {
    return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

std::string canonical_key(const Ideal& ideal) {
    std::ostringstream os;
    os << "n=" << ideal.nvars << ";split=" << (ideal.order.is_block() ? std::to_string(ideal.order.split()) : "none");
    for (const auto& g : ideal.generators) {
        os << ";";
        for (const auto& t : g.terms()) {
            os << t.coeff.get_str() << '[';
            for (std::size_t i = 0; i < t.exponents.size(); ++i) os << (i ? "," : "") << t.exponents[i];
            os << ']';
        }
    }
    return os.str();
}

std::optional<GroebnerBasis> MemoryGroebnerCache::find(const std::string& key) {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void MemoryGroebnerCache::store(const std::string& key, const GroebnerBasis& gb) {
    std::lock_guard lock(mutex_);
    entries_.try_emplace(key, gb);
}

std::size_t MemoryGroebnerCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

GroebnerBasis groebner(const Ideal& ideal, GroebnerCache* cache) {
    std::string key;
    if (cache) {
        key = canonical_key(ideal);
        if (auto hit = cache->find(key)) return *hit;
    }

    std::vector<Polynomial> g;
    for (const auto& p : ideal.generators) {
        if (p.nvars() != ideal.nvars) throw Error(Errc::InvalidInput, "generator lives in another ring");
        if (!p.is_zero()) g.push_back(p.with_order(ideal.order).monic());
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

    const auto& order = ideal.order;
    while (!pairs.empty()) {
        auto best = pairs.begin();
        Monomial best_lcm = lcm(g[best->first].leading_monomial(), g[best->second].leading_monomial());
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            Monomial l = lcm(g[it->first].leading_monomial(), g[it->second].leading_monomial());
            if (order.compare(l, best_lcm) < 0) {
                best = it;
                best_lcm = std::move(l);
            }
        }
        auto [i, j] = *best;
        pairs.erase(best);
        if (coprime(g[i].leading_monomial(), g[j].leading_monomial())) continue;
        Polynomial r = reduce_against(s_polynomial(g[i], g[j]), g, g.size());
        if (r.is_zero()) continue;
        r = r.monic();
        for (std::size_t k = 0; k < g.size(); ++k) pairs.emplace_back(k, g.size());
        g.push_back(std::move(r));
    }

    // Minimalize, then interreduce.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            const auto& li = g[i].leading_monomial();
            const auto& lj = g[j].leading_monomial();
            if (divides(lj, li) && (lj != li || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) minimal[i] = reduce_against(minimal[i], minimal, i).monic();
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.greater(a.leading_monomial(), b.leading_monomial());
    });

    GroebnerBasis gb{ideal.nvars, ideal.order, std::move(minimal)};
    if (cache) cache->store(key, gb);
    return gb;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    if (p.nvars() != gb.nvars) throw Error(Errc::InvalidInput, "polynomial and basis live in different rings");
    return reduce_against(p.with_order(gb.order), gb.basis, gb.basis.size());
}

std::vector<Monomial> monomials_of_degree(std::size_t n, int degree) {
    std::vector<Monomial> out;
    if (n == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    Monomial cur(n, 0);
    // Enumerate compositions of `degree` into n parts.
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == n) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, int degree) {
    std::vector<Monomial> out;
    for (auto& m : monomials_of_degree(gb.nvars, degree)) {
        bool reducible = std::any_of(gb.basis.begin(), gb.basis.end(),
                                     [&](const Polynomial& g) { return divides(g.leading_monomial(), m); });
        if (!reducible) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return gb.order.greater(a, b); });
    return out;
}

std::vector<std::int64_t> quotient_dims(const GroebnerBasis& gb, int up_to_degree) {
    for (const auto& g : gb.basis)
        if (!g.is_homogeneous()) throw Error(Errc::NonHomogeneousIdeal, "quotient dimensions need a homogeneous ideal");
    std::vector<std::int64_t> dims;
    for (int d = 0; d <= up_to_degree; ++d)
        dims.push_back(static_cast<std::int64_t>(standard_monomials(gb, d).size()));
    return dims;
}

}  // namespace qsheaf
