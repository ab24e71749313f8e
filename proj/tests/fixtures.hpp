#pragma once

#include "qsheaf/deformation.hpp"
#include "qsheaf/expression.hpp"
#include "qsheaf/instanton.hpp"
#include "qsheaf/quantum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace qsheaf;

inline Fan p1() { return build_fan(1, {{1}, {-1}}, {{0}, {1}}); }
inline Fan p2() { return build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }
inline Fan hirzebruch(std::int64_t n) {
    return build_fan(2, {{1, 0}, {-1, n}, {0, 1}, {0, -1}}, {{0, 2}, {1, 2}, {1, 3}, {0, 3}});
}
inline Fan p1xp1() { return hirzebruch(0); }

struct Example {
    std::string name;
    Fan fan;
};

inline std::vector<Example> examples() {
    return {{"P1", p1()}, {"P2", p2()}, {"P1xP1", p1xp1()}, {"F1", hirzebruch(1)}, {"F2", hirzebruch(2)},
            {"F3", hirzebruch(3)}};
}

/// Everything downstream of a fan and a deformation.
struct Setup {
    Fan fan;
    ClassLattice cl;
    Deformation e;
    LinearData lin;

    explicit Setup(Fan f) : fan(std::move(f)), cl(class_lattice(fan)), e(tangent_deformation(fan, cl)),
                            lin(linear_part(fan, cl, e)) {}
    Setup(Fan f, const std::vector<RawDeformationEntry>& raw)
        : fan(std::move(f)), cl(class_lattice(fan)), e(parse_deformation(fan, cl, raw)), lin(linear_part(fan, cl, e)) {}

    Polynomial psi(std::size_t i) const { return Polynomial::variable(cl.pic_rank(), i); }
    Polynomial parse(const std::string& s) const { return parse_classical(s, cl); }
    CurveClass curve_d(const IntVec& d) const { return cl.curve_from_intersections(d); }
};

/// The tangent entries (rho, 0, D_rho) followed by `extra`.
inline std::vector<RawDeformationEntry> tangent_plus(const Fan& fan, std::vector<RawDeformationEntry> extra) {
    std::vector<RawDeformationEntry> out;
    for (std::size_t rho = 0; rho < fan.num_rays(); ++rho)
        out.push_back({rho, IntVec(fan.rank(), 0), "D" + std::to_string(rho + 1)});
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

/// P1xP1 with A_c1 = [[psi1, g1 psi2], [g2 psi2, psi1]] and
/// A_c2 = [[psi2, e1 psi1], [e2 psi1, psi2]].
inline std::vector<RawDeformationEntry> p1xp1_deformation(const std::string& g1, const std::string& g2,
                                                         const std::string& e1, const std::string& e2) {
    return tangent_plus(p1xp1(), {{0, {-1, 0}, g1 + "*D3"},
                                  {1, {1, 0}, g2 + "*D3"},
                                  {2, {0, -1}, e1 + "*D1"},
                                  {3, {0, 1}, e2 + "*D1"}});
}

// ---------------------------------------------------------------------------
// Oracles. These deliberately avoid the library's algorithms.

/// Exact Gaussian elimination rank over Q.
inline std::size_t oracle_rank(std::vector<std::vector<Rational>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Leibniz sum over permutations.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rational total(0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rational t(inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i) t *= m[i][perm[i]];
        total += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline Polynomial leibniz_det(const PolyMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Polynomial total(m[0][0].nvars());
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Polynomial t = Polynomial::constant(m[0][0].nvars(), inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i) t *= m[i][perm[i]];
        total += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Exponent vectors of degree d in n variables, built by recursion.
inline void oracle_monomials(std::size_t n, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (cur.size() + 1 == n) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(e);
        oracle_monomials(n, d - e, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> oracle_monomials(std::size_t n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (n == 0) return out;
    oracle_monomials(n, d, cur, out);
    return out;
}

/// Dimension of the degree-d piece of the ideal: span of monomial multiples of
/// the homogeneous generators, written in the monomial basis.
inline std::vector<std::vector<Rational>> oracle_span(const std::vector<Polynomial>& gens, std::size_t n, int d) {
    auto basis = oracle_monomials(n, d);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) {
        const int gd = g.total_degree();
        if (gd > d) continue;
        for (const auto& m : oracle_monomials(n, d - gd)) {
            std::vector<Rational> row(basis.size(), Rational(0));
            for (const auto& t : g.terms()) {
                std::vector<int> e(n);
                for (std::size_t i = 0; i < n; ++i) e[i] = t.exponents[i] + m[i];
                row[index.at(e)] += t.coeff;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline bool oracle_member(const std::vector<Polynomial>& gens, const Polynomial& p, std::size_t n) {
    if (p.is_zero()) return true;
    const int d = p.total_degree();
    auto rows = oracle_span(gens, n, d);
    const std::size_t before = oracle_rank(rows);
    auto basis = oracle_monomials(n, d);
    std::vector<Rational> row(basis.size(), Rational(0));
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (std::equal(basis[i].begin(), basis[i].end(), t.exponents.begin())) row[i] += t.coeff;
    rows.push_back(row);
    return oracle_rank(rows) == before;
}

/// Quotient dimension in degree d by linear algebra.
inline std::int64_t oracle_quotient_dim(const std::vector<Polynomial>& gens, std::size_t n, int d) {
    auto rows = oracle_span(gens, n, d);
    return static_cast<std::int64_t>(oracle_monomials(n, d).size() - oracle_rank(rows));
}

/// h-vector by expanding sum_i f_{i-1} (t-1)^{n-i} as a coefficient list,
/// with the face counts taken by brute-force subset enumeration.
inline std::vector<std::int64_t> oracle_h_vector(const Fan& fan) {
    const std::size_t n = fan.rank(), r = fan.num_rays();
    std::vector<std::int64_t> f(n + 1, 0);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1u) s.push_back(i);
        bool face = false;
        for (const auto& c : fan.max_cones())
            face = face || std::includes(c.begin(), c.end(), s.begin(), s.end());
        if (face) ++f[s.size()];
    }
    // poly[j] = coefficient of t^j
    std::vector<std::int64_t> total(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::int64_t> poly{1};
        for (std::size_t k = 0; k < n - i; ++k) {
            std::vector<std::int64_t> next(poly.size() + 1, 0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] += poly[j];
                next[j] -= poly[j];
            }
            poly = next;
        }
        for (std::size_t j = 0; j < poly.size(); ++j) total[j] += f[i] * poly[j];
    }
    std::vector<std::int64_t> h(n + 1);
    for (std::size_t i = 0; i <= n; ++i) h[i] = total[n - i];
    return h;
}

/// Minimal non-faces by checking every subset of rays.
inline std::vector<std::vector<std::size_t>> oracle_primitive_collections(const Fan& fan) {
    const std::size_t r = fan.num_rays();
    auto is_face = [&](const std::vector<std::size_t>& s) {
        for (const auto& c : fan.max_cones())
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
        return false;
    };
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1u) s.push_back(i);
        if (is_face(s)) continue;
        bool minimal = true;
        for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
            auto t = s;
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
            minimal = is_face(t);
        }
        if (minimal) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Random homogeneous polynomial of degree d with small rational coefficients.
inline Polynomial random_homogeneous(std::mt19937_64& rng, std::size_t n, int d, int max_terms = 4) {
    auto monos = oracle_monomials(n, d);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3), count(1, max_terms);
    Polynomial p(n);
    const int terms = count(rng);
    for (int i = 0; i < terms; ++i) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        p += Polynomial::monomial(monos[pick(rng)], c);
    }
    return p;
}

}  // namespace fixtures
