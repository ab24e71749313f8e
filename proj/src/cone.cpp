#include "qsheaf/cone.hpp"

#include <algorithm>
#include <set>

namespace qsheaf {

RatVec to_ratvec(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

namespace {

struct Constraint {
    RatVec coeffs;  // over (x_0..x_{d-1}, λ_0..λ_{s-1})
    bool equality = false;
};

// Positive rescaling to a primitive integer vector; equalities also get a
// positive leading entry.
RatVec normalize(RatVec row, bool equality) {
    Integer l = 1;
    for (auto& q : row) l = lcm(l, q.get_den());
    Integer g = 0;
    for (auto& q : row) {
        q *= l;
        g = gcd(g, q.get_num());
    }
    if (g != 0)
        for (auto& q : row) q /= g;
    if (equality) {
        auto it = std::find_if(row.begin(), row.end(), [](const Rational& q) { return sgn(q) != 0; });
        if (it != row.end() && sgn(*it) < 0)
            for (auto& q : row) q = -q;
    }
    return row;
}

bool is_zero(const RatVec& v, std::size_t from = 0, std::size_t to = SIZE_MAX) {
    to = std::min(to, v.size());
    for (std::size_t i = from; i < to; ++i)
        if (sgn(v[i]) != 0) return false;
    return true;
}

}  // namespace

RationalCone::RationalCone(std::vector<RatVec> generators, std::size_t dim)
    : dim_(dim), generators_(std::move(generators)) {
    const std::size_t s = generators_.size();
    const std::size_t width = dim_ + s;
    std::vector<Constraint> cs;
    for (std::size_t j = 0; j < dim_; ++j) {
        Constraint c{RatVec(width), true};
        c.coeffs[j] = 1;
        for (std::size_t i = 0; i < s; ++i) c.coeffs[dim_ + i] = -generators_[i][j];
        cs.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < s; ++i) {
        Constraint c{RatVec(width), false};
        c.coeffs[dim_ + i] = 1;
        cs.push_back(std::move(c));
    }

    for (std::size_t v = dim_; v < width; ++v) {
        // Substitute through an equality when one mentions this variable.
        auto eq = std::find_if(cs.begin(), cs.end(), [&](const Constraint& c) {
            return c.equality && sgn(c.coeffs[v]) != 0;
        });
        if (eq != cs.end()) {
            Constraint pivot = *eq;
            cs.erase(eq);
            for (auto& c : cs) {
                if (sgn(c.coeffs[v]) == 0) continue;
                Rational f = c.coeffs[v] / pivot.coeffs[v];
                for (std::size_t k = 0; k < width; ++k) c.coeffs[k] -= f * pivot.coeffs[k];
            }
            continue;
        }
        std::vector<Constraint> pos, neg, rest;
        for (auto& c : cs) {
            int sg = sgn(c.coeffs[v]);
            (sg > 0 ? pos : sg < 0 ? neg : rest).push_back(std::move(c));
        }
        for (auto& p : pos)
            for (auto& n : neg) {
                Constraint c{RatVec(width), false};
                Rational a = p.coeffs[v], b = -n.coeffs[v];
                for (std::size_t k = 0; k < width; ++k) c.coeffs[k] = b * p.coeffs[k] + a * n.coeffs[k];
                c.coeffs = normalize(std::move(c.coeffs), false);
                rest.push_back(std::move(c));
            }
        // Drop exact duplicates to keep the projection small.
        std::set<std::pair<bool, std::vector<std::string>>> seen;
        cs.clear();
        for (auto& c : rest) {
            c.coeffs = normalize(std::move(c.coeffs), c.equality);
            std::vector<std::string> key;
            for (auto& q : c.coeffs) key.push_back(q.get_str());
            if (seen.insert({c.equality, key}).second) cs.push_back(std::move(c));
        }
    }

    std::set<std::vector<std::string>> seen_eq, seen_ineq;
    for (auto& c : cs) {
        RatVec row(c.coeffs.begin(), c.coeffs.begin() + static_cast<std::ptrdiff_t>(dim_));
        if (is_zero(row)) continue;
        row = normalize(std::move(row), c.equality);
        std::vector<std::string> key;
        for (auto& q : row) key.push_back(q.get_str());
        if (c.equality) {
            if (seen_eq.insert(key).second) equations_.push_back(row);
        } else if (seen_ineq.insert(key).second) {
            inequalities_.push_back(row);
        }
    }
}

bool RationalCone::contains(const RatVec& x) const {
    auto dotq = [&](const RatVec& a) {
        Rational s = 0;
        for (std::size_t i = 0; i < dim_; ++i) s += a[i] * x[i];
        return s;
    };
    for (auto& e : equations_)
        if (sgn(dotq(e)) != 0) return false;
    for (auto& a : inequalities_)
        if (sgn(dotq(a)) < 0) return false;
    return true;
}

bool RationalCone::contains(const IntVec& x) const { return contains(to_ratvec(x)); }

std::vector<RatVec> RationalCone::irredundant_generators() const {
    // Greedy: drop a generator when the kept ones plus the not-yet-visited
    // ones already span it. Parallel copies keep their last occurrence.
    std::vector<bool> dropped(generators_.size(), false);
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (is_zero(generators_[i])) {
            dropped[i] = true;
            continue;
        }
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < generators_.size(); ++j)
            if (j != i && !dropped[j]) others.push_back(generators_[j]);
        if (!others.empty() && RationalCone(others, dim_).contains(generators_[i])) dropped[i] = true;
    }
    std::vector<RatVec> kept;
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (!dropped[i]) kept.push_back(generators_[i]);
    return kept;
}

}  // namespace qsheaf
