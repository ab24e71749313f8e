#include "qsheaf/divisor_lattice.hpp"

#include "qsheaf/error.hpp"
#include "qsheaf/riemann_roch.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace qsheaf {

std::int64_t CurveClass::c1() const { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }

bool CurveClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](std::int64_t x) { return x == 0; });
}

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
    CurveClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    for (std::size_t i = 0; i < r.d.size(); ++i) r.d[i] += b.d[i];
    return r;
}

CurveClass operator-(const CurveClass& a, const CurveClass& b) { return a + (-1) * b; }

CurveClass operator*(std::int64_t k, const CurveClass& a) {
    CurveClass r = a;
    for (auto& x : r.coords) x *= k;
    for (auto& x : r.d) x *= k;
    return r;
}

CurveClass ClassLattice::curve(IntVec coords) const {
    if (coords.size() != pic_rank())
        throw Error(Errc::InvalidInput, "curve class needs " + std::to_string(pic_rank()) + " coordinates");
    CurveClass beta;
    beta.d.assign(num_rays(), 0);
    for (std::size_t rho = 0; rho < num_rays(); ++rho) beta.d[rho] = dot(divisor_classes_[rho], coords);
    beta.coords = std::move(coords);
    return beta;
}

CurveClass ClassLattice::curve_from_intersections(const IntVec& d) const {
    if (d.size() != num_rays()) throw Error(Errc::InvalidInput, "intersection vector has wrong length");
    const std::size_t n = rays_.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t s = 0;
        for (std::size_t rho = 0; rho < d.size(); ++rho) s += d[rho] * rays_[rho][i];
        if (s != 0) throw Error(Errc::InvalidInput, "vector " + to_string(d) + " is not a relation among the rays");
    }
    IntVec coords;
    for (auto b : basis_rays_) coords.push_back(d[b]);
    return curve(std::move(coords));
}

IntVec ClassLattice::mori_coordinates(const CurveClass& beta) const {
    if (!mori_unimodular_)
        throw Error(Errc::UnsupportedNovikovShape, "Mori generators do not form a basis of the curve lattice");
    RatVec x = mori_inverse_ * to_ratvec(beta.coords);
    IntVec out;
    for (auto& q : x) out.push_back(to_int64(q));
    return out;
}

ClassLattice class_lattice(const Fan& fan) {
    const std::size_t r = fan.num_rays();
    const std::size_t n = fan.rank();
    const auto& sigma = fan.max_cones().front();
    const QMatrix& inv = fan.cone_inverse(0);

    ClassLattice cl;
    cl.rays_ = fan.rays();
    for (std::size_t rho = 0; rho < r; ++rho)
        if (!std::binary_search(sigma.begin(), sigma.end(), rho)) cl.basis_rays_.push_back(rho);
    const std::size_t k = cl.basis_rays_.size();

    // Coordinates of each basis ray in the sigma basis: v_b = sum_l w_{bl} v_{sigma_l}.
    std::vector<IntVec> w(k, IntVec(n));
    for (std::size_t j = 0; j < k; ++j) {
        RatVec c = inv * to_ratvec(fan.ray(cl.basis_rays_[j]));
        for (std::size_t l = 0; l < n; ++l) w[j][l] = to_int64(c[l]);
    }

    cl.divisor_classes_.assign(r, IntVec(k, 0));
    for (std::size_t j = 0; j < k; ++j) cl.divisor_classes_[cl.basis_rays_[j]][j] = 1;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < k; ++j) cl.divisor_classes_[sigma[l]][j] = -w[j][l];

    // 0 -> M -> Z^rays -> Pic -> 0 must be exact.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::int64_t s = 0;
            for (std::size_t rho = 0; rho < r; ++rho) s += fan.ray(rho)[i] * cl.divisor_classes_[rho][j];
            if (s != 0) throw Error(Errc::TorsionDetected, "Picard presentation is not exact");
        }
    if (k + n != r) throw Error(Errc::TorsionDetected, "Picard rank mismatch");

    for (std::size_t j = 0; j < k; ++j) {
        IntVec e(k, 0);
        e[j] = 1;
        cl.curve_basis_.push_back(cl.curve(e));
    }

    cl.class_of_.assign(r, 0);
    std::map<IntVec, std::size_t> by_class;
    for (std::size_t rho = 0; rho < r; ++rho) {
        auto [it, fresh] = by_class.try_emplace(cl.divisor_classes_[rho], cl.classes_.size());
        if (fresh) cl.classes_.push_back({cl.classes_.size(), {}});
        cl.classes_[it->second].members.push_back(rho);
        cl.class_of_[rho] = it->second;
    }

    cl.mori_generators_ = mori_generators(fan, cl);
    std::vector<RatVec> gens;
    for (const auto& g : cl.mori_generators_) gens.push_back(to_ratvec(g.coords));
    cl.mori_cone_ = RationalCone(gens, k);
    if (cl.mori_generators_.size() == k) {
        QMatrix m(k, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i) m(i, j) = static_cast<long>(cl.mori_generators_[j].coords[i]);
        if (abs(determinant(m)) == 1) {
            cl.mori_unimodular_ = true;
            cl.mori_inverse_ = QMatrix(k, k);
            for (std::size_t c = 0; c < k; ++c) {
                RatVec e(k);
                e[c] = 1;
                auto col = *solve_square(m, e);
                for (std::size_t i = 0; i < k; ++i) cl.mori_inverse_(i, c) = col[i];
            }
        }
    }
    return cl;
}

std::vector<EquivClass> equiv_classes(const ClassLattice& cl) { return cl.classes(); }

std::vector<CurveClass> wall_classes(const Fan& fan, const ClassLattice& cl) {
    std::map<ConeIndices, std::vector<std::size_t>> walls;  // wall -> maximal cone indices
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        const auto& c = fan.max_cones()[k];
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            ConeIndices wall;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) wall.push_back(c[i]);
            walls[wall].push_back(k);
        }
    }
    std::vector<CurveClass> out;
    for (const auto& [wall, cones] : walls) {
        const auto& sigma = fan.max_cones()[cones[0]];
        const auto& other = fan.max_cones()[cones[1]];
        std::size_t a = 0, b = 0;
        for (auto x : sigma)
            if (!std::binary_search(wall.begin(), wall.end(), x)) a = x;
        for (auto x : other)
            if (!std::binary_search(wall.begin(), wall.end(), x)) b = x;
        // v_b in the basis of sigma has coefficient -1 on v_a.
        RatVec c = fan.cone_inverse(cones[0]) * to_ratvec(fan.ray(b));
        IntVec d(fan.num_rays(), 0);
        d[b] = 1;
        for (std::size_t l = 0; l < sigma.size(); ++l) d[sigma[l]] = -to_int64(c[l]);
        if (d[a] != 1) throw Error(Errc::NonUnimodularCone, "wall relation is not primitive");
        CurveClass beta = cl.curve_from_intersections(d);
        if (std::find(out.begin(), out.end(), beta) == out.end()) out.push_back(beta);
    }
    return out;
}

std::vector<CurveClass> mori_generators(const Fan& fan, const ClassLattice& cl) {
    auto walls = wall_classes(fan, cl);
    std::vector<RatVec> gens;
    for (const auto& w : walls) gens.push_back(to_ratvec(w.coords));
    std::vector<CurveClass> out;
    for (const auto& g : RationalCone(gens, cl.pic_rank()).irredundant_generators()) {
        IntVec coords;
        for (auto& q : g) coords.push_back(to_int64(q));
        out.push_back(cl.curve(coords));
    }
    std::sort(out.begin(), out.end(), [](const CurveClass& a, const CurveClass& b) { return a.d > b.d; });
    return out;
}

BetaK beta_K(const Fan& fan, const ClassLattice& cl, const PrimitiveCollection& k) {
    RatVec point(fan.rank());
    for (auto rho : k.edges)
        for (std::size_t i = 0; i < fan.rank(); ++i) point[i] += static_cast<long>(fan.ray(rho)[i]);
    ConeLocation loc = locate_cone(fan, point);

    IntVec d(fan.num_rays(), 0);
    for (auto rho : k.edges) d[rho] = 1;
    for (std::size_t i = 0; i < loc.cone.size(); ++i) {
        if (loc.coefficients[i].get_den() != 1)
            throw Error(Errc::NonIntegralCoefficient, "primitive relation has coefficient " + loc.coefficients[i].get_str());
        if (k.contains(loc.cone[i]))
            throw Error(Errc::NonIntegralCoefficient, "primitive relation cone meets its collection");
        d[loc.cone[i]] = -to_int64(loc.coefficients[i]);
    }

    BetaK out;
    out.beta = cl.curve_from_intersections(d);
    out.sigma = loc.cone;
    std::set<std::size_t> plus, minus;
    for (auto rho : k.edges) plus.insert(cl.class_of(rho));
    for (auto rho : loc.cone) minus.insert(cl.class_of(rho));
    for (auto c : minus) {
        // Rays of sigma in one class carry equal coefficients, and the whole
        // class lies in sigma.
        for (auto rho : cl.classes()[c].members)
            if (d[rho] != d[cl.classes()[c].representative()])
                throw Error(Errc::NonIntegralCoefficient, "linearly equivalent rays carry different coefficients");
        out.minus.push_back({c, -d[cl.classes()[c].representative()]});
    }
    out.plus.assign(plus.begin(), plus.end());
    return out;
}

bool beta_k_cone_matches_mori(const Fan& fan, const ClassLattice& cl) {
    std::vector<RatVec> gens;
    for (const auto& k : primitive_collections(fan)) gens.push_back(to_ratvec(beta_K(fan, cl, k).beta.coords));
    RationalCone cone(gens, cl.pic_rank());
    for (const auto& g : cl.mori_generators())
        if (!cone.contains(g.coords)) return false;
    for (const auto& g : gens)
        if (!cl.mori_cone().contains(g)) return false;
    return true;
}

bool dominates(const ClassLattice& cl, const CurveClass& upper, const CurveClass& lower) {
    if (!cl.is_effective(upper - lower)) return false;
    for (std::size_t c = 0; c < cl.classes().size(); ++c)
        if (h0(cl.class_degree(upper, c)) < h0(cl.class_degree(lower, c))) return false;
    return true;
}

namespace {

// Coefficient vectors of length `len` with entries in [0, bound] summing to
// `total`, in lexicographic order.
void compositions(std::size_t len, std::int64_t total, std::int64_t bound, IntVec& cur,
                  std::vector<IntVec>& out) {
    if (cur.size() + 1 == len) {
        if (total <= bound) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (std::int64_t a = 0; a <= std::min(total, bound); ++a) {
        cur.push_back(a);
        compositions(len, total - a, bound, cur, out);
        cur.pop_back();
    }
}

CurveClass combination(const ClassLattice& cl, const IntVec& a) {
    CurveClass beta = cl.zero_curve();
    for (std::size_t i = 0; i < a.size(); ++i) beta = beta + a[i] * cl.mori_generators()[i];
    return beta;
}

}  // namespace

Anchor find_anchor_detailed(const ClassLattice& cl, const std::vector<CurveClass>& sectors, std::int64_t bound) {
    if (sectors.empty()) throw Error(Errc::InvalidInput, "find_anchor needs at least one sector");
    const auto& gens = cl.mori_generators();
    std::optional<CurveClass> positive;
    const auto max_total = bound * static_cast<std::int64_t>(gens.size());
    for (std::int64_t total = 1; total <= max_total && !positive; ++total) {
        std::vector<IntVec> combos;
        IntVec cur;
        compositions(gens.size(), total, bound, cur, combos);
        for (const auto& a : combos) {
            CurveClass beta = combination(cl, a);
            bool ok = true;
            for (std::size_t c = 0; c < cl.classes().size() && ok; ++c) ok = cl.class_degree(beta, c) > 0;
            if (ok) {
                positive = beta;
                break;
            }
        }
    }
    if (!positive)
        throw Error(Errc::NoPositiveClassFound, "no Mori combination with coefficients <= " + std::to_string(bound) +
                                                    " meets every divisor class positively");

    CurveClass sum = cl.zero_curve();
    for (const auto& s : sectors) sum = sum + s;
    for (std::int64_t n = 1; n <= 100000; ++n) {
        CurveClass cand = sum + n * *positive;
        if (std::all_of(sectors.begin(), sectors.end(), [&](const CurveClass& s) { return dominates(cl, cand, s); }))
            return {cand, *positive, n};
    }
    throw Error(Errc::NoPositiveClassFound, "no multiple of the positive class dominates every sector");
}

CurveClass find_anchor(const ClassLattice& cl, const std::vector<CurveClass>& sectors, std::int64_t bound) {
    return find_anchor_detailed(cl, sectors, bound).anchor;
}

bool is_fano_type(const ClassLattice& cl) {
    return std::all_of(cl.mori_generators().begin(), cl.mori_generators().end(),
                       [](const CurveClass& g) { return g.c1() > 0; });
}

std::vector<CurveClass> effective_slice(const ClassLattice& cl, std::int64_t c1_value) {
    if (!is_fano_type(cl))
        throw Error(Errc::NonFanoEnumerationUnbounded,
                    "c1 is not positive on every Mori generator; the degree slice is not finite");
    std::vector<CurveClass> out;
    if (c1_value < 0) return out;
    const std::size_t k = cl.pic_rank();
    // Bounding box of the slice polytope, whose vertices are the scaled generators.
    std::vector<Rational> lo(k, 0), hi(k, 0);
    for (const auto& g : cl.mori_generators()) {
        Rational scale(static_cast<long>(c1_value), static_cast<long>(g.c1()));
        scale.canonicalize();
        for (std::size_t i = 0; i < k; ++i) {
            Rational v = scale * static_cast<long>(g.coords[i]);
            lo[i] = std::min(lo[i], v);
            hi[i] = std::max(hi[i], v);
        }
    }
    IntVec low(k), high(k);
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class f, c;
        mpz_fdiv_q(f.get_mpz_t(), lo[i].get_num_mpz_t(), lo[i].get_den_mpz_t());
        mpz_cdiv_q(c.get_mpz_t(), hi[i].get_num_mpz_t(), hi[i].get_den_mpz_t());
        low[i] = f.get_si();
        high[i] = c.get_si();
    }
    IntVec cur = low;
    while (true) {
        CurveClass beta = cl.curve(cur);
        if (beta.c1() == c1_value && cl.is_effective(beta)) out.push_back(beta);
        std::size_t i = 0;
        while (i < k && cur[i] == high[i]) cur[i] = low[i], ++i;
        if (i == k) break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CurveClass> mori_window(const ClassLattice& cl, std::int64_t max_c1, std::int64_t max_terms) {
    std::set<CurveClass> seen;
    const auto& gens = cl.mori_generators();
    for (std::int64_t total = 0; total <= max_terms; ++total) {
        std::vector<IntVec> combos;
        IntVec cur;
        if (total == 0)
            combos.push_back(IntVec(gens.size(), 0));
        else
            compositions(gens.size(), total, total, cur, combos);
        for (const auto& a : combos) {
            CurveClass beta = combination(cl, a);
            if (beta.c1() <= max_c1) seen.insert(beta);
        }
    }
    std::vector<CurveClass> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const CurveClass& a, const CurveClass& b) { return a.c1() < b.c1(); });
    return out;
}

}  // namespace qsheaf
