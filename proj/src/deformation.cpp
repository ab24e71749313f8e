#include "qsheaf/deformation.hpp"

#include "qsheaf/error.hpp"
#include "qsheaf/expression.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace qsheaf {

namespace {

bool in_polytope(const Fan& fan, std::size_t rho, const IntVec& m) {
    for (std::size_t r = 0; r < fan.num_rays(); ++r)
        if (dot(m, fan.ray(r)) < (r == rho ? -1 : 0)) return false;
    return true;
}

// Coefficient of v_rho when `point` is written in the cone containing it.
Rational cone_coefficient(const Fan& fan, const RatVec& point, std::size_t rho) {
    ConeLocation loc = locate_cone(fan, point);
    for (std::size_t i = 0; i < loc.cone.size(); ++i)
        if (loc.cone[i] == rho) return loc.coefficients[i];
    return Rational(0);
}

Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string describe(std::size_t rho, const IntVec& m) {
    return "ray " + std::to_string(rho) + ", m = " + to_string(m);
}

bool is_linear_form(const Polynomial& a) {
    if (a.is_zero()) return true;
    return a.is_homogeneous() && a.total_degree() == 1;
}

// Value of E_rho at x as a vector in W (Picard coordinates).
RatVec evaluate_row(const Fan& fan, const DeformationEntry& en, const RatVec& x, std::size_t k) {
    Rational mono(1);
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
        std::int64_t e = dot(en.m, fan.ray(r)) + (r == en.rho ? 1 : 0);
        for (std::int64_t i = 0; i < e; ++i) mono *= x[r];
    }
    RatVec v(k, Rational(0));
    for (const auto& t : en.a.terms())
        for (std::size_t j = 0; j < k; ++j)
            if (t.exponents[j] == 1) v[j] += t.coeff * mono;
    return v;
}

Polynomial gcd_univariate(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = divide(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::string ratvec_string(const RatVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    Rational nonzero() {
        std::uniform_int_distribution<int> num(1, 9), den(1, 5), sign(0, 1);
        Rational q(num(rng_) * (sign(rng_) ? 1 : -1), den(rng_));
        q.canonicalize();
        return q;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

std::vector<IntVec> characters(const Fan& fan, std::size_t rho) {
    if (rho >= fan.num_rays()) throw Error(Errc::UnknownRayIndex, "ray index " + std::to_string(rho));
    const std::size_t n = fan.rank();
    IntVec lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        RatVec e(n, Rational(0));
        e[j] = 1;
        // <m, e_j> = sum a_r <m, v_r> >= -a_rho, and likewise for -e_j.
        lo[j] = -to_int64(Rational(floor_q(cone_coefficient(fan, e, rho))));
        e[j] = -1;
        hi[j] = to_int64(Rational(floor_q(cone_coefficient(fan, e, rho))));
    }
    std::vector<IntVec> out;
    IntVec m = lo;
    for (;;) {
        if (in_polytope(fan, rho, m)) out.push_back(m);
        std::size_t j = 0;
        while (j < n && m[j] == hi[j]) {
            m[j] = lo[j];
            ++j;
        }
        if (j == n) break;
        ++m[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> linear_slot(const Fan& fan, std::size_t rho, const IntVec& m) {
    if (std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; })) return rho;
    std::optional<std::size_t> target;
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
        const std::int64_t v = dot(m, fan.ray(r));
        if (r == rho) {
            if (v != -1) return std::nullopt;
        } else if (v == 1) {
            if (target) return std::nullopt;
            target = r;
        } else if (v != 0) {
            return std::nullopt;
        }
    }
    return target;
}

Deformation parse_deformation(const Fan& fan, const ClassLattice& cl, std::vector<DeformationEntry> entries) {
    std::map<std::pair<std::size_t, IntVec>, bool> seen;
    for (const auto& en : entries) {
        if (en.rho >= fan.num_rays())
            throw Error(Errc::UnknownRayIndex, "ray index " + std::to_string(en.rho) + " out of range 0.." +
                                                   std::to_string(fan.num_rays() - 1));
        if (en.m.size() != fan.rank())
            throw Error(Errc::InvalidInput, "character of length " + std::to_string(en.m.size()) + " for " +
                                                std::to_string(fan.rank()) + "-dimensional fan");
        if (!in_polytope(fan, en.rho, en.m))
            throw Error(Errc::CharacterOutsidePolytope, describe(en.rho, en.m) + " is not a section of D_rho");
        if (!seen.emplace(std::make_pair(en.rho, en.m), true).second)
            throw Error(Errc::DuplicateEntry, "repeated entry for " + describe(en.rho, en.m));
        if (en.a.nvars() != cl.pic_rank() || !is_linear_form(en.a))
            throw Error(Errc::InvalidInput, "coefficient for " + describe(en.rho, en.m) + " is not a linear form");
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return std::tie(a.rho, a.m) < std::tie(b.rho, b.m); });

    Deformation d;
    d.entries = std::move(entries);
    d.is_tangent = true;
    std::vector<bool> diagonal(fan.num_rays(), false);
    for (const auto& en : d.entries) {
        const bool zero_m = std::all_of(en.m.begin(), en.m.end(), [](std::int64_t v) { return v == 0; });
        if (zero_m && en.a == divisor_polynomial(cl, en.rho))
            diagonal[en.rho] = true;
        else if (!en.a.is_zero())
            d.is_tangent = false;
    }
    for (bool b : diagonal) d.is_tangent = d.is_tangent && b;
    return d;
}

Deformation parse_deformation(const Fan& fan, const ClassLattice& cl, const std::vector<RawDeformationEntry>& raw) {
    std::vector<DeformationEntry> entries;
    entries.reserve(raw.size());
    for (const auto& r : raw) entries.push_back({r.rho, r.m, parse_classical(r.coeff, cl)});
    return parse_deformation(fan, cl, std::move(entries));
}

Deformation tangent_deformation(const Fan& fan, const ClassLattice& cl) {
    std::vector<DeformationEntry> entries;
    for (std::size_t rho = 0; rho < fan.num_rays(); ++rho)
        entries.push_back({rho, IntVec(fan.rank(), 0), divisor_polynomial(cl, rho)});
    return parse_deformation(fan, cl, std::move(entries));
}

LinearData linear_part(const Fan& fan, const ClassLattice& cl, const Deformation& e) {
    const std::size_t k = cl.pic_rank();
    LinearData lin;
    lin.pic_rank = k;
    for (const auto& c : cl.classes())
        lin.matrices.emplace_back(c.size(), std::vector<Polynomial>(c.size(), Polynomial(k)));
    auto position = [&](std::size_t c, std::size_t rho) {
        const auto& mem = cl.classes()[c].members;
        return static_cast<std::size_t>(std::find(mem.begin(), mem.end(), rho) - mem.begin());
    };
    for (const auto& en : e.entries) {
        auto slot = linear_slot(fan, en.rho, en.m);
        if (!slot) continue;
        const std::size_t c = cl.class_of(en.rho);
        if (cl.class_of(*slot) != c) continue;
        lin.matrices[c][position(c, en.rho)][position(c, *slot)] += en.a;
    }
    for (const auto& m : lin.matrices) lin.q.push_back(det(m));
    return lin;
}

LocalFreeness local_freeness_check(const Fan& fan, const ClassLattice& cl, const Deformation& e, int trials,
                                   std::uint64_t seed) {
    const std::size_t r = fan.num_rays();
    const std::size_t k = cl.pic_rank();
    Sampler sample(seed);
    LocalFreeness out;

    auto rank_at = [&](const RatVec& x) {
        QMatrix mat(r, k);
        for (const auto& en : e.entries) {
            RatVec v = evaluate_row(fan, en, x, k);
            for (std::size_t j = 0; j < k; ++j) mat(en.rho, j) += v[j];
        }
        return rank(mat);
    };
    auto check_point = [&](const RatVec& x) {
        ++out.points_checked;
        if (rank_at(x) < k) {
            out.pass = false;
            out.witness = x;
            out.detail = "rank drops at " + ratvec_string(x);
            return false;
        }
        return true;
    };

    // One generic point in every torus orbit, i.e. x_rho = 0 exactly on a cone.
    for (const auto& cone : fan.cones()) {
        RatVec x(r);
        for (std::size_t i = 0; i < r; ++i)
            x[i] = std::binary_search(cone.begin(), cone.end(), i) ? Rational(0) : sample.nonzero();
        if (!check_point(x)) return out;
    }
    for (int t = 0; t < trials; ++t) {
        RatVec x(r);
        for (auto& xi : x) xi = sample.nonzero();
        if (!check_point(x)) return out;
    }

    const auto colls = primitive_collections(fan);
    // Along x(t) = p + t u the rank drops exactly at common roots of the
    // maximal minors. A generic line misses the exceptional set.
    for (int t = 0; t < trials; ++t) {
        RatVec p(r), u(r);
        for (std::size_t i = 0; i < r; ++i) {
            p[i] = sample.nonzero();
            u[i] = sample.nonzero();
        }
        ++out.lines_checked;
        const Polynomial tvar = Polynomial::variable(1, 0);
        std::vector<Polynomial> xt;
        for (std::size_t i = 0; i < r; ++i) xt.push_back(Polynomial::constant(1, p[i]) + tvar * u[i]);
        PolyMatrix mat(r, std::vector<Polynomial>(k, Polynomial(1)));
        for (const auto& en : e.entries) {
            Polynomial mono = Polynomial::constant(1, 1);
            for (std::size_t i = 0; i < r; ++i) {
                std::int64_t ex = dot(en.m, fan.ray(i)) + (i == en.rho ? 1 : 0);
                for (std::int64_t j = 0; j < ex; ++j) mono *= xt[i];
            }
            for (const auto& term : en.a.terms())
                for (std::size_t j = 0; j < k; ++j)
                    if (term.exponents[j] == 1) mat[en.rho][j] += mono * term.coeff;
        }
        Polynomial g(1);
        std::vector<std::size_t> rows(k);
        for (std::size_t i = 0; i < k; ++i) rows[i] = i;
        bool constant_gcd = false;
        while (!constant_gcd) {
            PolyMatrix minor;
            for (auto i : rows) minor.push_back(mat[i]);
            g = gcd_univariate(g, det(minor));
            constant_gcd = !g.is_zero() && g.is_constant();
            // next k-subset of rows
            std::size_t i = k;
            while (i > 0 && rows[i - 1] == r - k + i - 1) --i;
            if (i == 0) break;
            ++rows[i - 1];
            for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
        }
        // Roots where the line meets the excluded set Z lie off X; discard them.
        if (!constant_gcd && !g.is_zero()) {
            for (const auto& coll : colls) {
                Polynomial h(1);
                for (auto rho : coll.edges) h = gcd_univariate(h, xt[rho]);
                if (h.is_constant()) continue;
                for (auto qr = divide(g, h); qr.second.is_zero() && !g.is_constant(); qr = divide(g, h)) g = qr.first;
            }
            constant_gcd = g.is_constant();
        }
        if (!constant_gcd) {
            out.pass = false;
            out.witness = p;
            out.direction = u;
            out.detail = "rank drops on the line " + ratvec_string(p) + " + t*" + ratvec_string(u) + " where " +
                         (g.is_zero() ? std::string("everywhere") : g.to_string({"t"}) + " = 0");
            return out;
        }
    }
    out.detail = "no rank drop found (probabilistic)";
    return out;
}

Polynomial collection_product(const ClassLattice& cl, const LinearData& lin, const PrimitiveCollection& k) {
    std::vector<std::size_t> classes;
    for (auto rho : k.edges) classes.push_back(cl.class_of(rho));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    Polynomial p = Polynomial::constant(cl.pic_rank(), 1);
    for (auto c : classes) p *= lin.q[c];
    return p;
}

Ideal sr_ideal(const Fan& fan, const ClassLattice& cl, const LinearData& lin) {
    Ideal ideal;
    ideal.nvars = cl.pic_rank();
    for (const auto& k : primitive_collections(fan)) ideal.generators.push_back(collection_product(cl, lin, k));
    return ideal;
}

std::vector<std::int64_t> h_vector(const Fan& fan) {
    const auto f = face_counts(fan);
    const std::int64_t n = static_cast<std::int64_t>(fan.rank());
    auto binom = [](std::int64_t a, std::int64_t b) {
        std::int64_t r = 1;
        for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::vector<std::int64_t> h(n + 1, 0);
    for (std::int64_t i = 0; i <= n; ++i)
        for (std::int64_t j = 0; j <= i; ++j) h[i] += ((i - j) % 2 ? -1 : 1) * binom(n - j, i - j) * f[j];
    return h;
}

Polymology polymology(const Fan& fan, const ClassLattice& cl, const LinearData& lin, GroebnerCache* cache) {
    Polymology out;
    out.ideal = sr_ideal(fan, cl, lin);
    out.gb = groebner(out.ideal, cache);
    const int n = static_cast<int>(fan.rank());
    auto dims = quotient_dims(out.gb, n + 1);
    const auto h = h_vector(fan);
    std::ostringstream os;
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    if (dims[n] != 1 || dims[n + 1] != 0)
        throw Error(Errc::DegenerateDeformation, "graded dimensions " + os.str() + " do not end in 1,0");
    for (int i = 0; i <= n; ++i)
        if (dims[i] > h[i])
            throw Error(Errc::DegenerateDeformation, "graded dimensions " + os.str() + " exceed the h-vector");
    dims.pop_back();
    out.dims = std::move(dims);
    out.generator = standard_monomials(out.gb, n).front();
    return out;
}

}  // namespace qsheaf
