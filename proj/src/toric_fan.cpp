#include "qsheaf/toric_fan.hpp"

#include "qsheaf/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qsheaf {

namespace {

bool is_subset(const ConeIndices& small, const ConeIndices& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

QMatrix ray_columns(const std::vector<IntVec>& rays, const ConeIndices& cone, std::size_t rank) {
    QMatrix m(rank, cone.size());
    for (std::size_t j = 0; j < cone.size(); ++j)
        for (std::size_t i = 0; i < rank; ++i) m(i, j) = static_cast<long>(rays[cone[j]][i]);
    return m;
}

QMatrix inverse(const QMatrix& m) {
    const std::size_t n = m.rows();
    QMatrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        RatVec e(n);
        e[c] = 1;
        auto col = solve_square(m, e);
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = (*col)[r];
    }
    return inv;
}

std::string cone_str(const ConeIndices& c) {
    IntVec v(c.begin(), c.end());
    return to_string(v);
}

// Number of maximal cones whose closed cone contains p, or -1 when p sits on
// the boundary of one of them (caller then retries with another point).
int covering_count(const Fan& fan, const RatVec& p) {
    int count = 0;
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        RatVec c = fan.cone_inverse(k) * p;
        bool nonneg = std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) >= 0; });
        if (!nonneg) continue;
        bool interior = std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) > 0; });
        if (!interior) return -1;
        ++count;
    }
    return count;
}

}  // namespace

bool Fan::is_face(const ConeIndices& s) const {
    return std::any_of(max_cones_.begin(), max_cones_.end(),
                       [&](const ConeIndices& c) { return is_subset(s, c); });
}

std::vector<ConeIndices> Fan::cones() const {
    std::set<ConeIndices> all;
    for (const auto& c : max_cones_) {
        const std::size_t k = c.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            ConeIndices face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) face.push_back(c[i]);
            all.insert(face);
        }
    }
    std::vector<ConeIndices> out(all.begin(), all.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const ConeIndices& a, const ConeIndices& b) { return a.size() < b.size(); });
    return out;
}

Fan build_fan(std::size_t rank, std::vector<IntVec> rays, std::vector<ConeIndices> max_cones) {
    if (rank == 0) throw Error(Errc::InvalidInput, "fan rank must be positive");
    if (rays.empty()) throw Error(Errc::InvalidInput, "fan has no rays");
    if (max_cones.empty()) throw Error(Errc::InvalidInput, "fan has no maximal cones");

    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != rank)
            throw Error(Errc::InvalidInput, "ray " + std::to_string(i) + " has wrong length");
        std::int64_t g = 0;
        for (auto x : rays[i]) g = std::gcd(g, x);
        if (g != 1) throw Error(Errc::NonPrimitiveRay, "ray " + std::to_string(i) + " " + to_string(rays[i]) + " is not primitive");
        for (std::size_t j = 0; j < i; ++j)
            if (rays[j] == rays[i])
                throw Error(Errc::DuplicateRay, "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }

    std::set<ConeIndices> distinct;
    for (auto& c : max_cones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end() || c.size() != rank)
            throw Error(Errc::InvalidInput, "maximal cone " + cone_str(c) + " must list " + std::to_string(rank) + " distinct rays");
        for (auto i : c)
            if (i >= rays.size()) throw Error(Errc::InvalidInput, "maximal cone " + cone_str(c) + " references unknown ray");
        if (!distinct.insert(c).second) throw Error(Errc::InvalidInput, "maximal cone " + cone_str(c) + " listed twice");
    }

    Fan fan;
    fan.rank_ = rank;
    fan.rays_ = std::move(rays);
    fan.max_cones_ = std::move(max_cones);

    for (const auto& c : fan.max_cones_) {
        QMatrix m = ray_columns(fan.rays_, c, rank);
        Rational d = determinant(m);
        if (abs(d) != 1)
            throw Error(Errc::NonUnimodularCone, "cone " + cone_str(c) + " has determinant " + d.get_str());
        fan.inverses_.push_back(inverse(m));
    }

    std::vector<bool> used(fan.rays_.size(), false);
    for (const auto& c : fan.max_cones_)
        for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw Error(Errc::IncompleteFan, "ray " + std::to_string(i) + " lies in no maximal cone");

    // Facet pairing: every wall is shared by exactly two maximal cones lying on
    // opposite sides of it.
    std::map<ConeIndices, std::vector<std::size_t>> walls;  // wall -> opposite rays
    for (const auto& c : fan.max_cones_)
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            ConeIndices wall;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) wall.push_back(c[i]);
            walls[wall].push_back(c[drop]);
        }
    for (const auto& [wall, opposite] : walls) {
        if (opposite.size() != 2)
            throw Error(Errc::IncompleteFan, "wall " + cone_str(wall) + " bounds " + std::to_string(opposite.size()) + " maximal cone(s)");
        QMatrix w(wall.size(), rank);
        for (std::size_t r = 0; r < wall.size(); ++r)
            for (std::size_t i = 0; i < rank; ++i) w(r, i) = static_cast<long>(fan.rays_[wall[r]][i]);
        RatVec normal = nullspace(w).front();
        auto side = [&](std::size_t rho) {
            Rational s = 0;
            for (std::size_t i = 0; i < rank; ++i) s += normal[i] * static_cast<long>(fan.rays_[rho][i]);
            return sgn(s);
        };
        if (side(opposite[0]) * side(opposite[1]) >= 0)
            throw Error(Errc::IncompleteFan, "cones across wall " + cone_str(wall) + " overlap");
    }

    // Covering degree: a generic interior point of the first cone is covered once.
    const auto& first = fan.max_cones_.front();
    for (long salt = 2;; ++salt) {
        RatVec p(rank);
        for (std::size_t j = 0; j < first.size(); ++j) {
            Rational wgt(1 + static_cast<long>(j) * salt, salt * salt + static_cast<long>(j) + 1);
            wgt.canonicalize();
            for (std::size_t i = 0; i < rank; ++i) p[i] += wgt * static_cast<long>(fan.rays_[first[j]][i]);
        }
        int cover = covering_count(fan, p);
        if (cover < 0) continue;
        if (cover != 1)
            throw Error(Errc::IncompleteFan, "maximal cones cover the space " + std::to_string(cover) + " times");
        break;
    }
    return fan;
}

bool PrimitiveCollection::contains(std::size_t rho) const {
    return std::binary_search(edges.begin(), edges.end(), rho);
}

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
    // Candidates are faces extended by one ray; a primitive collection has at
    // most rank+1 elements.
    std::set<ConeIndices> found;
    for (const auto& face : fan.cones()) {
        for (std::size_t rho = 0; rho < fan.num_rays(); ++rho) {
            if (std::binary_search(face.begin(), face.end(), rho)) continue;
            ConeIndices cand = face;
            cand.insert(std::upper_bound(cand.begin(), cand.end(), rho), rho);
            if (fan.is_face(cand)) continue;
            bool minimal = true;
            for (std::size_t drop = 0; drop < cand.size() && minimal; ++drop) {
                ConeIndices sub;
                for (std::size_t i = 0; i < cand.size(); ++i)
                    if (i != drop) sub.push_back(cand[i]);
                minimal = fan.is_face(sub);
            }
            if (minimal) found.insert(cand);
        }
    }
    std::vector<PrimitiveCollection> out;
    for (const auto& k : found) out.push_back({k});
    return out;
}

ConeLocation locate_cone(const Fan& fan, const RatVec& point) {
    if (point.size() != fan.rank()) throw Error(Errc::InvalidInput, "point has wrong dimension");
    for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
        RatVec c = fan.cone_inverse(k) * point;
        if (!std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) >= 0; })) continue;
        ConeLocation loc;
        const auto& cone = fan.max_cones()[k];
        for (std::size_t i = 0; i < cone.size(); ++i)
            if (sgn(c[i]) > 0) {
                loc.cone.push_back(cone[i]);
                loc.coefficients.push_back(c[i]);
            }
        return loc;
    }
    throw Error(Errc::NotInSupport, "point lies outside the support of the fan");
}

std::vector<std::int64_t> face_counts(const Fan& fan) {
    std::vector<std::int64_t> f(fan.rank() + 1, 0);
    for (const auto& c : fan.cones()) ++f[c.size()];
    return f;
}

}  // namespace qsheaf
