#include "qsheaf/instanton.hpp"

#include "qsheaf/error.hpp"
#include "qsheaf/riemann_roch.hpp"

#include <algorithm>

namespace qsheaf {

Ideal SectorData::ideal() const {
    Ideal id;
    id.nvars = ideal_gens.empty() ? 0 : ideal_gens.front().nvars();
    id.generators = ideal_gens;
    return id;
}

std::int64_t sector_dimension(const ClassLattice& cl, const CurveClass& beta) {
    std::int64_t n = 0;
    for (auto d : beta.d) n += h0(d);
    return n - static_cast<std::int64_t>(cl.pic_rank());
}

SectorData sector(const Fan& fan, const ClassLattice& cl, const LinearData& lin, const CurveClass& beta) {
    SectorData s;
    s.beta = beta;
    s.effective = cl.is_effective(beta);
    const auto collections = primitive_collections(fan);

    for (std::size_t rho = 0; rho < cl.num_rays(); ++rho)
        for (std::int64_t i = 0; i <= beta.d[rho]; ++i) s.enhanced_edges.push_back({rho, i});
    s.n_beta = sector_dimension(cl, beta);
    for (std::size_t c = 0; c < cl.classes().size(); ++c) s.exponents.push_back(h0(cl.class_degree(beta, c)));

    for (const auto& k : collections) {
        bool all_negative = true;
        for (auto rho : k.edges) all_negative = all_negative && beta.d[rho] < 0;
        if (all_negative) s.nonempty = false;
    }
    for (std::size_t rho = 0; rho < cl.num_rays(); ++rho) {
        if (beta.d[rho] != 0) continue;
        for (const auto& k : collections) {
            if (!k.contains(rho)) continue;
            bool others_negative = true;
            for (auto r : k.edges)
                if (r != rho) others_negative = others_negative && beta.d[r] < 0;
            if (others_negative) {
                s.degenerate.push_back(rho);
                break;
            }
        }
    }

    const std::size_t nv = cl.pic_rank();
    for (const auto& k : collections) {
        std::vector<std::size_t> classes;
        for (auto rho : k.edges) classes.push_back(cl.class_of(rho));
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        Polynomial g = Polynomial::constant(nv, 1);
        for (auto c : classes) g *= lin.q[c].pow(static_cast<unsigned>(s.exponents[c]));
        s.ideal_gens.push_back(std::move(g));
    }
    for (auto rho : s.degenerate) {
        const Polynomial& g = lin.q[cl.class_of(rho)];
        if (std::find(s.ideal_gens.begin(), s.ideal_gens.end(), g) == s.ideal_gens.end()) s.ideal_gens.push_back(g);
    }
    return s;
}

Transition transition(const ClassLattice& cl, const LinearData& lin, const CurveClass& upper, const CurveClass& lower) {
    if (!dominates(cl, upper, lower))
        throw Error(Errc::NotDominating, to_string(upper.coords) + " does not dominate " + to_string(lower.coords));
    Polynomial r = Polynomial::constant(cl.pic_rank(), 1);
    for (std::size_t c = 0; c < cl.classes().size(); ++c) {
        const std::int64_t e = h0(cl.class_degree(upper, c)) - h0(cl.class_degree(lower, c));
        r *= lin.q[c].pow(static_cast<unsigned>(e));
    }
    const std::int64_t expected = sector_dimension(cl, upper) - sector_dimension(cl, lower);
    if (!r.is_zero() && r.total_degree() != expected)
        throw Error(Errc::InvalidInput, "transition degree " + std::to_string(r.total_degree()) +
                                            " differs from the dimension jump " + std::to_string(expected));
    return {lower, upper, std::move(r)};
}

bool transfer_check(const Fan& fan, const ClassLattice& cl, const LinearData&, const CurveClass& upper,
                    const CurveClass& lower) {
    if (!dominates(cl, upper, lower))
        throw Error(Errc::NotDominating, to_string(upper.coords) + " does not dominate " + to_string(lower.coords));
    const std::size_t nc = cl.classes().size();
    for (const auto& k : primitive_collections(fan)) {
        std::vector<bool> in_k(nc, false);
        for (auto rho : k.edges) in_k[cl.class_of(rho)] = true;
        for (std::size_t c = 0; c < nc; ++c) {
            const std::int64_t hu = h0(cl.class_degree(upper, c));
            const std::int64_t hl = h0(cl.class_degree(lower, c));
            const std::int64_t have = (hu - hl) + (in_k[c] ? hl : 0);
            const std::int64_t need = in_k[c] ? hu : 0;
            if (have < need) return false;
        }
    }
    return true;
}

std::shared_ptr<const SectorData> SectorCache::get(const CurveClass& beta) {
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(beta.coords);
        if (it != entries_.end()) return it->second;
    }
    auto s = std::make_shared<const SectorData>(sector(fan_, cl_, lin_, beta));
    std::lock_guard lock(mutex_);
    return entries_.emplace(beta.coords, std::move(s)).first->second;
}

}  // namespace qsheaf
