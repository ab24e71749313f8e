#include "qsheaf/quantum.hpp"

#include "qsheaf/error.hpp"
#include "qsheaf/riemann_roch.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace qsheaf {

namespace {

Polynomial component(const Polynomial& p, int deg) {
    std::vector<Term> terms;
    for (const auto& t : p.terms())
        if (degree(t.exponents) == deg) terms.push_back(t);
    return Polynomial::from_terms(p.nvars(), std::move(terms), p.order());
}

std::shared_ptr<const SectorData> sector_of(const CorrelatorContext& ctx, const CurveClass& beta) {
    if (ctx.sectors) return ctx.sectors->get(beta);
    return std::make_shared<const SectorData>(sector(ctx.fan, ctx.cl, ctx.lin, beta));
}

struct AnchorRing {
    std::shared_ptr<const SectorData> data;
    GroebnerBasis gb;
    Monomial generator;
};

AnchorRing anchor_ring(const CorrelatorContext& ctx, const CurveClass& anchor) {
    AnchorRing a;
    a.data = sector_of(ctx, anchor);
    if (!a.data->nonempty)
        throw Error(Errc::AnchorDegenerate, "anchor sector " + to_string(anchor.coords) + " is empty");
    a.gb = groebner(a.data->ideal(), ctx.cache);
    auto top = standard_monomials(a.gb, static_cast<int>(a.data->n_beta));
    if (top.size() != 1)
        throw Error(Errc::AnchorDegenerate, "anchor sector " + to_string(anchor.coords) + " has a " +
                                                std::to_string(top.size()) + "-dimensional top degree");
    a.generator = top.front();
    return a;
}

SectorCorrelator evaluate(const CorrelatorContext& ctx, const Polynomial& p, const CurveClass& beta,
                          const CurveClass& anchor, const AnchorRing& ring) {
    const int target = static_cast<int>(beta.c1() + static_cast<std::int64_t>(ctx.fan.rank()));
    Polynomial part = component(p, target);
    if (part.is_zero()) return {beta, Rational(0), p.is_zero() ? "zero insertion" : "degree rule"};
    auto s = sector_of(ctx, beta);
    if (!s->nonempty) return {beta, Rational(0), "empty sector"};
    Transition t = transition(ctx.cl, ctx.lin, anchor, beta);
    Polynomial f = four_fermi(ctx.cl, ctx.lin, beta);
    Polynomial v = part * f;
    if (!v.is_zero() && v.total_degree() != s->n_beta)
        throw Error(Errc::InvalidInput, "degree of p*F_beta is " + std::to_string(v.total_degree()) +
                                            ", expected n_beta = " + std::to_string(s->n_beta));
    Polynomial nf = normal_form(t.r * v, ring.gb);
    Rational lambda = nf.coefficient(ring.generator);
    if (nf != Polynomial::monomial(ring.generator, lambda) && !(nf.is_zero() && sgn(lambda) == 0))
        throw Error(Errc::AnchorDegenerate, "normal form is not a multiple of the anchor generator");
    return {beta, lambda, ""};
}

std::vector<std::size_t> classes_of(const ClassLattice& cl, const PrimitiveCollection& k) {
    std::vector<std::size_t> out;
    for (auto rho : k.edges) out.push_back(cl.class_of(rho));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Polynomial four_fermi(const ClassLattice& cl, const LinearData& lin, const CurveClass& beta) {
    Polynomial f = Polynomial::constant(cl.pic_rank(), 1);
    for (std::size_t c = 0; c < cl.classes().size(); ++c)
        f *= lin.q[c].pow(static_cast<unsigned>(h1(cl.class_degree(beta, c))));
    return f;
}

Monomial anchor_generator(const CorrelatorContext& ctx, const CurveClass& anchor) {
    return anchor_ring(ctx, anchor).generator;
}

SectorCorrelator correlator_sector(const CorrelatorContext& ctx, const Polynomial& p, const CurveClass& beta,
                                   const CurveClass& anchor) {
    return evaluate(ctx, p, beta, anchor, anchor_ring(ctx, anchor));
}

CorrelatorReport correlator_over(const CorrelatorContext& ctx, const Polynomial& p,
                                 const std::vector<CurveClass>& sectors, std::optional<CurveClass> anchor) {
    MemoryGroebnerCache local;
    CorrelatorContext c = ctx;
    if (!c.cache) c.cache = &local;

    CorrelatorReport report;
    report.p = p;
    report.anchor = anchor ? *anchor : sectors.empty() ? ctx.cl.zero_curve()
                                                          : find_anchor(ctx.cl, sectors, ctx.anchor_bound);
    const AnchorRing ring = anchor_ring(c, report.anchor);
    report.generator = ring.generator;

    std::vector<std::future<SectorCorrelator>> jobs;
    for (const auto& beta : sectors)
        jobs.push_back(std::async(std::launch::async, [&, beta] { return evaluate(c, p, beta, report.anchor, ring); }));
    for (auto& j : jobs) {
        SectorCorrelator sc = j.get();
        if (sgn(sc.lambda) != 0) report.series[sc.beta.coords] = sc.lambda;
        report.sectors.push_back(std::move(sc));
    }
    return report;
}

CorrelatorReport correlator_series(const CorrelatorContext& ctx, const Polynomial& p, std::int64_t max_c1_degree) {
    if (!is_fano_type(ctx.cl))
        throw Error(Errc::NonFanoEnumerationUnbounded,
                    "c1 vanishes on a Mori generator, so degree slices are infinite; list sectors explicitly");
    const auto n = static_cast<std::int64_t>(ctx.fan.rank());
    std::set<std::int64_t> degrees;
    for (const auto& t : p.terms()) degrees.insert(degree(t.exponents));
    std::set<CurveClass> found;
    for (auto d : degrees) {
        const std::int64_t c1 = d - n;
        if (c1 < 0 || c1 > max_c1_degree) continue;
        for (auto& beta : effective_slice(ctx.cl, c1)) found.insert(beta);
    }
    return correlator_over(ctx, p, std::vector<CurveClass>(found.begin(), found.end()));
}

std::vector<QuantumRelation> qsr_generators(const Fan& fan, const ClassLattice& cl, const LinearData& lin) {
    std::vector<QuantumRelation> out;
    const std::size_t k = cl.pic_rank();
    for (const auto& coll : primitive_collections(fan)) {
        QuantumRelation r;
        r.k = coll;
        r.beta_k = beta_K(fan, cl, coll);
        r.lhs = collection_product(cl, lin, coll);
        r.rhs = Polynomial::constant(k, 1);
        for (const auto& m : r.beta_k.minus) r.rhs *= lin.q[m.class_id].pow(static_cast<unsigned>(m.multiplicity));
        if (!r.lhs.is_zero() && !r.rhs.is_zero() &&
            r.lhs.total_degree() != r.beta_k.beta.c1() + r.rhs.total_degree())
            throw Error(Errc::InvalidInput, "relation for " + to_string(IntVec(coll.edges.begin(), coll.edges.end())) +
                                                " is not homogeneous");
        r.difference = NovikovPolynomial::classical(r.lhs, k) -
                       NovikovPolynomial::q_power(r.beta_k.beta.coords, k) * NovikovPolynomial::classical(r.rhs, k);
        out.push_back(std::move(r));
    }
    return out;
}

RiemannRochFunctions RiemannRochFunctions::standard() {
    return {[](std::int64_t x) { return qsheaf::h0(x); }, [](std::int64_t x) { return qsheaf::h1(x); }};
}

bool verify_qc_relation(const ClassLattice& cl, const QuantumRelation& rel, const CurveClass& beta,
                        const CurveClass& upper, const RiemannRochFunctions& rr) {
    const CurveClass shifted = beta + rel.beta_k.beta;
    if (!dominates(cl, upper, beta) || !dominates(cl, upper, shifted))
        throw Error(Errc::NotDominating, to_string(upper.coords) + " does not dominate " + to_string(beta.coords) +
                                             " and " + to_string(shifted.coords));
    const std::size_t nc = cl.classes().size();
    std::vector<std::int64_t> in_k(nc, 0), minus(nc, 0);
    for (auto c : classes_of(cl, rel.k)) in_k[c] = 1;
    for (const auto& m : rel.beta_k.minus) minus[m.class_id] = m.multiplicity;
    for (std::size_t c = 0; c < nc; ++c) {
        const std::int64_t du = cl.class_degree(upper, c);
        const std::int64_t d1 = cl.class_degree(shifted, c);
        const std::int64_t d0 = cl.class_degree(beta, c);
        const std::int64_t lhs = rr.h0(du) - rr.h0(d1) + rr.h1(d1) + in_k[c];
        const std::int64_t rhs = rr.h0(du) - rr.h0(d0) + rr.h1(d0) + minus[c];
        if (lhs != rhs) return false;
    }
    return true;
}

bool verify_qc_expansion(const ClassLattice& cl, const LinearData& lin, const QuantumRelation& rel,
                         const CurveClass& beta, const CurveClass& upper) {
    const CurveClass shifted = beta + rel.beta_k.beta;
    Polynomial lhs = transition(cl, lin, upper, shifted).r * four_fermi(cl, lin, shifted) * rel.lhs;
    Polynomial rhs = transition(cl, lin, upper, beta).r * four_fermi(cl, lin, beta) * rel.rhs;
    return lhs == rhs;
}

bool verify_qc_correlator(const CorrelatorContext& ctx, const QuantumRelation& rel, const CurveClass& beta,
                          const CurveClass& upper, const Polynomial& y) {
    const CurveClass shifted = beta + rel.beta_k.beta;
    auto ring = anchor_ring(ctx, upper);
    return evaluate(ctx, y * rel.lhs, shifted, upper, ring).lambda == evaluate(ctx, y * rel.rhs, beta, upper, ring).lambda;
}

std::vector<VerificationRow> verify_grid(const Fan& fan, const ClassLattice& cl, const LinearData& lin,
                                         std::int64_t grid, std::size_t expansion_stride,
                                         std::int64_t anchor_bound) {
    const auto relations = qsr_generators(fan, cl, lin);
    const auto window = mori_window(cl, grid, grid);
    std::vector<VerificationRow> rows;
    for (std::size_t i = 0; i < relations.size(); ++i)
        for (const auto& beta : window) {
            const CurveClass shifted = beta + relations[i].beta_k.beta;
            const CurveClass upper = find_anchor(cl, {beta, shifted}, anchor_bound);
            VerificationRow row{i, beta, upper, verify_qc_relation(cl, relations[i], beta, upper), std::nullopt};
            if (expansion_stride && rows.size() % expansion_stride == 0)
                row.expansion_ok = verify_qc_expansion(cl, lin, relations[i], beta, upper);
            rows.push_back(std::move(row));
        }
    return rows;
}

NovikovSeries relation_correlator(const CorrelatorContext& ctx, const QuantumRelation& rel, const Polynomial& y,
                                  std::int64_t max_c1, std::int64_t max_terms) {
    MemoryGroebnerCache local;
    CorrelatorContext c = ctx;
    if (!c.cache) c.cache = &local;

    const auto window = mori_window(ctx.cl, max_c1, max_terms);
    std::vector<CurveClass> all = window;
    std::vector<std::optional<CurveClass>> lower;
    for (const auto& g : window) {
        CurveClass b = g - rel.beta_k.beta;
        if (ctx.cl.is_effective(b)) {
            lower.push_back(b);
            all.push_back(b);
        } else {
            lower.push_back(std::nullopt);
        }
    }
    const CurveClass anchor = find_anchor(ctx.cl, all, ctx.anchor_bound);
    const AnchorRing ring = anchor_ring(c, anchor);
    const Polynomial with_lhs = y * rel.lhs;
    const Polynomial with_rhs = y * rel.rhs;
    NovikovSeries out;
    for (std::size_t i = 0; i < window.size(); ++i) {
        Rational v = evaluate(c, with_lhs, window[i], anchor, ring).lambda;
        if (lower[i]) v -= evaluate(c, with_rhs, *lower[i], anchor, ring).lambda;
        out[window[i].coords] = v;
    }
    return out;
}

namespace {

struct QuantumRing {
    std::size_t k;
    MonomialOrder order;
};

QuantumRing quantum_ring(const ClassLattice& cl) {
    if (!cl.mori_unimodular())
        throw Error(Errc::UnsupportedNovikovShape, "Mori generators do not form a basis of the curve lattice");
    return {cl.pic_rank(), MonomialOrder::block(cl.pic_rank())};
}

Polynomial q_monomial(const QuantumRing& ring, const ClassLattice& cl, const IntVec& beta) {
    IntVec a = cl.mori_coordinates(cl.curve(beta));
    Monomial m(2 * ring.k, 0);
    for (std::size_t i = 0; i < ring.k; ++i) {
        if (a[i] < 0)
            throw Error(Errc::UnsupportedNovikovShape, "q^" + to_string(beta) + " is not a monomial in the Mori generators");
        m[ring.k + i] = static_cast<int>(a[i]);
    }
    return Polynomial::monomial(m, 1, ring.order);
}

}  // namespace

Ideal qsr_ideal(const Fan& fan, const ClassLattice& cl, const LinearData& lin) {
    const QuantumRing ring = quantum_ring(cl);
    Ideal ideal;
    ideal.nvars = 2 * ring.k;
    ideal.order = ring.order;
    for (const auto& r : qsr_generators(fan, cl, lin))
        ideal.generators.push_back(r.lhs.extended(2 * ring.k, ring.order) -
                                   q_monomial(ring, cl, r.beta_k.beta.coords) * r.rhs.extended(2 * ring.k, ring.order));
    return ideal;
}

NovikovPolynomial quantum_normal_form(const Fan& fan, const ClassLattice& cl, const LinearData& lin,
                                      const NovikovPolynomial& p, GroebnerCache* cache) {
    const QuantumRing ring = quantum_ring(cl);
    const GroebnerBasis gb = groebner(qsr_ideal(fan, cl, lin), cache);
    Polynomial flat(2 * ring.k, ring.order);
    for (const auto& [beta, part] : p.parts())
        flat += q_monomial(ring, cl, beta) * part.extended(2 * ring.k, ring.order);
    Polynomial nf = normal_form(flat, gb);

    NovikovPolynomial out(ring.k, ring.k);
    for (const auto& t : nf.terms()) {
        Monomial psi(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(ring.k));
        IntVec a(ring.k);
        for (std::size_t i = 0; i < ring.k; ++i) a[i] = t.exponents[ring.k + i];
        CurveClass beta = cl.zero_curve();
        for (std::size_t i = 0; i < ring.k; ++i) beta = beta + a[i] * cl.mori_generators()[i];
        out += NovikovPolynomial::q_power(beta.coords, ring.k) *
               NovikovPolynomial::classical(Polynomial::monomial(psi, t.coeff), ring.k);
    }
    return out;
}

}  // namespace qsheaf
