// One PASS/FAIL line per acceptance criterion; exit status is the failure count.

#include "fixtures.hpp"

#include "qsheaf/error.hpp"
#include "qsheaf/riemann_roch.hpp"

#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace qsheaf;
using namespace fixtures;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream log;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) log << what;
        ok = ok && cond;
    }
};

std::vector<std::pair<CurveClass, CurveClass>> dominating_pairs(const ClassLattice& cl, std::mt19937_64& rng,
                                                                std::size_t count) {
    auto window = mori_window(cl, 6, 4);
    std::uniform_int_distribution<std::size_t> pick(0, window.size() - 1);
    std::vector<std::pair<CurveClass, CurveClass>> out;
    for (int guard = 0; out.size() < count && guard < 10000; ++guard) {
        const auto& lower = window[pick(rng)];
        CurveClass upper = lower + window[pick(rng)];
        if (dominates(cl, upper, lower)) out.emplace_back(upper, lower);
    }
    return out;
}

void polymology_vs_h_vector(Outcome& o) {
    for (const auto& ex : examples()) {
        Setup s(ex.fan);
        auto dims = polymology(s.fan, s.cl, s.lin).dims;
        auto h = oracle_h_vector(s.fan);
        dims.resize(h.size());
        o.expect(dims == h, ex.name + ": dims differ from the h-vector");
    }
}

void batyrev_relations(Outcome& o) {
    auto expect_relations = [&](const std::string& name, const Fan& fan, const std::vector<std::string>& want) {
        Setup s(fan);
        auto rels = qsr_generators(s.fan, s.cl, s.lin);
        o.expect(rels.size() == want.size(), name + ": wrong relation count");
        for (std::size_t i = 0; i < rels.size() && i < want.size(); ++i)
            o.expect(rels[i].difference == parse_expression(want[i], s.cl), name + ": relation " + want[i]);
    };
    expect_relations("P2", p2(), {"psi1^3 - q"});
    expect_relations("P1xP1", p1xp1(), {"psi1^2 - q1", "psi2^2 - q2"});
    for (std::int64_t n = 1; n <= 3; ++n)
        expect_relations("F" + std::to_string(n), hirzebruch(n),
                         {"D1*D2 - q1*D3^" + std::to_string(n), "D3*D4 - q2"});
}

void relation_theorem(Outcome& o) {
    std::mt19937_64 rng(3);
    struct Row {
        std::size_t example;
        std::size_t relation;
        CurveClass beta;
        CurveClass upper;
    };
    std::vector<Row> all;
    auto ex = examples();
    std::vector<Setup> setups;
    for (const auto& e : ex) setups.emplace_back(e.fan);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < setups.size(); ++i) {
        const auto& s = setups[i];
        auto rels = qsr_generators(s.fan, s.cl, s.lin);
        auto rows = verify_grid(s.fan, s.cl, s.lin, 6);
        o.expect(!rows.empty(), ex[i].name + ": empty grid");
        for (const auto& row : rows) {
            ++checked;
            o.expect(row.exponent_ok, ex[i].name + ": exponent identity failed");
            all.push_back({i, row.relation, row.beta, row.upper});
        }
    }
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t j = 0; j < 10 && j < all.size(); ++j) {
        const auto& r = all[j];
        const auto& s = setups[r.example];
        auto rel = qsr_generators(s.fan, s.cl, s.lin)[r.relation];
        o.expect(verify_qc_expansion(s.cl, s.lin, rel, r.beta, r.upper), ex[r.example].name + ": expansion differs");
    }
    o.log << checked << " rows";
}

void hirzebruch_sector(Outcome& o) {
    for (std::int64_t n = 1; n <= 3; ++n) {
        Setup s(hirzebruch(n));
        const std::string tag = "F" + std::to_string(n);
        auto beta = s.curve_d({1, 1, -n, 0});
        auto sd = sector(s.fan, s.cl, s.lin, beta);
        o.expect(sd.degenerate == std::vector<std::size_t>{3}, tag + ": degenerate edge");
        o.expect(sd.n_beta == 3, tag + ": n_beta");
        o.expect(sd.enhanced_edges.size() == 5, tag + ": enhanced edge count");
        if (n == 2) o.expect(four_fermi(s.cl, s.lin, beta) == s.lin.q[s.cl.class_of(2)], tag + ": four-fermi factor");
    }
}

void p1_ladder(Outcome& o) {
    Setup s(p1());
    CorrelatorContext ctx{s.fan, s.cl, s.lin};
    const auto gen = s.cl.mori_generators()[0];
    for (std::int64_t k = 0; k <= 3; ++k) {
        auto rep = correlator_series(ctx, s.psi(0).pow(static_cast<unsigned>(2 * k + 1)), 8);
        NovikovSeries want{{(k * gen).coords, Rational(1)}};
        o.expect(rep.series == want, "psi^" + std::to_string(2 * k + 1) + " gave " + series_to_string(s.cl, rep.series));
    }
}

void deformation_invariance(Outcome& o) {
    std::mt19937_64 rng(6);
    // (a) nonlinear entries
    for (std::int64_t n = 1; n <= 3; ++n) {
        auto f = hirzebruch(n);
        Setup base(f);
        std::vector<std::pair<std::size_t, IntVec>> nl;
        for (std::size_t rho = 0; rho < f.num_rays(); ++rho)
            for (const auto& m : characters(f, rho))
                if (!linear_slot(f, rho, m)) nl.emplace_back(rho, m);
        o.expect(!nl.empty(), "no nonlinear characters");
        std::uniform_int_distribution<int> coeff(-4, 4);
        for (int t = 0; t < 3; ++t) {
            std::vector<RawDeformationEntry> extra;
            for (const auto& [rho, m] : nl)
                if (rng() % 2) extra.push_back({rho, m, std::to_string(coeff(rng)) + "/3*D1 + D3"});
            Setup s(f, tangent_plus(f, extra));
            auto pa = polymology(s.fan, s.cl, s.lin);
            auto pb = polymology(base.fan, base.cl, base.lin);
            o.expect(s.lin.matrices == base.lin.matrices && pa.gb == pb.gb && pa.dims == pb.dims, "nonlinear changed data");
            auto ra = qsr_generators(s.fan, s.cl, s.lin);
            auto rb = qsr_generators(base.fan, base.cl, base.lin);
            for (std::size_t i = 0; i < ra.size(); ++i) o.expect(ra[i].difference == rb[i].difference, "nonlinear changed QSR");
            CorrelatorContext ca{s.fan, s.cl, s.lin}, cb{base.fan, base.cl, base.lin};
            auto sectors = mori_window(s.cl, 3, 2);
            auto p = s.parse("psi1*psi2");
            o.expect(correlator_over(ca, p, sectors).series == correlator_over(cb, p, sectors).series,
                     "nonlinear changed correlators");
        }
    }
    // (b) linear deformations of P1xP1
    const std::vector<std::string> values{"1/7", "-1/7", "1/3", "-1/3"};
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    for (int t = 0; t < 4; ++t) {
        std::string g1 = values[pick(rng)], g2 = values[pick(rng)], e1 = values[pick(rng)], e2 = values[pick(rng)];
        Setup s(p1xp1(), p1xp1_deformation(g1, g2, e1, e2));
        const std::string tag = "(" + g1 + "," + g2 + "," + e1 + "," + e2 + ")";
        auto dims = polymology(s.fan, s.cl, s.lin).dims;
        dims.resize(3);
        o.expect(dims == std::vector<std::int64_t>{1, 2, 1}, tag + ": dims");
        auto rels = qsr_generators(s.fan, s.cl, s.lin);
        o.expect(rels.size() == 2, tag + ": relation count");
        if (rels.size() != 2) continue;
        o.expect(s.lin.q[0] == s.parse("psi1^2 - (" + g1 + ")*(" + g2 + ")*psi2^2"), tag + ": Q_c1");
        o.expect(s.lin.q[1] == s.parse("psi2^2 - (" + e1 + ")*(" + e2 + ")*psi1^2"), tag + ": Q_c2");
        o.expect(rels[0].difference == parse_expression("psi1^2 - (" + g1 + ")*(" + g2 + ")*psi2^2 - q1", s.cl),
                 tag + ": first relation");
        o.expect(rels[1].difference == parse_expression("psi2^2 - (" + e1 + ")*(" + e2 + ")*psi1^2 - q2", s.cl),
                 tag + ": second relation");
        CorrelatorContext ctx{s.fan, s.cl, s.lin};
        std::uniform_int_distribution<int> deg(0, 4);
        for (int y = 0; y < 20; ++y) {
            auto poly = random_homogeneous(rng, 2, deg(rng), 3);
            for (const auto& rel : rels)
                for (const auto& [beta, v] : relation_correlator(ctx, rel, poly, 4, 4))
                    o.expect(v == 0, tag + ": nonzero <Y r>");
        }
    }
}

void groebner_oracle(Outcome& o) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> nv(1, 3), ng(1, 3), gd(1, 3), qd(0, 4);
    int ideals = 0, queries = 0;
    while (ideals < 120) {
        const std::size_t n = static_cast<std::size_t>(nv(rng));
        std::vector<Polynomial> gens;
        const int count = ng(rng);
        for (int i = 0; i < count; ++i) {
            auto g = random_homogeneous(rng, n, gd(rng), 3);
            if (!g.is_zero()) gens.push_back(g);
        }
        if (gens.empty()) continue;
        ++ideals;
        auto gb = groebner(Ideal{n, {}, gens});
        for (int k = 0; k < 6; ++k) {
            const int d = qd(rng);
            Polynomial p = random_homogeneous(rng, n, d, 3);
            const auto& g = gens[static_cast<std::size_t>(k) % gens.size()];
            if (k % 2 == 0 && g.total_degree() <= d) p = random_homogeneous(rng, n, d - g.total_degree(), 2) * g;
            ++queries;
            o.expect(normal_form(p, gb).is_zero() == oracle_member(gens, p, n), "membership disagreement");
        }
    }
    o.log << ideals << " ideals, " << queries << " queries";
}

void structural(Outcome& o) {
    for (std::int64_t x = -20; x <= 20; ++x) o.expect(h0(x) - h1(x) == x + 1, "Riemann-Roch");
    std::mt19937_64 rng(8);
    std::size_t pairs = 0;
    for (const auto& ex : examples()) {
        Setup s(ex.fan);
        for (const auto& [upper, lower] : dominating_pairs(s.cl, rng, 9)) {
            if (pairs == 50) break;
            ++pairs;
            std::int64_t jump = 0;
            for (std::size_t rho = 0; rho < s.cl.num_rays(); ++rho) jump += h0(upper.d[rho]) - h0(lower.d[rho]);
            o.expect(sector(s.fan, s.cl, s.lin, upper).n_beta == sector(s.fan, s.cl, s.lin, lower).n_beta + jump,
                     ex.name + ": dimension identity");
            o.expect(transition(s.cl, s.lin, upper, lower).r.total_degree() == jump, ex.name + ": transition degree");
            o.expect(transfer_check(s.fan, s.cl, s.lin, upper, lower), ex.name + ": transfer");
        }
    }
    o.expect(pairs == 50, "too few dominating pairs");
    struct Config {
        Fan fan;
        std::vector<RawDeformationEntry> raw;
        std::string poly;
    };
    std::vector<Config> configs{
        {p1(), {}, "psi1^3 + psi1^5"},
        {p1(), {}, "psi1 + 2*psi1^7"},
        {p2(), {}, "psi1^2 + psi1^5"},
        {p2(), {}, "psi1^5 - psi1^8"},
        {p1xp1(), {}, "psi1^3*psi2 + psi1*psi2^3"},
        {p1xp1(), p1xp1_deformation("1/3", "-1/7", "1/7", "1/3"), "psi1^3*psi2 + psi2^4"},
        {p1xp1(), p1xp1_deformation("-1/3", "1/7", "1/3", "1/3"), "psi1*psi2 + psi1^2*psi2^2"},
        {hirzebruch(1), {}, "psi1^2*psi2^2 + psi2^4"},
        {hirzebruch(1), {}, "psi1*psi2 + psi1^3*psi2"},
    };
    {
        auto f = hirzebruch(1);
        std::vector<RawDeformationEntry> extra;
        for (std::size_t rho = 0; rho < f.num_rays(); ++rho)
            for (const auto& m : characters(f, rho))
                if (!linear_slot(f, rho, m)) extra.push_back({rho, m, "2*D1 - D3"});
        configs.push_back({f, tangent_plus(f, extra), "psi2^4 + psi1*psi2"});
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& c = configs[i];
        Setup s = c.raw.empty() ? Setup(c.fan) : Setup(c.fan, c.raw);
        CorrelatorContext ctx{s.fan, s.cl, s.lin};
        auto a = correlator_series(ctx, s.parse(c.poly), 6);
        std::vector<CurveClass> sectors;
        for (const auto& sc : a.sectors) sectors.push_back(sc.beta);
        auto positive = find_anchor_detailed(s.cl, {a.anchor}).positive;
        auto b = correlator_over(ctx, s.parse(c.poly), sectors, a.anchor + 2 * positive);
        std::optional<Rational> ratio;
        bool ok = a.sectors.size() == b.sectors.size();
        for (std::size_t j = 0; ok && j < a.sectors.size(); ++j) {
            ok = (sgn(a.sectors[j].lambda) == 0) == (sgn(b.sectors[j].lambda) == 0);
            if (!ok || sgn(a.sectors[j].lambda) == 0) continue;
            Rational r = b.sectors[j].lambda / a.sectors[j].lambda;
            ok = !ratio || *ratio == r;
            ratio = r;
        }
        o.expect(ok && ratio.has_value(), "anchor dependence in configuration " + std::to_string(i + 1));
    }
    o.log << pairs << " pairs, " << configs.size() << " configurations";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double limit_seconds;
        std::function<void(Outcome&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "classical polymology matches the h-vector", 1, polymology_vs_h_vector},
        {2, "tangent relations are the Batyrev relations", 1, batyrev_relations},
        {3, "relation identity on the example grids", 10, relation_theorem},
        {4, "Hirzebruch sector with a degenerate edge", 1, hirzebruch_sector},
        {5, "P1 correlator ladder", 5, p1_ladder},
        {6, "deformation invariances", 10, deformation_invariance},
        {7, "normal form membership vs linear algebra", 30, groebner_oracle},
        {8, "structural identities", 10, structural},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.log << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.ok && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
                  << std::setprecision(3) << secs << " s";
        if (!in_time) std::cout << ", limit " << c.limit_seconds << " s";
        const auto detail = o.log.str();
        if (!detail.empty()) std::cout << "; " << detail;
        std::cout << ")\n";
    }
    return failures;
}
