#include "qsheaf/cli.hpp"

#include "qsheaf/cache.hpp"
#include "qsheaf/error.hpp"
#include "qsheaf/expression.hpp"
#include "qsheaf/model.hpp"
#include "qsheaf/quantum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <memory>
#include <sstream>

namespace qsheaf {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string model_path;
    std::vector<std::string> betas;
    std::string poly;
    std::int64_t max_degree = -1;
    std::int64_t grid = 6;
    bool all = false;
    int trials = -1;
    bool no_cache = false;
    std::string format = "text";
};

struct Session {
    Model model;
    std::unique_ptr<GroebnerCache> cache;
    std::unique_ptr<SectorCache> sectors;

    std::size_t k() const { return model.cl.pic_rank(); }
    std::string poly(const Polynomial& p) const { return p.to_string(psi_names(p.nvars())); }
    std::string mono(const Monomial& m) const { return poly(Polynomial::monomial(m, 1)); }
    std::string q(const CurveClass& beta) const { return q_monomial_string(model.cl, beta.coords); }
    CorrelatorContext context() const {
        return {model.fan, model.cl, model.lin, cache.get(), sectors.get(), model.options.anchor_bound};
    }
};

Json ints(const IntVec& v) { return Json(v); }

Json ints(const ConeIndices& v) { return Json(v); }

Json curve_json(const Session& s, const CurveClass& beta) {
    return Json{{"coords", ints(beta.coords)}, {"d", ints(beta.d)}, {"c1", beta.c1()}, {"q", s.q(beta)}};
}

CurveClass parse_beta(const ClassLattice& cl, const std::string& text) {
    IntVec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            v.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw Error(Errc::InvalidInput, "--beta: '" + item + "' is not an integer");
    }
    if (v.size() != cl.pic_rank())
        throw Error(Errc::InvalidInput, "--beta needs " + std::to_string(cl.pic_rank()) + " curve coordinates, got " +
                                            std::to_string(v.size()));
    return cl.curve(v);
}

Json analyze(const Session& s, const Options& o) {
    const Fan& fan = s.model.fan;
    const ClassLattice& cl = s.model.cl;
    Json r;
    r["fan"] = {{"rank", fan.rank()},
                {"rays", fan.rays()},
                {"max_cones", fan.max_cones()},
                {"face_counts", face_counts(fan)},
                {"h_vector", h_vector(fan)}};
    Json divisors = Json::array();
    for (std::size_t rho = 0; rho < cl.num_rays(); ++rho)
        divisors.push_back({{"ray", rho}, {"class", ints(cl.divisor_class(rho))}, {"psi", s.poly(divisor_polynomial(cl, rho))}});
    Json basis = Json::array();
    for (const auto& c : cl.curve_basis()) basis.push_back(ints(c.d));
    r["picard"] = {{"rank", cl.pic_rank()}, {"basis_rays", cl.basis_rays()}, {"divisors", divisors}, {"curve_basis_d", basis}};
    Json classes = Json::array();
    for (const auto& c : cl.classes()) classes.push_back(ints(c.members));
    r["equivalence_classes"] = classes;
    Json colls = Json::array();
    for (const auto& k : primitive_collections(fan)) {
        BetaK bk = beta_K(fan, cl, k);
        Json minus = Json::array();
        for (const auto& m : bk.minus) minus.push_back({{"class", m.class_id}, {"multiplicity", m.multiplicity}});
        colls.push_back({{"edges", ints(k.edges)},
                         {"beta_K", ints(bk.beta.coords)},
                         {"d", ints(bk.beta.d)},
                         {"sigma", ints(bk.sigma)},
                         {"plus", bk.plus},
                         {"minus", minus}});
    }
    r["primitive_collections"] = colls;
    Json gens = Json::array();
    for (const auto& g : cl.mori_generators()) gens.push_back(curve_json(s, g));
    r["mori"] = {{"generators", gens},
                 {"unimodular", cl.mori_unimodular()},
                 {"fano", is_fano_type(cl)},
                 {"beta_K_cone_is_mori_cone", beta_k_cone_matches_mori(fan, cl)}};

    Json entries = Json::array();
    for (const auto& e : s.model.deformation.entries) {
        auto slot = linear_slot(fan, e.rho, e.m);
        entries.push_back({{"rho", e.rho},
                           {"m", ints(e.m)},
                           {"coeff", s.poly(e.a)},
                           {"linear_slot", slot ? Json(*slot) : Json(nullptr)}});
    }
    r["deformation"] = {{"is_tangent", s.model.deformation.is_tangent}, {"entries", entries}};
    Json lin = Json::array();
    for (std::size_t c = 0; c < cl.classes().size(); ++c) {
        Json rows = Json::array();
        for (const auto& row : s.model.lin.matrices[c]) {
            Json jr = Json::array();
            for (const auto& p : row) jr.push_back(s.poly(p));
            rows.push_back(jr);
        }
        lin.push_back({{"class", ints(cl.classes()[c].members)}, {"A", rows}, {"Q", s.poly(s.model.lin.q[c])}});
    }
    r["linear_data"] = lin;
    const int trials = o.trials >= 0 ? o.trials : s.model.options.trials;
    LocalFreeness lf = local_freeness_check(fan, cl, s.model.deformation, trials);
    r["local_freeness"] = {{"verdict", lf.pass ? "pass (probabilistic)" : "fail"},
                           {"points", lf.points_checked},
                           {"lines", lf.lines_checked},
                           {"detail", lf.detail}};
    return r;
}

Json polymology_report(const Session& s) {
    Polymology pm = polymology(s.model.fan, s.model.cl, s.model.lin, s.cache.get());
    Json r;
    r["dims"] = pm.dims;
    r["h_vector"] = h_vector(s.model.fan);
    r["generator"] = s.mono(pm.generator);
    Json q = Json::array();
    for (std::size_t c = 0; c < s.model.cl.classes().size(); ++c)
        q.push_back({{"class", ints(s.model.cl.classes()[c].members)}, {"Q", s.poly(s.model.lin.q[c])}});
    r["Q"] = q;
    Json sr = Json::array(), gb = Json::array();
    for (const auto& g : pm.ideal.generators) sr.push_back(s.poly(g));
    for (const auto& g : pm.gb.basis) gb.push_back(s.poly(g));
    r["sr_generators"] = sr;
    r["groebner_basis"] = gb;
    return r;
}

Json sector_report(Session& s, const Options& o) {
    if (o.betas.size() != 1) throw Error(Errc::InvalidInput, "sector needs exactly one --beta");
    const CurveClass beta = parse_beta(s.model.cl, o.betas.front());
    auto sd = s.sectors->get(beta);
    Json r;
    r["beta"] = curve_json(s, beta);
    r["effective"] = sd->effective;
    r["nonempty"] = sd->nonempty;
    Json edges = Json::array();
    for (const auto& e : sd->enhanced_edges) edges.push_back(Json::array({e.rho, e.i}));
    r["enhanced_edges"] = edges;
    r["degenerate"] = sd->degenerate;
    r["n_beta"] = sd->n_beta;
    r["exponents"] = sd->exponents;
    Json gens = Json::array();
    for (const auto& g : sd->ideal_gens) gens.push_back(s.poly(g));
    r["ideal"] = gens;
    r["four_fermi"] = s.poly(four_fermi(s.model.cl, s.model.lin, beta));
    if (sd->nonempty && sd->n_beta >= 0) {
        GroebnerBasis gb = groebner(sd->ideal(), s.cache.get());
        r["graded_dims"] = quotient_dims(gb, static_cast<int>(sd->n_beta) + 1);
    }
    return r;
}

Json qsr_report(const Session& s, const Options& o) {
    Json r, rels = Json::array();
    for (const auto& rel : qsr_generators(s.model.fan, s.model.cl, s.model.lin)) {
        rels.push_back({{"collection", ints(rel.k.edges)},
                        {"beta_K", ints(rel.beta_k.beta.coords)},
                        {"q", s.q(rel.beta_k.beta)},
                        {"lhs", s.poly(rel.lhs)},
                        {"rhs", s.poly(rel.rhs)},
                        {"relation", rel.difference.to_string(s.model.cl)}});
    }
    r["relations"] = rels;
    if (!o.poly.empty()) {
        NovikovPolynomial p = parse_expression(o.poly, s.model.cl);
        NovikovPolynomial nf = quantum_normal_form(s.model.fan, s.model.cl, s.model.lin, p, s.cache.get());
        r["normal_form"] = {{"input", p.to_string(s.model.cl)}, {"result", nf.to_string(s.model.cl)}};
    }
    return r;
}

Json correlator_report(const Session& s, const Options& o) {
    if (o.poly.empty()) throw Error(Errc::InvalidInput, "correlator needs --poly");
    const Polynomial p = parse_classical(o.poly, s.model.cl);
    const CorrelatorContext ctx = s.context();
    CorrelatorReport rep;
    if (!o.betas.empty()) {
        std::vector<CurveClass> list;
        for (const auto& b : o.betas) list.push_back(parse_beta(s.model.cl, b));
        rep = correlator_over(ctx, p, list);
    } else {
        rep = correlator_series(ctx, p, o.max_degree >= 0 ? o.max_degree : s.model.options.max_c1_degree);
    }
    Json r;
    r["poly"] = s.poly(p);
    r["anchor"] = curve_json(s, rep.anchor);
    r["generator"] = s.mono(rep.generator);
    Json rows = Json::array();
    for (const auto& sc : rep.sectors)
        rows.push_back({{"beta", ints(sc.beta.coords)}, {"q", s.q(sc.beta)}, {"lambda", sc.lambda.get_str()}, {"note", sc.note}});
    r["sectors"] = rows;
    r["series"] = series_to_string(s.model.cl, rep.series);
    r["normalization"] = "values are coefficients of " + s.mono(rep.generator) + " in the anchor sector; only ratios are basis-free";
    return r;
}

Json verify_report(const Session& s, const Options& o, bool& failed) {
    const auto relations = qsr_generators(s.model.fan, s.model.cl, s.model.lin);
    const auto rows = verify_grid(s.model.fan, s.model.cl, s.model.lin, o.grid, 7, s.model.options.anchor_bound);
    Json table = Json::array();
    std::size_t bad = 0, expanded = 0;
    for (const auto& row : rows) {
        const bool ok = row.exponent_ok && row.expansion_ok.value_or(true);
        if (row.expansion_ok) ++expanded;
        if (!ok) ++bad;
        if (o.all || !ok)
            table.push_back({{"collection", ints(relations[row.relation].k.edges)},
                             {"beta", ints(row.beta.coords)},
                             {"upper", ints(row.upper.coords)},
                             {"exponents", row.exponent_ok ? "pass" : "FAIL"},
                             {"expansion", row.expansion_ok ? (*row.expansion_ok ? "pass" : "FAIL") : "-"}});
    }
    failed = bad != 0;
    Json r;
    r["grid"] = o.grid;
    r["checked"] = rows.size();
    r["expansion_checked"] = expanded;
    r["failed"] = bad;
    r["rows"] = table;
    r["result"] = failed ? "FAIL" : "pass";
    return r;
}

// Plain-text rendering of a report: nested objects indent, scalar arrays are
// comma-joined, arrays of flat objects become one line per element.
std::string inline_value(const Json& v, bool nested) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        bool scalar = std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += scalar ? "," : " ";
            s += inline_value(v[i], true);
        }
        return nested || !scalar ? "(" + s + ")" : s;
    }
    if (v.is_object()) {
        std::string s;
        for (auto it = v.begin(); it != v.end(); ++it)
            s += (s.empty() ? "" : "  ") + it.key() + "=" + inline_value(it.value(), true);
        return s;
    }
    return v.dump();
}

bool flat(const Json& v) {
    if (v.is_object()) {
        for (const auto& e : v) {
            if (e.is_object()) return false;
            if (e.is_array() && !std::all_of(e.begin(), e.end(), [](const Json& x) {
                    return !x.is_object() && (!x.is_array() || std::all_of(x.begin(), x.end(), [](const Json& y) {
                        return !y.is_structured();
                    }));
                }))
                return false;
        }
        return true;
    }
    return !v.is_structured() || std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_object(); });
}

void render_text(const Json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_text(v, os, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << pad << it.key() << ":\n";
            for (const auto& e : v) {
                if (flat(e)) {
                    os << pad << "  - " << inline_value(e, true) << '\n';
                } else {
                    os << pad << "  -\n";
                    render_text(e, os, indent + 4);
                }
            }
        } else {
            os << pad << it.key() << ": " << inline_value(v, false) << '\n';
        }
    }
}

std::unique_ptr<Session> open_session(const Options& o) {
    auto s = std::make_unique<Session>();
    s->model = load_model(o.model_path);
    if (!o.no_cache) s->cache = std::make_unique<FileGroebnerCache>(default_cache_dir());
    else s->cache = std::make_unique<MemoryGroebnerCache>();
    s->sectors = std::make_unique<SectorCache>(s->model.fan, s->model.cl, s->model.lin);
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum sheaf cohomology of toric deformations of tangent bundles", "qsheaf"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("model", o.model_path, "model file (" + std::string(kModelVersion) + " JSON)")->required();
        sub->add_flag("--no-cache", o.no_cache, "do not read or write the Gröbner cache");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto* analyze_cmd = app.add_subcommand("analyze", "fan, classes, primitive collections and local freeness");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--trials", o.trials, "random points and lines for the local freeness check");
    auto* poly_cmd = app.add_subcommand("polymology", "graded dimensions, SR generators and Gröbner basis");
    add_common(poly_cmd);
    auto* sector_cmd = app.add_subcommand("sector", "data of the moduli space for one curve class");
    add_common(sector_cmd);
    sector_cmd->add_option("--beta", o.betas, "comma-separated curve coordinates")->required();
    auto* qsr_cmd = app.add_subcommand("qsr", "quantum Stanley-Reisner relations");
    add_common(qsr_cmd);
    qsr_cmd->add_option("--poly", o.poly, "reduce this expression modulo the relations");
    auto* corr_cmd = app.add_subcommand("correlator", "correlation functions as a Novikov series");
    add_common(corr_cmd);
    corr_cmd->add_option("--poly", o.poly, "insertion, e.g. D1^3")->required();
    corr_cmd->add_option("--max-degree", o.max_degree, "largest c1·beta to include");
    corr_cmd->add_option("--beta", o.betas, "explicit sector (repeatable); skips enumeration");
    auto* verify_cmd = app.add_subcommand("verify", "check the quantum relations class by class");
    add_common(verify_cmd);
    verify_cmd->add_flag("--all", o.all, "list every checked case, not only failures");
    verify_cmd->add_option("--grid", o.grid, "largest c1·beta (and number of Mori generators) per case")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        auto session = open_session(o);
        CLI::App* cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();
        bool failed = false;
        Json body;
        if (name == "analyze") {
            body = analyze(*session, o);
            failed = body["local_freeness"]["verdict"] == "fail";
        } else if (name == "polymology") {
            body = polymology_report(*session);
        } else if (name == "sector") {
            body = sector_report(*session, o);
        } else if (name == "qsr") {
            body = qsr_report(*session, o);
        } else if (name == "correlator") {
            body = correlator_report(*session, o);
        } else {
            body = verify_report(*session, o, failed);
        }
        Json report;
        report["schema"] = kReportVersion;
        report["command"] = name;
        for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
        if (o.format == "json")
            out << report.dump(2) << '\n';
        else
            render_text(report, out, 0);
        return failed ? 2 : 0;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qsheaf
