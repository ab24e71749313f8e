#include "qsheaf/model.hpp"

#include "qsheaf/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace qsheaf {

namespace {

using nlohmann::json;

[[noreturn]] void model_error(const std::string& where, const std::string& what) {
    throw Error(Errc::ModelError, where + ": " + what);
}

std::int64_t integer(const json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        try {
            std::int64_t v = std::stoll(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        model_error(where, "'" + s + "' is not an integer");
    }
    model_error(where, "expected an integer");
}

IntVec int_vector(const json& j, const std::string& where) {
    if (!j.is_array()) model_error(where, "expected an array");
    IntVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) model_error(where, std::string("missing '") + key + "'");
    return *it;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Model parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string msg = e.what();
        auto pos = msg.find("]: ");
        throw ParseError("invalid JSON (" + (pos == std::string::npos ? msg : msg.substr(pos + 3)) + ")", line, col);
    }
    if (!doc.is_object()) model_error("model", "expected a JSON object");
    const json& version = field(doc, "version", "model");
    if (!version.is_string() || version.get<std::string>() != kModelVersion)
        model_error("version", std::string("expected \"") + kModelVersion + "\"");

    const json& fan = field(doc, "fan", "model");
    const std::int64_t rank = integer(field(fan, "rank", "fan"), "fan.rank");
    if (rank <= 0) model_error("fan.rank", "must be positive");
    std::vector<IntVec> rays;
    const json& jr = field(fan, "rays", "fan");
    if (!jr.is_array()) model_error("fan.rays", "expected an array");
    for (std::size_t i = 0; i < jr.size(); ++i) rays.push_back(int_vector(jr[i], "fan.rays[" + std::to_string(i) + "]"));
    std::vector<ConeIndices> cones;
    const json& jc = field(fan, "max_cones", "fan");
    if (!jc.is_array()) model_error("fan.max_cones", "expected an array");
    for (std::size_t i = 0; i < jc.size(); ++i) {
        const std::string where = "fan.max_cones[" + std::to_string(i) + "]";
        ConeIndices cone;
        for (auto v : int_vector(jc[i], where)) {
            if (v < 0) model_error(where, "negative ray index");
            cone.push_back(static_cast<std::size_t>(v));
        }
        std::sort(cone.begin(), cone.end());
        cones.push_back(std::move(cone));
    }

    Model model;
    model.fan = build_fan(static_cast<std::size_t>(rank), std::move(rays), std::move(cones));
    model.cl = class_lattice(model.fan);

    std::vector<RawDeformationEntry> raw;
    std::string base = "tangent";
    if (auto it = doc.find("deformation"); it != doc.end()) {
        const json& def = *it;
        if (auto b = def.find("base"); b != def.end()) {
            if (!b->is_string()) model_error("deformation.base", "expected a string");
            base = b->get<std::string>();
            if (base != "tangent" && base != "none") model_error("deformation.base", "expected \"tangent\" or \"none\"");
        }
        if (auto e = def.find("entries"); e != def.end()) {
            if (!e->is_array()) model_error("deformation.entries", "expected an array");
            for (std::size_t i = 0; i < e->size(); ++i) {
                const std::string where = "deformation.entries[" + std::to_string(i) + "]";
                const json& en = (*e)[i];
                const std::int64_t rho = integer(field(en, "rho", where), where + ".rho");
                if (rho < 0 || static_cast<std::size_t>(rho) >= model.fan.num_rays())
                    throw Error(Errc::UnknownRayIndex, where + ": ray index " + std::to_string(rho) + " out of range");
                const json& coeff = field(en, "coeff", where);
                if (!coeff.is_string() && !coeff.is_number_integer()) model_error(where + ".coeff", "expected a string");
                raw.push_back({static_cast<std::size_t>(rho), int_vector(field(en, "m", where), where + ".m"),
                               coeff.is_string() ? coeff.get<std::string>() : std::to_string(coeff.get<std::int64_t>())});
            }
        }
    }
    if (base == "tangent") {
        std::set<std::size_t> has_diagonal;
        for (const auto& r : raw)
            if (std::all_of(r.m.begin(), r.m.end(), [](std::int64_t v) { return v == 0; })) has_diagonal.insert(r.rho);
        for (std::size_t rho = 0; rho < model.fan.num_rays(); ++rho)
            if (!has_diagonal.count(rho)) raw.push_back({rho, IntVec(model.fan.rank(), 0), "D" + std::to_string(rho + 1)});
    }
    model.deformation = parse_deformation(model.fan, model.cl, raw);
    model.lin = linear_part(model.fan, model.cl, model.deformation);

    if (auto it = doc.find("options"); it != doc.end()) {
        const json& o = *it;
        if (auto v = o.find("anchor_bound"); v != o.end()) model.options.anchor_bound = integer(*v, "options.anchor_bound");
        if (auto v = o.find("trials"); v != o.end())
            model.options.trials = static_cast<int>(integer(*v, "options.trials"));
        if (auto v = o.find("max_c1_degree"); v != o.end())
            model.options.max_c1_degree = integer(*v, "options.max_c1_degree");
        if (model.options.anchor_bound < 1) model_error("options.anchor_bound", "must be positive");
        if (model.options.trials < 0) model_error("options.trials", "must be nonnegative");
    }
    return model;
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::FileNotFound, "cannot open model file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

}  // namespace qsheaf
