#pragma once

#include "qsheaf/deformation.hpp"

#include <filesystem>
#include <string>

namespace qsheaf {

inline constexpr const char* kModelVersion = "qsheaf-model/1";
inline constexpr const char* kReportVersion = "qsheaf-report/1";

struct ModelOptions {
    std::int64_t anchor_bound = 10;
    int trials = 20;
    std::int64_t max_c1_degree = 6;
};

/// A parsed and validated model file. Ray indices in the file are 0-based;
/// expression symbols D1..Dr are 1-based.
struct Model {
    Fan fan;
    ClassLattice cl;
    Deformation deformation;
    LinearData lin;
    ModelOptions options;
};

/// JSON layout:
///   {"version": "qsheaf-model/1",
///    "fan": {"rank": 2, "rays": [[1,0],...], "max_cones": [[0,2],...]},
///    "deformation": {"base": "tangent" | "none",
///                    "entries": [{"rho": 0, "m": [-1,0], "coeff": "1/3*D3"}]},
///    "options": {"anchor_bound": 10, "trials": 20, "max_c1_degree": 6}}
/// Integers may be JSON numbers or decimal strings. With base "tangent" the
/// entry (rho, 0, D_rho) is added for every ray lacking an explicit m = 0 entry.
Model parse_model(const std::string& text);
Model load_model(const std::filesystem::path& path);

}  // namespace qsheaf
