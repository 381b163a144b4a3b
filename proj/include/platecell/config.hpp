#pragma once

#include <map>
#include <optional>

#include "platecell/cell.hpp"
#include "platecell/pcp.hpp"

namespace platecell {

struct AnalysisOptions {
    double threshold = 0.05;              // periodicity-deviation threshold
    double informative_threshold = 0.05;  // compare_sss verdict threshold
    double pitch = 0.0;                   // comparison pitch override, 0 = auto
};

struct OutputOptions {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv"};
};

/// A full pipeline configuration (JSON document, schema_version 1).
struct RunConfig {
    std::vector<IsotropicMaterial> materials;
    CellSpec cell;
    std::array<int, 3> resolution{8, 8, 16};
    std::vector<MacroMode> modes;
    double epsilon = 0.01;
    SolverOptions solver;
    AnalysisOptions analysis;
    OutputOptions output;

    std::map<std::string, ElasticityTensor> material_tensors() const;
    const IsotropicMaterial* find_material(const std::string& name) const;
};

/// Parse and validate a config file. Throws ValidationError with the parse
/// position or the complete list of validation failures.
RunConfig load_config(const std::string& path);

/// Same, from an in-memory JSON document.
RunConfig config_from_json(const std::string& text);

/// Canonical dump with all defaults materialized; re-parsing it yields the
/// same dump byte for byte.
std::string normalized_dump(const RunConfig& config);

}  // namespace platecell
