#pragma once

#include <stdexcept>
#include <string>

namespace platecell {

/// Bad input: config, cell geometry, mesh resolution, missing materials.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear solve failed: singular system or iteration cap hit.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace platecell
