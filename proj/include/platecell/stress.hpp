#pragma once

#include "platecell/pcp.hpp"

namespace platecell {

/// Per-element stress of one corrector, averaged over the element's Gauss
/// points, Voigt order (11, 22, 33, 23, 13, 12), GPa. Void elements carry
/// zeros and is_void = 1.
struct StressField {
    MacroMode mode;
    Eigen::Matrix<double, Eigen::Dynamic, 6> element_stress;
    std::vector<std::uint8_t> is_void;
};

StressField local_stress(const HexMesh& mesh, const std::vector<ElasticityTensor>& phase_tensors,
                         const CorrectorField& corrector);

StressField local_stress(const HexMesh& mesh,
                         const std::map<std::string, ElasticityTensor>& materials,
                         const CorrectorField& corrector);

/// Per-element von Mises scalar.
Eigen::VectorXd von_mises(const StressField& field);
double von_mises(const Vec6& s);

/// Weighted superposition of per-mode stress fields (void masks must agree).
StressField superpose_stress(const std::vector<std::pair<const StressField*, double>>& terms);

/// The epsilon-weighted tension + bending combination for one index pair:
/// the tension-mode stress plus epsilon times the bending-mode stress.
StressField combined_mode_stress(const StressField& tension, const StressField& bending,
                                 double epsilon);

}  // namespace platecell
