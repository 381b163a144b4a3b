#pragma once

#include "platecell/pcp.hpp"

namespace platecell {

enum class Surface { top, bottom };

/// Surface-deformation metrics of one corrector. The deformed height is the
/// normal displacement of the surface nodes; the baseline is the mode's
/// macroscopic surface shape (flat for tension/shear, the quadratic
/// cylinder or saddle for bending/torsion) plus the best-fit rigid offset —
/// the only baseline freedoms the periodic constraints leave. The deviation
/// is the residual; slopes are taken in fast variables, which is what makes
/// the relative area change order one.
struct WrinkleReport {
    Surface surface = Surface::top;
    double amplitude = 0.0;      // max |deviation|, corrector units
    double slope_rms = 0.0;      // rms in-plane gradient of the deviation
    double area_ratio = 1.0;     // deformed / reference surface area
    double baseline_offset = 0.0;
    double period_mismatch = 0.0;      // max |dev(y + base period) - dev(y)|
    double period_mismatch_rel = 0.0;  // relative to the amplitude
    bool periodic = true;              // period_mismatch_rel <= tolerance
};

/// base_period: the single-cell periods when the mesh is a tiling (pass
/// {0, 0} to use the mesh's own periods, which makes the check trivial).
WrinkleReport surface_wrinkle(const HexMesh& mesh, const CorrectorField& corrector,
                              Surface surface, std::pair<double, double> base_period = {0.0, 0.0},
                              double periodicity_tol = 1e-6);

}  // namespace platecell
