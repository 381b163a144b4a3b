#include "platecell/wrinkle.hpp"

#include <cmath>

#include "platecell/errors.hpp"

namespace platecell {

WrinkleReport surface_wrinkle(const HexMesh& mesh, const CorrectorField& corrector,
                              Surface surface, std::pair<double, double> base_period,
                              double periodicity_tol) {
    if (corrector.displacement.rows() != mesh.node_count())
        throw ValidationError("surface_wrinkle: corrector does not match the mesh");
    const int n1 = mesh.n1(), n2 = mesh.n2();
    const int k = surface == Surface::top ? mesh.n3() : 0;
    const MacroMode mode = corrector.mode;
    const AffineField xi(MacroMode{mode.pair, mode.nu, 1.0});

    // Deviation of the surface height from the macroscopic shape; the rigid
    // offset is fitted below.
    Eigen::MatrixXd dev(n1 + 1, n2 + 1);
    for (int j = 0; j <= n2; ++j)
        for (int i = 0; i <= n1; ++i) {
            const std::int64_t node = mesh.node_id(i, j, k);
            const double height = corrector.displacement(node, 2);
            const double macro = mode.magnitude * xi.evaluate(mesh.node_position(node)).z();
            dev(i, j) = height - macro;
        }
    const double offset = dev.mean();
    dev.array() -= offset;

    WrinkleReport report;
    report.surface = surface;
    report.baseline_offset = offset;
    report.amplitude = dev.cwiseAbs().maxCoeff();

    double area_ref = 0.0, area_def = 0.0, slope2 = 0.0;
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const double dx = mesh.x_planes[std::size_t(i) + 1] - mesh.x_planes[std::size_t(i)];
            const double dy = mesh.y_planes[std::size_t(j) + 1] - mesh.y_planes[std::size_t(j)];
            const double gx = 0.5 * ((dev(i + 1, j) + dev(i + 1, j + 1)) -
                                     (dev(i, j) + dev(i, j + 1))) / dx;
            const double gy = 0.5 * ((dev(i, j + 1) + dev(i + 1, j + 1)) -
                                     (dev(i, j) + dev(i + 1, j))) / dy;
            const double a = dx * dy;
            area_ref += a;
            area_def += a * std::sqrt(1.0 + gx * gx + gy * gy);
            slope2 += a * (gx * gx + gy * gy);
        }
    report.area_ratio = area_def / area_ref;
    report.slope_rms = std::sqrt(slope2 / area_ref);

    // Periodicity against the base-cell period (trivial for a single cell).
    const double p1 = base_period.first > 0.0 ? base_period.first : mesh.h1;
    const double p2 = base_period.second > 0.0 ? base_period.second : mesh.h2;
    const double dx = mesh.h1 / n1, dy = mesh.h2 / n2;
    const double s1f = p1 / dx, s2f = p2 / dy;
    const int s1 = int(std::lround(s1f)), s2 = int(std::lround(s2f));
    if (std::abs(s1f - s1) > 1e-9 || std::abs(s2f - s2) > 1e-9)
        throw ValidationError("surface_wrinkle: base period not commensurate with the grid");
    double mismatch = 0.0;
    for (int j = 0; j <= n2; ++j)
        for (int i = 0; i + s1 <= n1; ++i)
            mismatch = std::max(mismatch, std::abs(dev(i + s1, j) - dev(i, j)));
    for (int j = 0; j + s2 <= n2; ++j)
        for (int i = 0; i <= n1; ++i)
            mismatch = std::max(mismatch, std::abs(dev(i, j + s2) - dev(i, j)));
    report.period_mismatch = mismatch;
    report.period_mismatch_rel = mismatch / std::max(report.amplitude, 1e-300);
    report.periodic = report.period_mismatch_rel <= periodicity_tol;
    return report;
}

}  // namespace platecell
