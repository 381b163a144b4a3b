#include "platecell/rigidity.hpp"

#include <cmath>

#include "hex_element.hpp"
#include "platecell/errors.hpp"

namespace platecell {

double RigidityTable::max_reciprocity_error() const {
    // The membrane/bending cross pair is normalized by the geometric mean
    // of the diagonal block scales (same units as the coupling), so that
    // symmetric plates with near-zero coupling do not divide noise by noise.
    const double cross_scale = std::sqrt(blocks[0][0].cwiseAbs().maxCoeff() *
                                         blocks[1][1].cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (int nu = 0; nu < 2; ++nu)
        for (int mu = 0; mu < 2; ++mu) {
            const Eigen::Matrix3d& a = blocks[std::size_t(nu)][std::size_t(mu)];
            const Eigen::Matrix3d b = blocks[std::size_t(mu)][std::size_t(nu)].transpose();
            double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
            if (nu != mu) scale = std::max(scale, cross_scale);
            if (scale == 0.0) continue;
            worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / scale);
        }
    return worst;
}

RigidityTable compute_rigidities(const HexMesh& mesh,
                                 const std::vector<ElasticityTensor>& phase_tensors,
                                 const std::vector<CorrectorField>& correctors) {
    const CorrectorField* by_index[6] = {};
    for (const CorrectorField& c : correctors) by_index[c.mode.index()] = &c;
    for (int idx = 0; idx < 6; ++idx)
        if (!by_index[idx])
            throw ValidationError("compute_rigidities: missing corrector for mode " +
                                  MacroMode::all()[std::size_t(idx)].label());
    if (phase_tensors.size() != mesh.phase_names.size())
        throw ValidationError("compute_rigidities: one elasticity tensor per phase required");

    RigidityTable table;
    const double cell_area = mesh.h1 * mesh.h2;
    static const int voigt_pair[3] = {0, 1, 5};  // rows 11, 22, 12

    detail::Vec24 ze;
    for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
        if (mesh.is_void(e)) continue;
        const Vec3 size = mesh.element_size(e);
        const Vec3 center = mesh.element_center(e);
        const double w = size.prod() / 8.0;
        const Mat6& c = phase_tensors[std::size_t(mesh.phase[std::size_t(e)])].matrix();
        const auto nodes = mesh.element_nodes(e);
        for (int idx = 0; idx < 6; ++idx) {
            const CorrectorField& corr = *by_index[idx];
            const MacroMode mode = corr.mode;
            const double scale = 1.0 / mode.magnitude;
            for (int a = 0; a < 8; ++a)
                ze.segment<3>(3 * a) = corr.displacement.row(nodes[std::size_t(a)]).transpose();
            for (const auto& gp : detail::gauss_points()) {
                const Vec6 s = scale * (c * (detail::strain_matrix(gp, size) * ze));
                const double z = center.z() + 0.5 * gp[2] * size.z();
                for (int gd = 0; gd < 3; ++gd) {
                    const double sgd = s[voigt_pair[gd]];
                    table.blocks[std::size_t(mode.nu)][0](gd, mode.pair_index()) += w * sgd;
                    table.blocks[std::size_t(mode.nu)][1](gd, mode.pair_index()) += w * sgd * z;
                }
            }
        }
    }
    for (int nu = 0; nu < 2; ++nu)
        for (int mu = 0; mu < 2; ++mu) table.blocks[std::size_t(nu)][std::size_t(mu)] /= cell_area;

    for (int p = 0; p < 3; ++p) {
        const int pair = p == 0 ? 11 : (p == 1 ? 22 : 12);
        table.neutral_planes[std::size_t(p)] = neutral_plane(table, pair);
    }
    return table;
}

RigidityTable compute_rigidities(const HexMesh& mesh,
                                 const std::map<std::string, ElasticityTensor>& materials,
                                 const std::vector<CorrectorField>& correctors) {
    return compute_rigidities(mesh, phase_tensors_for(mesh, materials), correctors);
}

double neutral_plane(const RigidityTable& table, int pair) {
    if (!MacroMode::valid_pair(pair))
        throw ValidationError("neutral_plane: pair must be 11, 22 or 12");
    const int p = MacroMode{pair, 0}.pair_index();
    const double a0 = table.blocks[0][0](p, p);
    const double scale = table.blocks[0][0].cwiseAbs().maxCoeff();
    if (std::abs(a0) <= 1e-12 * std::max(scale, 1e-300))
        throw ValidationError("neutral_plane: degenerate in-plane rigidity for pair " +
                              std::to_string(pair));
    return table.blocks[0][1](p, p) / a0;
}

RigidityTable shift_rigidities(const RigidityTable& table, double h_shift) {
    // y3' = y3 - h: the moment weight shifts and the bending mode itself
    // becomes (old bending) - h (old membrane).
    RigidityTable out = table;
    const double h = h_shift;
    out.blocks[0][1] = table.blocks[0][1] - h * table.blocks[0][0];
    out.blocks[1][0] = table.blocks[1][0] - h * table.blocks[0][0];
    out.blocks[1][1] = table.blocks[1][1] - h * (table.blocks[0][1] + table.blocks[1][0]) +
                       h * h * table.blocks[0][0];
    for (int p = 0; p < 3; ++p)
        out.neutral_planes[std::size_t(p)] = table.neutral_planes[std::size_t(p)] - h;
    return out;
}

}  // namespace platecell
