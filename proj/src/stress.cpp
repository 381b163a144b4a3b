#include "platecell/stress.hpp"

#include <cmath>

#include "hex_element.hpp"
#include "platecell/errors.hpp"

namespace platecell {

StressField local_stress(const HexMesh& mesh, const std::vector<ElasticityTensor>& phase_tensors,
                         const CorrectorField& corrector) {
    if (corrector.displacement.rows() != mesh.node_count())
        throw ValidationError("local_stress: corrector does not match the mesh");
    if (phase_tensors.size() != mesh.phase_names.size())
        throw ValidationError("local_stress: one elasticity tensor per mesh phase required");

    StressField field;
    field.mode = corrector.mode;
    field.element_stress.setZero(mesh.element_count(), 6);
    field.is_void.assign(std::size_t(mesh.element_count()), 0);

    detail::Vec24 ze;
    for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
        if (mesh.is_void(e)) {
            field.is_void[std::size_t(e)] = 1;
            continue;
        }
        const auto nodes = mesh.element_nodes(e);
        for (int a = 0; a < 8; ++a)
            ze.segment<3>(3 * a) = corrector.displacement.row(nodes[std::size_t(a)]).transpose();
        const Vec3 size = mesh.element_size(e);
        const Mat6& c = phase_tensors[std::size_t(mesh.phase[std::size_t(e)])].matrix();
        Vec6 s = Vec6::Zero();
        for (const auto& gp : detail::gauss_points())
            s += c * (detail::strain_matrix(gp, size) * ze);
        field.element_stress.row(e) = (s / 8.0).transpose();
    }
    return field;
}

StressField local_stress(const HexMesh& mesh,
                         const std::map<std::string, ElasticityTensor>& materials,
                         const CorrectorField& corrector) {
    return local_stress(mesh, phase_tensors_for(mesh, materials), corrector);
}

double von_mises(const Vec6& s) {
    const double d = 0.5 * ((s[0] - s[1]) * (s[0] - s[1]) + (s[1] - s[2]) * (s[1] - s[2]) +
                            (s[2] - s[0]) * (s[2] - s[0])) +
                     3.0 * (s[3] * s[3] + s[4] * s[4] + s[5] * s[5]);
    return std::sqrt(d);
}

Eigen::VectorXd von_mises(const StressField& field) {
    Eigen::VectorXd vm(field.element_stress.rows());
    for (Eigen::Index e = 0; e < field.element_stress.rows(); ++e)
        vm[e] = von_mises(field.element_stress.row(e).transpose());
    return vm;
}

StressField superpose_stress(const std::vector<std::pair<const StressField*, double>>& terms) {
    if (terms.empty()) throw ValidationError("superpose_stress: no terms");
    StressField out;
    out.mode = terms.front().first->mode;
    out.element_stress.setZero(terms.front().first->element_stress.rows(), 6);
    out.is_void = terms.front().first->is_void;
    for (const auto& [field, weight] : terms) {
        if (field->element_stress.rows() != out.element_stress.rows() ||
            field->is_void != out.is_void)
            throw ValidationError("superpose_stress: fields live on different meshes");
        out.element_stress += weight * field->element_stress;
    }
    return out;
}

StressField combined_mode_stress(const StressField& tension, const StressField& bending,
                                 double epsilon) {
    if (tension.mode.pair != bending.mode.pair || tension.mode.nu != 0 || bending.mode.nu != 1)
        throw ValidationError("combined_mode_stress: expected the tension and bending fields "
                              "of one index pair");
    return superpose_stress({{&tension, 1.0}, {&bending, epsilon}});
}

}  // namespace platecell
