#include "platecell/representative.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "platecell/errors.hpp"

namespace platecell {

CellSpec build_representative(const CellSpec& spec, RepresentativeAlignment align) {
    require_valid_cell(spec);
    if (!spec.slabs.empty())
        throw ValidationError("build_representative: defined for inclusion-layer stacks only");

    // Structural layers grouped by depth, top first.
    std::map<double, std::vector<InclusionLayer>, std::greater<double>> groups;
    for (const InclusionLayer& inc : spec.inclusions) {
        bool placed = false;
        for (auto& [center, group] : groups)
            if (std::abs(center - inc.center_y3) < 1e-12) {
                group.push_back(inc);
                placed = true;
                break;
            }
        if (!placed) groups[inc.center_y3].push_back(inc);
    }
    const std::size_t n = groups.size();
    if (n < 3) throw ValidationError("build_representative: fewer than 3 structural layers");
    const double pitch = structural_pitch(spec);
    if (pitch <= 0.0)
        throw ValidationError("build_representative: structural layers are not regularly spaced");

    std::size_t interior;  // 0-based from the top
    switch (align) {
        case RepresentativeAlignment::top: interior = 1; break;
        case RepresentativeAlignment::bottom: interior = n - 2; break;
        default: interior = n / 2; break;
    }

    std::vector<std::pair<double, const std::vector<InclusionLayer>*>> ordered;
    for (const auto& [center, group] : groups) ordered.emplace_back(center, &group);

    const double d_top = spec.half_thickness - ordered.front().first;
    const double d_bot = spec.half_thickness + ordered.back().first;
    CellSpec rep;
    rep.h1 = spec.h1;
    rep.h2 = spec.h2;
    rep.matrix_material = spec.matrix_material;
    rep.half_thickness = 0.5 * (d_top + d_bot) + pitch;

    const double c_top = rep.half_thickness - d_top;
    const std::size_t picks[3] = {0, interior, n - 1};
    for (int layer = 0; layer < 3; ++layer) {
        const auto& [center, group] = ordered[picks[std::size_t(layer)]];
        const double shift = (c_top - layer * pitch) - center;
        for (InclusionLayer inc : *group) {
            inc.center_y3 += shift;
            rep.inclusions.push_back(inc);
        }
    }
    require_valid_cell(rep);
    return rep;
}

namespace {

struct ZoneSlabs {
    int first = 0, count = 0;
};

ZoneSlabs zone_slabs(const HexMesh& mesh, std::pair<double, double> zone) {
    const double eps = 1e-9 * mesh.half_thickness;
    if (zone.second <= zone.first)
        throw ValidationError("compare_sss: empty zone");
    int first = -1, last = -1;
    for (int k = 0; k < mesh.n3(); ++k) {
        if (mesh.z_planes[std::size_t(k)] >= zone.first - eps &&
            mesh.z_planes[std::size_t(k) + 1] <= zone.second + eps) {
            if (first < 0) first = k;
            last = k;
        }
    }
    if (first < 0 || std::abs(mesh.z_planes[std::size_t(first)] - zone.first) > 1e3 * eps ||
        std::abs(mesh.z_planes[std::size_t(last) + 1] - zone.second) > 1e3 * eps)
        throw ValidationError("compare_sss: zone does not contain whole element layers");
    return {first, last - first + 1};
}

}  // namespace

SimilarityReport compare_sss(const HexMesh& mesh_a, const StressField& field_a,
                             std::pair<double, double> zone_a, const HexMesh& mesh_b,
                             const StressField& field_b, std::pair<double, double> zone_b,
                             double threshold) {
    if (mesh_a.n1() != mesh_b.n1() || mesh_a.n2() != mesh_b.n2())
        throw ValidationError("compare_sss: incongruent in-plane discretizations");
    const ZoneSlabs sa = zone_slabs(mesh_a, zone_a);
    const ZoneSlabs sb = zone_slabs(mesh_b, zone_b);
    if (sa.count != sb.count)
        throw ValidationError("compare_sss: zones hold different slab counts");
    for (int k = 0; k < sa.count; ++k) {
        const double da = mesh_a.z_planes[std::size_t(sa.first + k + 1)] -
                          mesh_a.z_planes[std::size_t(sa.first + k)];
        const double db = mesh_b.z_planes[std::size_t(sb.first + k + 1)] -
                          mesh_b.z_planes[std::size_t(sb.first + k)];
        if (std::abs(da - db) > 1e-9 * std::max(da, db))
            throw ValidationError("compare_sss: incongruent zone discretizations");
    }

    const Eigen::VectorXd vm_a = von_mises(field_a);
    const Eigen::VectorXd vm_b = von_mises(field_b);

    double diff2 = 0.0, norm2_a = 0.0, norm2_b = 0.0, max_a = 0.0, max_b = 0.0;
    for (int k = 0; k < sa.count; ++k)
        for (int j = 0; j < mesh_a.n2(); ++j)
            for (int i = 0; i < mesh_a.n1(); ++i) {
                const std::int64_t ea = mesh_a.element_id(i, j, sa.first + k);
                const std::int64_t eb = mesh_b.element_id(i, j, sb.first + k);
                const bool matrix_a =
                    !mesh_a.is_void(ea) && mesh_a.inclusion_of[std::size_t(ea)] < 0;
                const bool matrix_b =
                    !mesh_b.is_void(eb) && mesh_b.inclusion_of[std::size_t(eb)] < 0;
                if (!matrix_a || !matrix_b) continue;
                const double a = vm_a[ea], b = vm_b[eb];
                diff2 += (a - b) * (a - b);
                norm2_a += a * a;
                norm2_b += b * b;
                max_a = std::max(max_a, a);
                max_b = std::max(max_b, b);
            }

    SimilarityReport report;
    report.zone_a = zone_a;
    report.zone_b = zone_b;
    const double denom = std::sqrt(std::max(norm2_a, norm2_b));
    report.rel_l2 = denom > 0.0 ? std::sqrt(diff2) / denom : 0.0;
    const double max_denom = std::max(max_a, max_b);
    report.rel_max = max_denom > 0.0 ? std::abs(max_a - max_b) / max_denom : 0.0;
    report.informative = report.rel_l2 <= threshold;
    return report;
}

std::vector<LayerVerdict> classify_informative(
    const CellSpec& rep_spec, const HexMesh& rep_mesh, const StressField& rep_field,
    const CellSpec& orig_spec, const HexMesh& orig_mesh, const StressField& orig_field,
    MacroMode mode, RepresentativeAlignment align, double threshold) {
    const auto rep_regions = structural_layer_regions(rep_spec);   // ascending
    const auto orig_regions = structural_layer_regions(orig_spec);
    if (rep_regions.size() != 3)
        throw ValidationError("classify_informative: representative must have 3 structural layers");
    const std::size_t n = orig_regions.size();
    if (n < 3) throw ValidationError("classify_informative: original has fewer than 3 layers");

    std::vector<LayerVerdict> verdicts;
    for (int layer = 1; layer <= 3; ++layer) {
        const auto rep_zone = rep_regions[std::size_t(3 - layer)];
        std::pair<double, double> orig_zone;
        if (mode.nu == 0) {
            // Tension: each layer is compared against the zone it replicates.
            std::size_t interior;  // 0-based from the top
            switch (align) {
                case RepresentativeAlignment::top: interior = 1; break;
                case RepresentativeAlignment::bottom: interior = n - 2; break;
                default: interior = n / 2; break;
            }
            const std::size_t pick = layer == 1 ? n - 1 : (layer == 3 ? 0 : n - 1 - interior);
            orig_zone = orig_regions[pick];
        } else {
            // Bending: zones at equal depth below the shared surface.
            const double shift = align == RepresentativeAlignment::bottom
                                     ? rep_spec.half_thickness - orig_spec.half_thickness
                                     : orig_spec.half_thickness - rep_spec.half_thickness;
            orig_zone = {rep_zone.first + shift, rep_zone.second + shift};
        }
        const SimilarityReport r = compare_sss(rep_mesh, rep_field, rep_zone, orig_mesh,
                                               orig_field, orig_zone, threshold);
        LayerVerdict v;
        v.layer = layer;
        v.zone_rep = rep_zone;
        v.zone_orig = orig_zone;
        v.rel_l2 = r.rel_l2;
        v.rel_max = r.rel_max;
        v.informative = r.informative;
        verdicts.push_back(v);
    }
    return verdicts;
}

}  // namespace platecell
