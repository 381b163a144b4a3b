#include "platecell/profile.hpp"

#include <cmath>

#include "platecell/errors.hpp"

namespace platecell {

double default_comparison_pitch(const CellSpec& spec) {
    const double repeat = stack_repeat_pitch(spec);
    return repeat > 0.0 ? repeat : spec.half_thickness;
}

namespace {

// In-plane von Mises pattern of one slab, background (matrix) phase only.
// mask[i] is true where the value is defined.
struct SlabPattern {
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
};

SlabPattern slab_pattern(const HexMesh& mesh, const Eigen::VectorXd& vm, int k) {
    SlabPattern p;
    const std::size_t n_inplane = std::size_t(mesh.n1()) * mesh.n2();
    p.values.assign(n_inplane, 0.0);
    p.mask.assign(n_inplane, 0);
    for (int j = 0; j < mesh.n2(); ++j)
        for (int i = 0; i < mesh.n1(); ++i) {
            const std::int64_t e = mesh.element_id(i, j, k);
            if (mesh.is_void(e) || mesh.inclusion_of[std::size_t(e)] >= 0) continue;
            const std::size_t flat = std::size_t(j) * mesh.n1() + i;
            p.values[flat] = vm[e];
            p.mask[flat] = 1;
        }
    return p;
}

// Relative L2 difference of two in-plane patterns with their means removed,
// over the common mask, normalized by the larger uncentered norm.
double centered_deviation(const SlabPattern& a, const SlabPattern& b) {
    double sum_a = 0.0, sum_b = 0.0, norm2_a = 0.0, norm2_b = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (!a.mask[i] || !b.mask[i]) continue;
        sum_a += a.values[i];
        sum_b += b.values[i];
        norm2_a += a.values[i] * a.values[i];
        norm2_b += b.values[i] * b.values[i];
        ++n;
    }
    if (n == 0) return 0.0;
    const double mean_a = sum_a / double(n), mean_b = sum_b / double(n);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (!a.mask[i] || !b.mask[i]) continue;
        const double d = (a.values[i] - mean_a) - (b.values[i] - mean_b);
        diff2 += d * d;
    }
    const double denom = std::sqrt(std::max(norm2_a, norm2_b));
    return denom > 0.0 ? std::sqrt(diff2) / denom : 0.0;
}

}  // namespace

LayerProfile layer_profile(const HexMesh& mesh, const StressField& field, double pitch) {
    if (field.element_stress.rows() != mesh.element_count())
        throw ValidationError("layer_profile: field does not match the mesh");
    const Eigen::VectorXd vm = von_mises(field);

    LayerProfile profile;
    profile.pitch = pitch;
    const int n3 = mesh.n3();
    profile.slabs.resize(std::size_t(n3));

    std::vector<SlabPattern> patterns(static_cast<std::size_t>(n3));
    for (int k = 0; k < n3; ++k) {
        SlabStats& s = profile.slabs[std::size_t(k)];
        s.z0 = mesh.z_planes[std::size_t(k)];
        s.z1 = mesh.z_planes[std::size_t(k) + 1];
        patterns[std::size_t(k)] = slab_pattern(mesh, vm, k);

        double msum = 0.0, isum = 0.0;
        std::int64_t mn = 0, in = 0;
        for (int j = 0; j < mesh.n2(); ++j)
            for (int i = 0; i < mesh.n1(); ++i) {
                const std::int64_t e = mesh.element_id(i, j, k);
                if (mesh.is_void(e)) continue;
                if (mesh.inclusion_of[std::size_t(e)] >= 0) {
                    isum += vm[e];
                    s.inclusion_max = std::max(s.inclusion_max, vm[e]);
                    ++in;
                } else {
                    msum += vm[e];
                    s.matrix_max = std::max(s.matrix_max, vm[e]);
                    ++mn;
                }
            }
        if (mn > 0) s.matrix_mean = msum / double(mn);
        if (in > 0) s.inclusion_mean = isum / double(in);
    }

    if (pitch > 0.0) {
        for (int k = 0; k < n3; ++k) {
            SlabStats& s = profile.slabs[std::size_t(k)];
            const double center = 0.5 * (s.z0 + s.z1);
            // "deeper" means toward the midplane.
            const double partner = center >= 0.0 ? center - pitch : center + pitch;
            int kp = -1;
            for (int k2 = 0; k2 < n3; ++k2)
                if (partner >= profile.slabs[std::size_t(k2)].z0 &&
                    partner < profile.slabs[std::size_t(k2)].z1) {
                    kp = k2;
                    break;
                }
            if (kp < 0) continue;  // no deeper slab
            s.periodicity_deviation =
                centered_deviation(patterns[std::size_t(k)], patterns[std::size_t(kp)]);
        }
    }
    return profile;
}

BoundaryLayerThickness boundary_layer_thickness(const LayerProfile& profile, double pitch_s,
                                                double threshold) {
    if (!(threshold > 0.0)) throw ValidationError("boundary_layer_thickness: threshold must be > 0");
    BoundaryLayerThickness out;
    if (profile.slabs.empty()) return out;
    const double top_surface = profile.slabs.back().z1;
    const double bottom_surface = profile.slabs.front().z0;

    for (auto it = profile.slabs.rbegin(); it != profile.slabs.rend(); ++it) {
        if (it->periodicity_deviation <= threshold) break;
        out.top = top_surface - it->z0;
    }
    for (const SlabStats& s : profile.slabs) {
        if (s.periodicity_deviation <= threshold) break;
        out.bottom = s.z1 - bottom_surface;
    }
    if (pitch_s > 0.0) {
        out.top_pitches = out.top / pitch_s;
        out.bottom_pitches = out.bottom / pitch_s;
    }
    return out;
}

SkinCoreDecomposition skin_core_decompose(const CellSpec& spec, double pitch_s) {
    const auto regions = structural_layer_regions(spec);
    if (regions.size() < 3)
        throw ValidationError("skin_core_decompose: fewer than 3 structural layers, no core exists");
    SkinCoreDecomposition d;
    d.bottom_skin = regions.front();
    d.top_skin = regions.back();
    d.core = {regions.front().second, regions.back().first};
    d.top_thickness = d.top_skin.second - d.top_skin.first;
    d.bottom_thickness = d.bottom_skin.second - d.bottom_skin.first;
    const double s = pitch_s > 0.0 ? pitch_s : structural_pitch(spec);
    if (s > 0.0) {
        d.top_pitches = d.top_thickness / s;
        d.bottom_pitches = d.bottom_thickness / s;
    }
    return d;
}

}  // namespace platecell
