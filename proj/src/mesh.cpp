#include "platecell/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "platecell/errors.hpp"

namespace platecell {

std::array<std::int64_t, 8> HexMesh::element_nodes(std::int64_t e) const {
    const auto g = element_grid(e);
    const int i = g[0], j = g[1], k = g[2];
    return {node_id(i, j, k),         node_id(i + 1, j, k),
            node_id(i + 1, j + 1, k), node_id(i, j + 1, k),
            node_id(i, j, k + 1),     node_id(i + 1, j, k + 1),
            node_id(i + 1, j + 1, k + 1), node_id(i, j + 1, k + 1)};
}

Vec3 HexMesh::element_size(std::int64_t e) const {
    const auto g = element_grid(e);
    return {x_planes[g[0] + 1] - x_planes[g[0]], y_planes[g[1] + 1] - y_planes[g[1]],
            z_planes[g[2] + 1] - z_planes[g[2]]};
}

Vec3 HexMesh::element_center(std::int64_t e) const {
    const auto g = element_grid(e);
    return {0.5 * (x_planes[g[0]] + x_planes[g[0] + 1]),
            0.5 * (y_planes[g[1]] + y_planes[g[1] + 1]),
            0.5 * (z_planes[g[2]] + z_planes[g[2] + 1])};
}

double HexMesh::volume() const {
    double v = 0.0;
    for (std::int64_t e = 0; e < element_count(); ++e) v += element_volume(e);
    return v;
}

double HexMesh::tagged_volume_fraction(int inclusion_index) const {
    double v = 0.0;
    for (std::int64_t e = 0; e < element_count(); ++e) {
        const int inc = inclusion_of[std::size_t(e)];
        if (inc < 0) continue;
        if (inclusion_index >= 0 && inc != inclusion_index) continue;
        v += element_volume(e);
    }
    return v / volume();
}

namespace {

std::vector<double> uniform_planes(double lo, double hi, int n) {
    std::vector<double> planes(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        planes[static_cast<std::size_t>(i)] = lo + (hi - lo) * double(i) / double(n);
    planes.back() = hi;
    return planes;
}

// z planes stratified at inclusion extremal depths and slab boundaries,
// each strip filled to at least the requested density.
std::vector<double> stratified_z_planes(const CellSpec& spec, int n3, double z_target) {
    const double h = spec.half_thickness;
    std::vector<double> breaks{-h, h};
    for (const InclusionLayer& inc : spec.inclusions) {
        breaks.push_back(inc.center_y3 - inc.radius);
        breaks.push_back(inc.center_y3 + inc.radius);
    }
    // structural-layer boundaries (midpoints between adjacent layers), so
    // that zone and slab edges always land on grid planes; virtual
    // midpoints beyond the outermost layers keep the outer covers meshed
    // like interior gaps, which zone comparisons across plates rely on
    const std::vector<double> centers = layer_centers(spec);
    for (std::size_t c = 0; c + 1 < centers.size(); ++c)
        breaks.push_back(0.5 * (centers[c] + centers[c + 1]));
    const double pitch = structural_pitch(spec);
    if (pitch > 0.0) {
        const double above = centers.back() + 0.5 * pitch;
        const double below = centers.front() - 0.5 * pitch;
        if (above < h - 1e-10) breaks.push_back(above);
        if (below > -h + 1e-10) breaks.push_back(below);
    }
    for (const MaterialSlab& s : spec.slabs) {
        breaks.push_back(s.z0);
        breaks.push_back(s.z1);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                 breaks.end());
    if (breaks.front() < -h) breaks.front() = -h;
    if (breaks.back() > h) breaks.back() = h;

    const double target = z_target > 0.0 ? z_target : 2.0 * h / double(n3);
    std::vector<double> planes{breaks.front()};
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double len = breaks[s + 1] - breaks[s];
        const int m = std::max(1, int(std::ceil(len / target - 1e-9)));
        for (int i = 1; i <= m; ++i) planes.push_back(breaks[s] + len * double(i) / double(m));
        planes.back() = breaks[s + 1];
    }
    return planes;
}

}  // namespace

HexMesh generate_mesh(const CellSpec& spec, std::array<int, 3> resolution, double z_target) {
    require_valid_cell(spec);
    for (int n : resolution)
        if (n < 2) throw ValidationError("generate_mesh: resolution must be >= 2 per axis");

    HexMesh mesh;
    mesh.h1 = spec.h1;
    mesh.h2 = spec.h2;
    mesh.half_thickness = spec.half_thickness;
    mesh.x_planes = uniform_planes(0.0, spec.h1, resolution[0]);
    mesh.y_planes = uniform_planes(0.0, spec.h2, resolution[1]);
    mesh.z_planes = stratified_z_planes(spec, resolution[2], z_target);
    mesh.resolution = {resolution[0], resolution[1], int(mesh.z_planes.size()) - 1};

    // Phase name table: matrix first, then slab and fiber materials.
    mesh.phase_names.push_back(spec.matrix_material);
    auto phase_id = [&mesh](const std::string& name) {
        for (std::size_t p = 0; p < mesh.phase_names.size(); ++p)
            if (mesh.phase_names[p] == name) return int(p);
        mesh.phase_names.push_back(name);
        return int(mesh.phase_names.size()) - 1;
    };
    for (const MaterialSlab& s : spec.slabs) phase_id(s.material);
    for (const InclusionLayer& inc : spec.inclusions)
        if (inc.kind == InclusionKind::fiber) phase_id(inc.material);

    const std::int64_t n_elems = mesh.element_count();
    mesh.phase.assign(std::size_t(n_elems), 0);
    mesh.inclusion_of.assign(std::size_t(n_elems), -1);
    std::vector<std::int64_t> per_inclusion(spec.inclusions.size(), 0);

    std::vector<int> votes(spec.inclusions.size() + 1, 0);
    for (std::int64_t e = 0; e < n_elems; ++e) {
        const Vec3 c = mesh.element_center(e);
        const Vec3 s = mesh.element_size(e);
        std::fill(votes.begin(), votes.end(), 0);
        for (int a = -1; a <= 1; a += 2)
            for (int b = -1; b <= 1; b += 2)
                for (int d = -1; d <= 1; d += 2) {
                    const Vec3 p{c.x() + 0.25 * a * s.x(), c.y() + 0.25 * b * s.y(),
                                 c.z() + 0.25 * d * s.z()};
                    const int idx = inclusion_at(spec, p);
                    ++votes[std::size_t(idx + 1)];
                }
        int winner = -1, best = 0;
        for (std::size_t idx = 0; idx < spec.inclusions.size(); ++idx)
            if (votes[idx + 1] > best) {
                best = votes[idx + 1];
                winner = int(idx);
            }
        if (winner >= 0 && best >= 5) {
            const InclusionLayer& inc = spec.inclusions[std::size_t(winner)];
            mesh.inclusion_of[std::size_t(e)] = winner;
            mesh.phase[std::size_t(e)] =
                inc.kind == InclusionKind::channel ? -1 : phase_id(inc.material);
            ++per_inclusion[std::size_t(winner)];
        } else {
            // Background material decided by the element center; slab
            // boundaries lie on grid planes, so an element is never split.
            int pid = 0;
            for (const MaterialSlab& slab : spec.slabs)
                if (c.z() >= slab.z0 && c.z() < slab.z1) {
                    pid = phase_id(slab.material);
                    break;
                }
            mesh.phase[std::size_t(e)] = pid;
        }
    }

    for (std::size_t idx = 0; idx < per_inclusion.size(); ++idx)
        if (per_inclusion[idx] == 0)
            throw ValidationError("generate_mesh: resolution too coarse to resolve inclusion " +
                                  std::to_string(idx));
    return mesh;
}

PeriodicPairs periodic_pairs(const HexMesh& mesh, int axis) {
    if (axis != 1 && axis != 2) throw ValidationError("periodic_pairs: axis must be 1 or 2");
    PeriodicPairs result;
    result.axis = axis;
    const int n1 = mesh.n1(), n2 = mesh.n2(), n3 = mesh.n3();
    if (axis == 1) {
        result.pairs.reserve(std::size_t(n2 + 1) * (n3 + 1));
        for (int k = 0; k <= n3; ++k)
            for (int j = 0; j <= n2; ++j)
                result.pairs.emplace_back(mesh.node_id(0, j, k), mesh.node_id(n1, j, k));
    } else {
        result.pairs.reserve(std::size_t(n1 + 1) * (n3 + 1));
        for (int k = 0; k <= n3; ++k)
            for (int i = 0; i <= n1; ++i)
                result.pairs.emplace_back(mesh.node_id(i, 0, k), mesh.node_id(i, n2, k));
    }
    return result;
}

}  // namespace platecell
