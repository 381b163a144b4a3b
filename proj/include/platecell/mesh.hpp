#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "platecell/cell.hpp"

namespace platecell {

/// Structured hexahedral mesh of a periodicity cell. Nodes form a
/// tensor-product grid over [0,h1] x [0,h2] x [-h,h]; node and element ids
/// run i-fastest, then j, then k. Void (channel) elements stay in the
/// arrays but are excluded from assembly.
class HexMesh {
  public:
    std::array<int, 3> resolution{0, 0, 0};  // element counts per axis
    std::vector<double> x_planes, y_planes, z_planes;
    std::vector<int> phase;          // per element: index into phase_names, -1 = void
    std::vector<int> inclusion_of;   // per element: inclusion index, -1 = background
    std::vector<std::string> phase_names;  // phase_names[0] is the matrix material
    double h1 = 0.0, h2 = 0.0, half_thickness = 0.0;

    int n1() const { return resolution[0]; }
    int n2() const { return resolution[1]; }
    int n3() const { return resolution[2]; }

    std::int64_t node_count() const {
        return std::int64_t(n1() + 1) * (n2() + 1) * (n3() + 1);
    }
    std::int64_t element_count() const { return std::int64_t(n1()) * n2() * n3(); }

    std::int64_t node_id(int i, int j, int k) const {
        return (std::int64_t(k) * (n2() + 1) + j) * (n1() + 1) + i;
    }
    std::array<int, 3> node_grid(std::int64_t n) const {
        const int sx = n1() + 1, sy = n2() + 1;
        return {int(n % sx), int((n / sx) % sy), int(n / (std::int64_t(sx) * sy))};
    }
    Vec3 node_position(std::int64_t n) const {
        const auto g = node_grid(n);
        return {x_planes[g[0]], y_planes[g[1]], z_planes[g[2]]};
    }

    std::int64_t element_id(int i, int j, int k) const {
        return (std::int64_t(k) * n2() + j) * n1() + i;
    }
    std::array<int, 3> element_grid(std::int64_t e) const {
        return {int(e % n1()), int((e / n1()) % n2()), int(e / (std::int64_t(n1()) * n2()))};
    }
    /// Node ids of an element's 8 corners in VTK hexahedron order.
    std::array<std::int64_t, 8> element_nodes(std::int64_t e) const;

    Vec3 element_size(std::int64_t e) const;
    Vec3 element_center(std::int64_t e) const;
    double element_volume(std::int64_t e) const {
        const Vec3 s = element_size(e);
        return s.x() * s.y() * s.z();
    }

    bool is_void(std::int64_t e) const { return phase[std::size_t(e)] < 0; }

    double volume() const;  // all elements, voids included

    /// Tagged volume fraction of a given inclusion index (-1 = all inclusions).
    double tagged_volume_fraction(int inclusion_index = -1) const;
};

struct PeriodicPairs {
    int axis = 1;  // 1 or 2
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (master, slave)
};

/// Structured mesh with per-element phase tags. The requested resolution is
/// a lower bound: the z grid is stratified so that planes land exactly on
/// inclusion extremal depths and slab boundaries, each strip subdivided to
/// at least the requested density (a homogeneous cell meshes to exactly n3
/// layers). Phase tags come from a 2x2x2 centroid subsample majority vote
/// (an inclusion claims an element at five or more of eight samples). z_target, when positive, overrides the
/// stratification target 2h/n3 — passing one cell's target to another
/// makes equal-length strips mesh congruently.
HexMesh generate_mesh(const CellSpec& spec, std::array<int, 3> resolution, double z_target = 0.0);

/// All (master, slave) boundary node pairs on the two opposite faces of the
/// given in-plane axis, matched by grid index.
PeriodicPairs periodic_pairs(const HexMesh& mesh, int axis);

}  // namespace platecell
