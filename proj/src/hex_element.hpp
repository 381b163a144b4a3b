#pragma once

#include <array>
#include <cmath>

#include "platecell/materials.hpp"

// Trilinear 8-node hexahedron on an axis-aligned box, 2x2x2 Gauss
// quadrature, small-strain B-matrix with engineering shear rows.
namespace platecell::detail {

using Mat24 = Eigen::Matrix<double, 24, 24>;
using BMat = Eigen::Matrix<double, 6, 24>;
using Vec24 = Eigen::Matrix<double, 24, 1>;

// Reference corner signs in VTK hexahedron order.
inline constexpr std::array<std::array<double, 3>, 8> kCorner = {{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
}};

inline const std::array<std::array<double, 3>, 8>& gauss_points() {
    static const std::array<std::array<double, 3>, 8> pts = [] {
        std::array<std::array<double, 3>, 8> p{};
        const double g = 1.0 / std::sqrt(3.0);
        for (int a = 0; a < 8; ++a)
            p[std::size_t(a)] = {g * kCorner[std::size_t(a)][0], g * kCorner[std::size_t(a)][1],
                                 g * kCorner[std::size_t(a)][2]};
        return p;
    }();
    return pts;
}

/// B matrix at a reference point for an element of physical size `size`.
inline BMat strain_matrix(const std::array<double, 3>& ref, const Vec3& size) {
    BMat b = BMat::Zero();
    for (int a = 0; a < 8; ++a) {
        const auto& c = kCorner[std::size_t(a)];
        const double fx = 0.125 * c[0] * (1 + ref[1] * c[1]) * (1 + ref[2] * c[2]);
        const double fy = 0.125 * c[1] * (1 + ref[0] * c[0]) * (1 + ref[2] * c[2]);
        const double fz = 0.125 * c[2] * (1 + ref[0] * c[0]) * (1 + ref[1] * c[1]);
        const double dx = fx * 2.0 / size.x();
        const double dy = fy * 2.0 / size.y();
        const double dz = fz * 2.0 / size.z();
        const int col = 3 * a;
        b(0, col) = dx;
        b(1, col + 1) = dy;
        b(2, col + 2) = dz;
        b(3, col + 1) = dz;  // gamma_23
        b(3, col + 2) = dy;
        b(4, col) = dz;      // gamma_13
        b(4, col + 2) = dx;
        b(5, col) = dy;      // gamma_12
        b(5, col + 1) = dx;
    }
    return b;
}

inline Mat24 box_stiffness(const Vec3& size, const Mat6& c) {
    Mat24 ke = Mat24::Zero();
    const double w = size.prod() / 8.0;  // det J, unit Gauss weights
    for (const auto& gp : gauss_points()) {
        const BMat b = strain_matrix(gp, size);
        ke.noalias() += w * b.transpose() * c * b;
    }
    return ke;
}

}  // namespace platecell::detail
