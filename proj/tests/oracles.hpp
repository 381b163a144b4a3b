#pragma once

// Test-side oracles, independent of the implementation paths they check:
// Lame relations, plane-stress closed forms, and classical-laminate 1D
// through-thickness integration.

#include <Eigen/Dense>
#include <vector>

namespace oracles {

inline double lame_lambda(double E, double nu) {
    return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
}
inline double lame_mu(double E, double nu) { return E / (2.0 * (1.0 + nu)); }

/// Plane-stress reduced stiffness in (11, 22, 12) pairing, engineering
/// shear on the 12 slot.
inline Eigen::Matrix3d reduced_stiffness(double E, double nu) {
    Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
    const double f = E / (1.0 - nu * nu);
    q(0, 0) = q(1, 1) = f;
    q(0, 1) = q(1, 0) = nu * f;
    q(2, 2) = E / (2.0 * (1.0 + nu));
    return q;
}

struct LaminateLayer {
    double z0, z1, E, nu;
};

/// Classical laminate A/B/D by exact per-layer integration.
struct CltTable {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
    double neutral_axis(int pair_index) const { return B(pair_index, pair_index) / A(pair_index, pair_index); }
};

inline CltTable clt(const std::vector<LaminateLayer>& layers) {
    CltTable t;
    for (const LaminateLayer& l : layers) {
        const Eigen::Matrix3d q = reduced_stiffness(l.E, l.nu);
        t.A += q * (l.z1 - l.z0);
        t.B += q * (l.z1 * l.z1 - l.z0 * l.z0) / 2.0;
        t.D += q * (l.z1 * l.z1 * l.z1 - l.z0 * l.z0 * l.z0) / 3.0;
    }
    return t;
}

/// Uniform-extension stress of an isotropic plate under unit e11 with
/// e22 = 0 and free faces: sigma11 = E/(1-nu^2), sigma22 = nu*sigma11.
inline void plane_stress_uniaxial(double E, double nu, double& s11, double& s22) {
    s11 = E / (1.0 - nu * nu);
    s22 = nu * s11;
}

/// Transverse contraction of the same state: e33 = -nu/(1-nu) * e11.
inline double plane_stress_e33(double nu) { return -nu / (1.0 - nu); }

}  // namespace oracles
