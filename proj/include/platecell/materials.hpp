#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace platecell {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Isotropic constituent. Moduli in GPa, lengths in fast-variable units.
struct IsotropicMaterial {
    std::string name;
    double youngs_modulus = 0.0;
    double poisson_ratio = 0.0;

    std::vector<std::string> validate() const;
};

/// Rank-4 stiffness a_ijkl with minor and major symmetries, stored as a
/// symmetric 6x6 matrix in engineering (Voigt) pairing
///   (11, 22, 33, 23, 13, 12),
/// acting on engineering strains (shear components doubled). Under this
/// pairing a_ijkl equals the matrix entry (voigt(i,j), voigt(k,l)) with no
/// extra factors.
class ElasticityTensor {
  public:
    ElasticityTensor() : c_(Mat6::Zero()) {}
    explicit ElasticityTensor(const Mat6& c);

    /// Voigt index of an (i, j) pair, indices in {0, 1, 2}.
    static int voigt(int i, int j);

    /// a_ijkl accessor, indices in {0, 1, 2}.
    double component(int i, int j, int k, int l) const {
        return c_(voigt(i, j), voigt(k, l));
    }

    const Mat6& matrix() const { return c_; }

    /// Stress from an engineering strain vector.
    Vec6 stress(const Vec6& eng_strain) const { return c_ * eng_strain; }

    bool is_symmetric(double tol = 1e-12) const;

    /// Positive definiteness on symmetric strains (smallest eigenvalue > 0).
    bool is_positive_definite() const;
    double min_eigenvalue() const;

  private:
    Mat6 c_;
};

/// Isotropic stiffness from (E, nu) via the Lame parameters
/// lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu)).
/// Throws std::invalid_argument for invalid moduli (including nu >= 0.5).
ElasticityTensor iso_to_tensor(const IsotropicMaterial& m);

}  // namespace platecell
