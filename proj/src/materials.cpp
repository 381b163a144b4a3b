#include "platecell/materials.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace platecell {

std::vector<std::string> IsotropicMaterial::validate() const {
    std::vector<std::string> errors;
    if (!(youngs_modulus > 0.0))
        errors.push_back("material '" + name + "': youngs_modulus must be > 0");
    if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5))
        errors.push_back("material '" + name + "': poisson_ratio must lie in (-1, 0.5)");
    return errors;
}

ElasticityTensor::ElasticityTensor(const Mat6& c) : c_(c) {
    if (!is_symmetric(1e-10))
        throw std::invalid_argument("elasticity tensor: 6x6 matrix must be symmetric");
}

int ElasticityTensor::voigt(int i, int j) {
    if (i == j) return i;
    const int s = i + j;       // 0+1 -> 12, 0+2 -> 13, 1+2 -> 23
    if (s == 3) return 3;      // (1,2) / (2,1)
    if (s == 2) return 4;      // (0,2) / (2,0)
    return 5;                  // (0,1) / (1,0)
}

bool ElasticityTensor::is_symmetric(double tol) const {
    return (c_ - c_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double ElasticityTensor::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat6> es(c_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool ElasticityTensor::is_positive_definite() const { return min_eigenvalue() > 0.0; }

ElasticityTensor iso_to_tensor(const IsotropicMaterial& m) {
    auto errors = m.validate();
    if (!errors.empty()) throw std::invalid_argument(errors.front());

    const double E = m.youngs_modulus;
    const double nu = m.poisson_ratio;
    const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    const double mu = E / (2.0 * (1.0 + nu));

    Mat6 c = Mat6::Zero();
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) c(a, b) = lambda;
        c(a, a) = lambda + 2.0 * mu;
        c(3 + a, 3 + a) = mu;  // engineering shear: sigma_ij = mu * gamma_ij
    }
    return ElasticityTensor(c);
}

}  // namespace platecell
