#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "platecell/materials.hpp"

using namespace platecell;

TEST_CASE("isotropic tensor from E and nu") {
    SUBCASE("E=1, nu=0") {
        const ElasticityTensor t = iso_to_tensor({"m", 1.0, 0.0});
        CHECK(t.component(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(t.component(0, 0, 1, 1) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(t.component(0, 1, 0, 1) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("matrix material") {
        const double lambda = oracles::lame_lambda(2.0, 0.36);
        const double mu = oracles::lame_mu(2.0, 0.36);
        CHECK(lambda == doctest::Approx(1.89076).epsilon(1e-5));
        CHECK(mu == doctest::Approx(0.73529).epsilon(1e-5));
        const ElasticityTensor t = iso_to_tensor({"b", 2.0, 0.36});
        CHECK(t.component(0, 0, 0, 0) == doctest::Approx(lambda + 2 * mu).epsilon(1e-14));
        CHECK(t.component(0, 0, 0, 0) == doctest::Approx(3.36134).epsilon(1e-5));
        CHECK(t.component(0, 0, 1, 1) == doctest::Approx(lambda).epsilon(1e-14));
    }
    SUBCASE("fiber material") {
        const ElasticityTensor t = iso_to_tensor({"f", 170.0, 0.3});
        CHECK(oracles::lame_lambda(170.0, 0.3) == doctest::Approx(98.0769).epsilon(1e-5));
        CHECK(oracles::lame_mu(170.0, 0.3) == doctest::Approx(65.3846).epsilon(1e-5));
        CHECK(t.component(0, 0, 0, 0) == doctest::Approx(228.846).epsilon(1e-5));
    }
}

TEST_CASE("invalid moduli rejected") {
    CHECK_THROWS_AS(iso_to_tensor({"m", 1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(iso_to_tensor({"m", 1.0, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(iso_to_tensor({"m", 0.0, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(iso_to_tensor({"m", -2.0, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(iso_to_tensor({"m", 1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("tensor invariants hold across the admissible range") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> e_dist(0.01, 500.0);
    std::uniform_real_distribution<double> nu_dist(-0.99, 0.49);
    for (int trial = 0; trial < 200; ++trial) {
        const ElasticityTensor t = iso_to_tensor({"m", e_dist(rng), nu_dist(rng)});
        CHECK(t.is_symmetric());
        CHECK(t.is_positive_definite());
        // minor symmetry through the accessor
        CHECK(t.component(0, 1, 2, 2) == t.component(1, 0, 2, 2));
        CHECK(t.component(2, 2, 0, 1) == t.component(0, 1, 2, 2));
    }
}

TEST_CASE("voigt pairing") {
    CHECK(ElasticityTensor::voigt(0, 0) == 0);
    CHECK(ElasticityTensor::voigt(1, 1) == 1);
    CHECK(ElasticityTensor::voigt(2, 2) == 2);
    CHECK(ElasticityTensor::voigt(1, 2) == 3);
    CHECK(ElasticityTensor::voigt(2, 1) == 3);
    CHECK(ElasticityTensor::voigt(0, 2) == 4);
    CHECK(ElasticityTensor::voigt(0, 1) == 5);
}

TEST_CASE("asymmetric matrix rejected") {
    Mat6 c = Mat6::Identity();
    c(0, 1) = 0.5;
    CHECK_THROWS_AS(ElasticityTensor{c}, std::invalid_argument);
}
