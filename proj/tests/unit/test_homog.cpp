#include <doctest.h>

#include "oracles.hpp"
#include "platecell/errors.hpp"
#include "platecell/rigidity.hpp"
#include "platecell/run.hpp"

using namespace platecell;

namespace {

CellSpec homogeneous_cell(double h1, double h2, double h) {
    CellSpec spec;
    spec.h1 = h1;
    spec.h2 = h2;
    spec.half_thickness = h;
    spec.matrix_material = "matrix";
    return spec;
}

std::map<std::string, ElasticityTensor> single_material(double E, double nu) {
    return {{"matrix", iso_to_tensor({"matrix", E, nu})}};
}

RigidityTable table_for(const CellSpec& spec, const std::map<std::string, ElasticityTensor>& mats,
                        std::array<int, 3> res, double tol = 1e-11) {
    const HexMesh mesh = generate_mesh(spec, res);
    const CellProblem problem(mesh, mats, {tol, 0});
    const auto all = MacroMode::all();
    const auto correctors = solve_modes(problem, {all.begin(), all.end()}, 1);
    return compute_rigidities(mesh, mats, correctors);
}

}  // namespace

TEST_CASE("local stress of the uniaxial oracle states") {
    SUBCASE("E=1, nu=0") {
        const HexMesh mesh = generate_mesh(homogeneous_cell(1, 1, 0.5), {3, 3, 3});
        const auto mats = single_material(1.0, 0.0);
        const StressField s =
            local_stress(mesh, mats, solve_pcp(mesh, mats, {11, 0, 1.0}, {1e-12, 0}));
        for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
            CHECK(s.element_stress(e, 0) == doctest::Approx(1.0).epsilon(1e-9));
            for (int c = 1; c < 6; ++c) CHECK(std::abs(s.element_stress(e, c)) < 1e-10);
        }
    }
    SUBCASE("E=2, nu=0.36") {
        const HexMesh mesh = generate_mesh(homogeneous_cell(1, 1, 0.5), {3, 3, 3});
        const auto mats = single_material(2.0, 0.36);
        const StressField s =
            local_stress(mesh, mats, solve_pcp(mesh, mats, {11, 0, 1.0}, {1e-12, 0}));
        double s11 = 0, s22 = 0;
        oracles::plane_stress_uniaxial(2.0, 0.36, s11, s22);
        CHECK(s11 == doctest::Approx(2.2978).epsilon(1e-4));
        CHECK(s22 == doctest::Approx(0.8272).epsilon(1e-4));
        for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
            CHECK(s.element_stress(e, 0) == doctest::Approx(s11).epsilon(1e-9));
            CHECK(s.element_stress(e, 1) == doctest::Approx(s22).epsilon(1e-9));
            CHECK(std::abs(s.element_stress(e, 2)) < 1e-9);
        }
    }
    SUBCASE("zero magnitude gives a zero field") {
        const HexMesh mesh = generate_mesh(homogeneous_cell(1, 1, 0.5), {2, 2, 2});
        const auto mats = single_material(2.0, 0.36);
        const StressField s = local_stress(mesh, mats, solve_pcp(mesh, mats, {11, 0, 0.0}));
        CHECK(s.element_stress.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("von Mises closed forms") {
    Vec6 s = Vec6::Zero();
    SUBCASE("hydrostatic vanishes") {
        s << 3.7, 3.7, 3.7, 0, 0, 0;
        CHECK(von_mises(s) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("uniaxial") {
        s << 2.5, 0, 0, 0, 0, 0;
        CHECK(von_mises(s) == doctest::Approx(2.5));
    }
    SUBCASE("pure shear") {
        s << 0, 0, 0, 0, 0, 1.7;
        CHECK(von_mises(s) == doctest::Approx(std::sqrt(3.0) * 1.7));
    }
}

TEST_CASE("stress superposition and the combined two-mode field") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(1, 1, 0.5), {2, 2, 3});
    const auto mats = single_material(2.0, 0.3);
    const CellProblem problem(mesh, mats, {1e-12, 0});
    const StressField s0 = local_stress(mesh, mats, problem.solve({11, 0, 1.0}));
    const StressField s1 = local_stress(mesh, mats, problem.solve({11, 1, 1.0}));
    const StressField combined = combined_mode_stress(s0, s1, 0.25);
    const StressField manual = superpose_stress({{&s0, 1.0}, {&s1, 0.25}});
    CHECK((combined.element_stress - manual.element_stress).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(combined_mode_stress(s1, s0, 0.25), ValidationError);
}

TEST_CASE("homogeneous plate rigidities match the laminate oracle") {
    // small in-plane periods keep the trilinear bending error negligible
    const CellSpec spec = homogeneous_cell(0.25, 0.25, 0.5);
    const RigidityTable t = table_for(spec, single_material(1.0, 0.0), {4, 4, 16});
    const auto clt = oracles::clt({{-0.5, 0.5, 1.0, 0.0}});

    CHECK(clt.A(0, 0) == doctest::Approx(1.0));
    CHECK(clt.D(0, 0) == doctest::Approx(1.0 / 12.0));
    // membrane block is exact for trilinear elements
    CHECK(t.blocks[0][0](0, 0) == doctest::Approx(clt.A(0, 0)).epsilon(1e-9));
    CHECK(t.blocks[0][0](2, 2) == doctest::Approx(clt.A(2, 2)).epsilon(1e-9));
    // through-thickness symmetry: no coupling
    CHECK(std::abs(t.blocks[0][1](0, 0)) < 1e-10);
    CHECK(std::abs(t.blocks[1][0](0, 0)) < 1e-10);
    // bending within the laminate-oracle tolerance
    CHECK(t.blocks[1][1](0, 0) == doctest::Approx(clt.D(0, 0)).epsilon(0.01));
}

TEST_CASE("two-layer stack reproduces the laminate oracle") {
    CellSpec spec = homogeneous_cell(0.25, 0.25, 0.5);
    spec.slabs = {{-0.5, 0.0, "soft"}, {0.0, 0.5, "stiff"}};
    std::map<std::string, ElasticityTensor> mats = {
        {"matrix", iso_to_tensor({"matrix", 1.0, 0.0})},
        {"soft", iso_to_tensor({"soft", 1.0, 0.0})},
        {"stiff", iso_to_tensor({"stiff", 2.0, 0.0})}};
    const RigidityTable t = table_for(spec, mats, {4, 4, 16});
    const auto clt = oracles::clt({{-0.5, 0.0, 1.0, 0.0}, {0.0, 0.5, 2.0, 0.0}});

    CHECK(clt.A(0, 0) == doctest::Approx(1.5));
    CHECK(clt.B(0, 0) == doctest::Approx(0.125));
    CHECK(clt.D(0, 0) == doctest::Approx(0.125));
    CHECK(t.blocks[0][0](0, 0) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(t.blocks[0][1](0, 0) == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(t.blocks[1][1](0, 0) == doctest::Approx(0.125).epsilon(0.01));

    SUBCASE("neutral plane sits toward the stiffer layer") {
        const double h = neutral_plane(t, 11);
        CHECK(h == doctest::Approx(0.125 / 1.5).epsilon(1e-6));
        CHECK(h > 0.0);  // stiff layer occupies z > 0
        CHECK(h == doctest::Approx(clt.neutral_axis(0)).epsilon(1e-6));
    }
    SUBCASE("shifting to the neutral plane zeroes the coupling") {
        const double h = neutral_plane(t, 11);
        const RigidityTable shifted = shift_rigidities(t, h);
        CHECK(std::abs(shifted.blocks[0][1](0, 0)) <
              1e-12 * std::abs(t.blocks[0][0](0, 0)));
    }
    SUBCASE("reciprocity") { CHECK(t.max_reciprocity_error() < 1e-8); }
    SUBCASE("rigidities do not depend on the in-plane resolution") {
        const RigidityTable t2 = table_for(spec, mats, {6, 3, 16});
        for (int nu = 0; nu < 2; ++nu)
            for (int mu = 0; mu < 2; ++mu) {
                const double scale =
                    t.blocks[std::size_t(nu)][std::size_t(mu)].cwiseAbs().maxCoeff();
                const double diff = (t.blocks[std::size_t(nu)][std::size_t(mu)] -
                                     t2.blocks[std::size_t(nu)][std::size_t(mu)])
                                        .cwiseAbs()
                                        .maxCoeff();
                if (nu == 0 && mu == 0) {
                    CHECK(diff < 1e-8 * scale);
                } else {
                    CHECK(diff < 1e-6 * scale);
                }
            }
    }
}

TEST_CASE("shift transform identities") {
    CellSpec spec = homogeneous_cell(0.25, 0.25, 0.5);
    spec.slabs = {{-0.5, 0.1, "soft"}, {0.1, 0.5, "stiff"}};
    std::map<std::string, ElasticityTensor> mats = {
        {"matrix", iso_to_tensor({"matrix", 1.0, 0.2})},
        {"soft", iso_to_tensor({"soft", 1.0, 0.2})},
        {"stiff", iso_to_tensor({"stiff", 5.0, 0.3})}};
    const RigidityTable t = table_for(spec, mats, {3, 3, 12});

    SUBCASE("zero shift is the identity") {
        const RigidityTable s = shift_rigidities(t, 0.0);
        for (int nu = 0; nu < 2; ++nu)
            for (int mu = 0; mu < 2; ++mu)
                CHECK((s.blocks[std::size_t(nu)][std::size_t(mu)] -
                       t.blocks[std::size_t(nu)][std::size_t(mu)])
                          .cwiseAbs()
                          .maxCoeff() == 0.0);
    }
    SUBCASE("shift there and back") {
        const RigidityTable s = shift_rigidities(shift_rigidities(t, 0.37), -0.37);
        for (int nu = 0; nu < 2; ++nu)
            for (int mu = 0; mu < 2; ++mu) {
                const double scale =
                    t.blocks[std::size_t(nu)][std::size_t(mu)].cwiseAbs().maxCoeff();
                CHECK((s.blocks[std::size_t(nu)][std::size_t(mu)] -
                       t.blocks[std::size_t(nu)][std::size_t(mu)])
                          .cwiseAbs()
                          .maxCoeff() < 1e-12 * scale);
            }
    }
    SUBCASE("offset coordinates recover through the parallel-axis identity") {
        // emulate a +0.2 coordinate offset algebraically, then undo it
        const RigidityTable offset = shift_rigidities(t, -0.2);
        const double h = neutral_plane(offset, 11);
        CHECK(h == doctest::Approx(neutral_plane(t, 11) + 0.2).epsilon(1e-9));
        const RigidityTable fixed = shift_rigidities(offset, h);
        CHECK(std::abs(fixed.blocks[0][1](0, 0)) < 1e-12 * offset.blocks[0][0](0, 0));
    }
    SUBCASE("neutral planes differ per pair for asymmetric stacks") {
        // stored independently; for isotropic layers 11 and 22 agree
        CHECK(t.neutral_planes[0] == doctest::Approx(t.neutral_planes[1]).epsilon(1e-6));
    }
}

TEST_CASE("degenerate membrane rigidity rejected") {
    RigidityTable t;
    CHECK_THROWS_AS(neutral_plane(t, 11), ValidationError);
    CHECK_THROWS_AS(neutral_plane(t, 10), ValidationError);
}

TEST_CASE("missing modes rejected") {
    const CellSpec spec = homogeneous_cell(1, 1, 0.5);
    const HexMesh mesh = generate_mesh(spec, {2, 2, 2});
    const auto mats = single_material(1.0, 0.0);
    const CellProblem problem(mesh, mats);
    std::vector<CorrectorField> five;
    for (const MacroMode& m : MacroMode::all())
        if (m.index() != 3) five.push_back(problem.solve(m));
    CHECK_THROWS_AS(compute_rigidities(mesh, mats, five), ValidationError);
}

TEST_CASE("von Mises is gauge invariant and scales with the magnitude") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(1, 1, 0.5), {3, 3, 3});
    const auto mats = single_material(2.0, 0.36);
    const CellProblem problem(mesh, mats, {1e-12, 0});
    const CorrectorField z = problem.solve({12, 0, 1.0});

    CorrectorField shifted = z;
    shifted.displacement.col(1).array() += 0.77;  // rigid translation
    const Eigen::VectorXd vm_a = von_mises(local_stress(mesh, mats, z));
    const Eigen::VectorXd vm_b = von_mises(local_stress(mesh, mats, shifted));
    CHECK((vm_a - vm_b).cwiseAbs().maxCoeff() < 1e-12);

    const CorrectorField z3 = problem.solve({12, 0, -3.0});
    const Eigen::VectorXd vm_c = von_mises(local_stress(mesh, mats, z3));
    CHECK((vm_c - 3.0 * vm_a).cwiseAbs().maxCoeff() < 1e-9 * vm_a.maxCoeff());
}
