#include <doctest.h>

#include <cmath>
#include <numbers>

#include "platecell/errors.hpp"
#include "platecell/mesh.hpp"

using namespace platecell;

namespace {

CellSpec homogeneous_cell(double h1 = 1.0, double h2 = 1.0, double h = 0.5) {
    CellSpec spec;
    spec.h1 = h1;
    spec.h2 = h2;
    spec.half_thickness = h;
    spec.matrix_material = "matrix";
    return spec;
}

CellSpec reference_fiber_cell() {
    LayeredPlateParams p;
    p.layer_count = 1;
    p.h1 = 1.1;
    p.h2 = 3.0;
    p.directions = {Axis::y2};
    return make_layered_plate(p);
}

}  // namespace

TEST_CASE("homogeneous cell meshes to the exact element count") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(), {2, 2, 2});
    CHECK(mesh.element_count() == 8);
    CHECK(mesh.node_count() == 27);
    for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
        CHECK(mesh.phase[std::size_t(e)] == 0);
        CHECK(mesh.inclusion_of[std::size_t(e)] == -1);
    }
    CHECK(mesh.phase_names == std::vector<std::string>{"matrix"});
}

TEST_CASE("fiber volume fraction approaches the analytic cylinder volume") {
    const CellSpec spec = reference_fiber_cell();
    const double exact = std::numbers::pi * 0.45 * 0.45 * spec.h2 / spec.volume();
    const HexMesh mesh = generate_mesh(spec, {22, 60, 22});
    const double tagged = mesh.tagged_volume_fraction();
    CHECK(std::abs(tagged - exact) / exact < 0.05);
}

TEST_CASE("refinement improves the tagged volume fraction") {
    const CellSpec spec = reference_fiber_cell();
    const double exact = std::numbers::pi * 0.45 * 0.45 / (spec.h1 * 2.0 * spec.half_thickness);
    double previous = 1e9;
    for (int n : {11, 22, 44}) {
        const HexMesh mesh = generate_mesh(spec, {n, 4, n});
        const double err = std::abs(mesh.tagged_volume_fraction() - exact);
        CHECK(err <= previous + 1e-12);
        previous = err;
    }
}

TEST_CASE("channel elements are tagged void but stay in the arrays") {
    LayeredPlateParams p;
    p.layer_count = 1;
    p.kind = InclusionKind::channel;
    p.h1 = 1.1;
    p.h2 = 1.1;
    const HexMesh mesh = generate_mesh(make_layered_plate(p), {11, 11, 11});
    std::int64_t voids = 0;
    for (std::int64_t e = 0; e < mesh.element_count(); ++e)
        if (mesh.is_void(e)) ++voids;
    CHECK(voids > 0);
    CHECK(mesh.element_count() == std::int64_t(mesh.phase.size()));
}

TEST_CASE("mesh volume matches the cell volume to machine precision") {
    const CellSpec spec = reference_fiber_cell();
    const HexMesh mesh = generate_mesh(spec, {7, 5, 13});
    CHECK(mesh.volume() == doctest::Approx(spec.volume()).epsilon(1e-14));
}

TEST_CASE("phase tagging is deterministic") {
    const CellSpec spec = reference_fiber_cell();
    const HexMesh a = generate_mesh(spec, {13, 6, 17});
    const HexMesh b = generate_mesh(spec, {13, 6, 17});
    CHECK(a.phase == b.phase);
    CHECK(a.z_planes == b.z_planes);
}

TEST_CASE("z planes land on inclusion extremes") {
    const CellSpec spec = reference_fiber_cell();
    const HexMesh mesh = generate_mesh(spec, {8, 4, 11});
    for (double extreme : {-0.45, 0.45, -0.55, 0.55}) {
        bool found = false;
        for (double p : mesh.z_planes)
            if (std::abs(p - extreme) < 1e-12) found = true;
        CHECK(found);
    }
}

TEST_CASE("too coarse a mesh names the unresolved inclusion") {
    CellSpec spec = reference_fiber_cell();
    spec.inclusions[0].radius = 0.02;  // far below the element size
    try {
        generate_mesh(spec, {2, 2, 2});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("inclusion 0") != std::string::npos);
    }
}

TEST_CASE("resolution below two rejected") {
    CHECK_THROWS_AS(generate_mesh(homogeneous_cell(), {1, 2, 2}), ValidationError);
}

TEST_CASE("periodic pairs") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(2.0, 1.5, 0.5), {4, 3, 2});

    SUBCASE("pair counts per axis") {
        CHECK(periodic_pairs(mesh, 1).pairs.size() == (3 + 1) * (2 + 1));
        CHECK(periodic_pairs(mesh, 2).pairs.size() == (4 + 1) * (2 + 1));
    }
    SUBCASE("pairs differ by exactly the period") {
        for (int axis : {1, 2}) {
            const PeriodicPairs pairs = periodic_pairs(mesh, axis);
            Vec3 shift = Vec3::Zero();
            shift[axis - 1] = axis == 1 ? mesh.h1 : mesh.h2;
            for (const auto& [master, slave] : pairs.pairs) {
                const Vec3 diff =
                    mesh.node_position(slave) - mesh.node_position(master) - shift;
                CHECK(diff.norm() == doctest::Approx(0.0).epsilon(1e-15));
            }
        }
    }
    SUBCASE("no node is both master and slave on one axis") {
        const PeriodicPairs pairs = periodic_pairs(mesh, 1);
        for (const auto& [master, slave] : pairs.pairs) {
            for (const auto& [m2, s2] : pairs.pairs) {
                CHECK(master != s2);
                CHECK(slave != m2);
            }
        }
    }
}

TEST_CASE("laminate slabs align with element boundaries") {
    CellSpec spec = homogeneous_cell(0.5, 0.5, 0.5);
    spec.slabs = {{-0.5, -0.1, "soft"}, {-0.1, 0.5, "stiff"}};
    const HexMesh mesh = generate_mesh(spec, {2, 2, 5});
    bool found = false;
    for (double p : mesh.z_planes)
        if (std::abs(p + 0.1) < 1e-12) found = true;
    CHECK(found);
    CHECK(mesh.phase_names == std::vector<std::string>{"matrix", "soft", "stiff"});
    for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
        const double z = mesh.element_center(e).z();
        CHECK(mesh.phase[std::size_t(e)] == (z < -0.1 ? 1 : 2));
    }
}
