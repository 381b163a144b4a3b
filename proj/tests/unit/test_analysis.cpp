#include <doctest.h>

#include "platecell/errors.hpp"
#include "platecell/profile.hpp"
#include "platecell/representative.hpp"
#include "platecell/run.hpp"
#include "platecell/wrinkle.hpp"

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

std::map<std::string, ElasticityTensor> single_material(double E, double nu) {
    return {{"matrix", iso_to_tensor({"matrix", E, nu})}};
}

StressField constant_field(const HexMesh& mesh, const Vec6& s) {
    StressField f;
    f.mode = {11, 0, 1.0};
    f.element_stress = s.transpose().replicate(mesh.element_count(), 1);
    f.is_void.assign(std::size_t(mesh.element_count()), 0);
    return f;
}

}  // namespace

TEST_CASE("uniform field: equal slab means, zero periodicity deviation") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(), {3, 3, 6});
    Vec6 s;
    s << 2.0, 0.5, 0, 0, 0, 1.0;
    const LayerProfile p = layer_profile(mesh, constant_field(mesh, s), 0.5);
    REQUIRE(p.slabs.size() == 6);
    for (const SlabStats& slab : p.slabs) {
        CHECK(slab.matrix_mean == doctest::Approx(p.slabs[0].matrix_mean));
        CHECK(slab.periodicity_deviation == 0.0);
        CHECK(slab.inclusion_mean == 0.0);
    }
}

TEST_CASE("homogeneous plate: no boundary layer in any mode") {
    const CellSpec spec = homogeneous_cell();
    const HexMesh mesh = generate_mesh(spec, {4, 4, 8});
    const auto mats = single_material(2.0, 0.36);
    const CellProblem problem(mesh, mats, {1e-12, 0});
    const double pitch = default_comparison_pitch(spec);
    CHECK(pitch == doctest::Approx(0.5));
    for (const MacroMode& mode : MacroMode::all()) {
        const StressField f = local_stress(mesh, mats, problem.solve(mode));
        const LayerProfile p = layer_profile(mesh, f, pitch);
        for (const SlabStats& slab : p.slabs)
            CHECK(slab.periodicity_deviation < 1e-8);
        const BoundaryLayerThickness bl = boundary_layer_thickness(p, pitch, 0.05);
        CHECK(bl.top == 0.0);
        CHECK(bl.bottom == 0.0);
    }
}

TEST_CASE("two-layer laminate: deviation stays at solver noise") {
    CellSpec spec = homogeneous_cell(0.4, 0.4, 0.5);
    spec.slabs = {{-0.5, 0.0, "soft"}, {0.0, 0.5, "stiff"}};
    std::map<std::string, ElasticityTensor> mats = {
        {"matrix", iso_to_tensor({"matrix", 1.0, 0.3})},
        {"soft", iso_to_tensor({"soft", 1.0, 0.3})},
        {"stiff", iso_to_tensor({"stiff", 7.0, 0.25})}};
    const HexMesh mesh = generate_mesh(spec, {3, 3, 10});
    const CellProblem problem(mesh, mats, {1e-12, 0});
    const StressField f = local_stress(mesh, mats, problem.solve({11, 0, 1.0}));
    // the comparison spans dissimilar layers; centering keeps it at noise
    const LayerProfile p = layer_profile(mesh, f, default_comparison_pitch(spec));
    for (const SlabStats& slab : p.slabs)
        CHECK(slab.periodicity_deviation < 1e-9);
}

TEST_CASE("boundary layer thickness is monotone in the threshold") {
    LayerProfile profile;
    const double d[] = {0.2, 0.08, 0.01, 0.0, 0.0, 0.01, 0.03, 0.4};
    for (int k = 0; k < 8; ++k) {
        SlabStats s;
        s.z0 = -1.0 + 0.25 * k;
        s.z1 = s.z0 + 0.25;
        s.periodicity_deviation = d[k];
        profile.slabs.push_back(s);
    }
    double previous_top = 1e9, previous_bottom = 1e9;
    for (double tau : {0.005, 0.02, 0.05, 0.1, 0.5}) {
        const BoundaryLayerThickness bl = boundary_layer_thickness(profile, 0.5, tau);
        CHECK(bl.top <= previous_top);
        CHECK(bl.bottom <= previous_bottom);
        previous_top = bl.top;
        previous_bottom = bl.bottom;
    }
    const BoundaryLayerThickness bl = boundary_layer_thickness(profile, 0.5, 0.05);
    CHECK(bl.top == doctest::Approx(0.25));     // only the outermost slab exceeds
    CHECK(bl.bottom == doctest::Approx(0.5));   // two contiguous slabs exceed
    CHECK(bl.top_pitches == doctest::Approx(0.5));
    CHECK_THROWS_AS(boundary_layer_thickness(profile, 0.5, 0.0), ValidationError);
}

TEST_CASE("skin/core decomposition") {
    LayeredPlateParams p;
    p.h1 = 1.1;
    p.h2 = 3.0;

    SUBCASE("9 layers: one-layer skins, seven-layer core") {
        p.layer_count = 9;
        const CellSpec spec = make_layered_plate(p);
        const SkinCoreDecomposition d = skin_core_decompose(spec);
        CHECK(d.top_skin.second == doctest::Approx(spec.half_thickness));
        CHECK(d.top_thickness == doctest::Approx(1.05));  // half gap + fiber + cover
        CHECK(d.core.second - d.core.first == doctest::Approx(7.0));
        CHECK(d.top_pitches == doctest::Approx(1.05));
        CHECK(d.bottom_skin.first == doctest::Approx(-spec.half_thickness));
    }
    SUBCASE("3 layers: minimal decomposition") {
        p.layer_count = 3;
        const SkinCoreDecomposition d = skin_core_decompose(make_layered_plate(p));
        CHECK(d.core.second - d.core.first == doctest::Approx(1.0));
    }
    SUBCASE("2 layers: no core") {
        p.layer_count = 2;
        CHECK_THROWS_AS(skin_core_decompose(make_layered_plate(p)), ValidationError);
    }
}

TEST_CASE("representative construction") {
    LayeredPlateParams p;
    p.h1 = 1.1;
    p.h2 = 3.0;

    SUBCASE("9-layer orthogonal stack maps onto (top, interior, bottom) directions") {
        p.layer_count = 9;
        const CellSpec rep = build_representative(make_layered_plate(p));
        REQUIRE(rep.inclusions.size() == 3);
        CHECK(rep.half_thickness == doctest::Approx(1.55));
        // alternating from y1 at the bottom: top layer y1, its neighbor y2
        const auto centers = layer_centers(rep);
        REQUIRE(centers.size() == 3);
        CHECK(centers[1] - centers[0] == doctest::Approx(1.0));
        std::vector<Axis> axes(3);
        for (const InclusionLayer& inc : rep.inclusions) {
            for (std::size_t c = 0; c < 3; ++c)
                if (std::abs(inc.center_y3 - centers[c]) < 1e-12) axes[c] = inc.axis;
        }
        CHECK(axes[0] == Axis::y1);  // bottom replicates the bottom layer
        CHECK(axes[1] == Axis::y2);  // interior replica, adjacent to the top
        CHECK(axes[2] == Axis::y1);  // top replicates the top layer
    }
    SUBCASE("idempotent on 3-layer plates") {
        p.layer_count = 3;
        const CellSpec spec = make_layered_plate(p);
        for (const auto align : {RepresentativeAlignment::top, RepresentativeAlignment::center,
                                 RepresentativeAlignment::bottom}) {
            const CellSpec rep = build_representative(spec, align);
            CHECK(rep.half_thickness == doctest::Approx(spec.half_thickness));
            REQUIRE(rep.inclusions.size() == 3);
            const auto a = layer_centers(spec);
            const auto b = layer_centers(rep);
            for (std::size_t i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(a[i]));
        }
    }
    SUBCASE("bottom-aligned picks the layer next to the bottom") {
        p.layer_count = 10;
        const CellSpec rep =
            build_representative(make_layered_plate(p), RepresentativeAlignment::bottom);
        // layers alternate y1 (even) / y2 (odd) from the bottom, so the
        // interior replica, second from the bottom, runs along y2
        const auto centers = layer_centers(rep);
        for (const InclusionLayer& inc : rep.inclusions)
            if (std::abs(inc.center_y3 - centers[1]) < 1e-12) CHECK(inc.axis == Axis::y2);
    }
    SUBCASE("fewer than 3 layers rejected") {
        p.layer_count = 2;
        CHECK_THROWS_AS(build_representative(make_layered_plate(p)), ValidationError);
    }
}

TEST_CASE("similarity comparison") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(), {3, 3, 6});
    const auto mats = single_material(2.0, 0.36);
    const StressField f = local_stress(mesh, mats, solve_pcp(mesh, mats, {11, 0, 1.0}));

    SUBCASE("a zone against itself is informative with zero distance") {
        const SimilarityReport r =
            compare_sss(mesh, f, {-0.5, 0.0}, mesh, f, {-0.5, 0.0});
        CHECK(r.rel_l2 == 0.0);
        CHECK(r.rel_max == 0.0);
        CHECK(r.informative);
    }
    SUBCASE("doubling the field gives exactly one half") {
        StressField doubled = f;
        doubled.element_stress *= 2.0;
        const SimilarityReport r =
            compare_sss(mesh, f, {-0.5, 0.5}, mesh, doubled, {-0.5, 0.5});
        CHECK(r.rel_l2 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.rel_max == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_FALSE(r.informative);
    }
    SUBCASE("symmetric under swapping the zones") {
        StressField scaled = f;
        scaled.element_stress *= 1.3;
        const SimilarityReport ab =
            compare_sss(mesh, f, {-0.5, 0.0}, mesh, scaled, {0.0, 0.5});
        const SimilarityReport ba =
            compare_sss(mesh, scaled, {0.0, 0.5}, mesh, f, {-0.5, 0.0});
        CHECK(ab.rel_l2 == doctest::Approx(ba.rel_l2).epsilon(1e-14));
    }
    SUBCASE("misaligned zones rejected") {
        CHECK_THROWS_AS(compare_sss(mesh, f, {-0.45, 0.05}, mesh, f, {-0.45, 0.05}),
                        ValidationError);
        CHECK_THROWS_AS(compare_sss(mesh, f, {-0.5, 0.0}, mesh, f, {-0.5, 0.5}),
                        ValidationError);
    }
}

TEST_CASE("identical plates classify as fully informative") {
    LayeredPlateParams p;
    p.layer_count = 3;
    p.h1 = 1.1;
    p.h2 = 1.1;
    p.radius = 0.3;
    const CellSpec spec = make_layered_plate(p);
    const HexMesh mesh = generate_mesh(spec, {8, 8, 24});
    std::map<std::string, ElasticityTensor> mats = {
        {"matrix", iso_to_tensor({"matrix", 2.0, 0.36})},
        {"fiber", iso_to_tensor({"fiber", 170.0, 0.3})}};
    const StressField f =
        local_stress(mesh, mats, solve_pcp(mesh, mats, {11, 0, 1.0}, {1e-10, 0}));
    const auto verdicts = classify_informative(spec, mesh, f, spec, mesh, f, {11, 0, 1.0},
                                               RepresentativeAlignment::top);
    REQUIRE(verdicts.size() == 3);
    for (const LayerVerdict& v : verdicts) {
        CHECK(v.rel_l2 == 0.0);
        CHECK(v.informative);
    }
}

TEST_CASE("flat surfaces of homogeneous plates") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(), {6, 6, 8});
    const auto mats = single_material(2.0, 0.36);
    const CellProblem problem(mesh, mats, {1e-12, 0});
    for (const MacroMode& mode : MacroMode::all()) {
        const CorrectorField z = problem.solve(mode);
        for (const Surface s : {Surface::top, Surface::bottom}) {
            const WrinkleReport r = surface_wrinkle(mesh, z, s);
            CHECK(r.amplitude < 1e-8);
            CHECK(r.area_ratio == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(r.slope_rms < 1e-8);
        }
    }
}

TEST_CASE("wrinkle metrics are invariant under rigid offsets") {
    const HexMesh mesh = generate_mesh(homogeneous_cell(), {4, 4, 6});
    const auto mats = single_material(2.0, 0.36);
    CorrectorField z = solve_pcp(mesh, mats, {11, 1, 1.0}, {1e-12, 0});
    const WrinkleReport before = surface_wrinkle(mesh, z, Surface::top);
    z.displacement.col(2).array() += 0.4;
    const WrinkleReport after = surface_wrinkle(mesh, z, Surface::top);
    CHECK(after.amplitude == doctest::Approx(before.amplitude).epsilon(1e-12));
    CHECK(after.baseline_offset == doctest::Approx(before.baseline_offset + 0.4));
}
