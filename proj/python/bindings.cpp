#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "platecell/config.hpp"
#include "platecell/errors.hpp"
#include "platecell/export.hpp"
#include "platecell/run.hpp"

namespace py = pybind11;
using namespace platecell;

namespace {

Axis axis_from_string(const std::string& s) {
    if (s == "y1") return Axis::y1;
    if (s == "y2") return Axis::y2;
    throw ValidationError("axis must be 'y1' or 'y2'");
}

py::dict rigidity_dict(const RigidityTable& t) {
    py::dict d;
    d["membrane"] = Eigen::Matrix3d(t.blocks[0][0]);
    d["coupling"] = Eigen::Matrix3d(t.blocks[0][1]);
    d["coupling_t"] = Eigen::Matrix3d(t.blocks[1][0]);
    d["bending"] = Eigen::Matrix3d(t.blocks[1][1]);
    d["neutral_planes"] = t.neutral_planes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "periodicity-cell solver for inhomogeneous plates";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<IsotropicMaterial>(m, "IsotropicMaterial")
        .def(py::init([](const std::string& name, double e, double nu) {
                 return IsotropicMaterial{name, e, nu};
             }),
             py::arg("name"), py::arg("youngs_modulus"), py::arg("poisson_ratio"))
        .def_readonly("name", &IsotropicMaterial::name)
        .def_readonly("youngs_modulus", &IsotropicMaterial::youngs_modulus)
        .def_readonly("poisson_ratio", &IsotropicMaterial::poisson_ratio);

    py::class_<ElasticityTensor>(m, "ElasticityTensor")
        .def(py::init<const Mat6&>())
        .def_property_readonly("matrix", &ElasticityTensor::matrix)
        .def("component", &ElasticityTensor::component)
        .def("is_positive_definite", &ElasticityTensor::is_positive_definite);
    m.def("iso_to_tensor", &iso_to_tensor);

    py::class_<InclusionLayer>(m, "InclusionLayer")
        .def(py::init([](const std::string& kind, const std::string& axis, double center_y3,
                         double radius, const std::string& material, double offset) {
                 InclusionLayer inc;
                 inc.kind = kind == "channel" ? InclusionKind::channel : InclusionKind::fiber;
                 inc.axis = axis_from_string(axis);
                 inc.center_y3 = center_y3;
                 inc.radius = radius;
                 inc.material = material;
                 inc.in_plane_offset = offset;
                 return inc;
             }),
             py::arg("kind"), py::arg("axis"), py::arg("center_y3"), py::arg("radius"),
             py::arg("material") = std::string{}, py::arg("offset") = 0.0)
        .def_readonly("center_y3", &InclusionLayer::center_y3)
        .def_readonly("radius", &InclusionLayer::radius);

    py::class_<CellSpec>(m, "CellSpec")
        .def_readonly("h1", &CellSpec::h1)
        .def_readonly("h2", &CellSpec::h2)
        .def_readonly("half_thickness", &CellSpec::half_thickness)
        .def_property_readonly("inclusions",
                               [](const CellSpec& s) { return s.inclusions; })
        .def("volume", &CellSpec::volume);

    m.def(
        "layered_plate",
        [](int count, const std::string& kind, double radius, double gap, double cover, double h1,
           double h2, const std::string& matrix, const std::string& material,
           const std::vector<std::string>& directions) {
            LayeredPlateParams p;
            p.layer_count = count;
            p.kind = kind == "channel" ? InclusionKind::channel : InclusionKind::fiber;
            p.radius = radius;
            p.gap = gap;
            p.cover = cover;
            p.h1 = h1;
            p.h2 = h2;
            p.matrix_material = matrix;
            p.inclusion_material = material;
            for (const std::string& d : directions) p.directions.push_back(axis_from_string(d));
            return make_layered_plate(p);
        },
        py::arg("count"), py::arg("kind") = "fiber", py::arg("radius") = 0.45,
        py::arg("gap") = 0.1, py::arg("cover") = 0.1, py::arg("h1") = 1.1, py::arg("h2") = 3.0,
        py::arg("matrix") = "matrix", py::arg("material") = "fiber",
        py::arg("directions") = std::vector<std::string>{});

    m.def("validate_cell",
          [](const CellSpec& spec) { return validate_cell(spec).errors; });
    m.def("tile_cell", &tile_cell, py::arg("spec"), py::arg("k1"), py::arg("k2"));
    m.def("inclusion_volume_fraction", &inclusion_volume_fraction);
    m.def("structural_pitch", &structural_pitch);

    py::class_<HexMesh>(m, "HexMesh")
        .def_readonly("resolution", &HexMesh::resolution)
        .def_readonly("x_planes", &HexMesh::x_planes)
        .def_readonly("y_planes", &HexMesh::y_planes)
        .def_readonly("z_planes", &HexMesh::z_planes)
        .def_readonly("inclusion_of", &HexMesh::inclusion_of)
        .def_readonly("phase", &HexMesh::phase)
        .def_readonly("phase_names", &HexMesh::phase_names)
        .def_property_readonly("node_count", &HexMesh::node_count)
        .def_property_readonly("element_count", &HexMesh::element_count)
        .def("volume", &HexMesh::volume)
        .def("tagged_volume_fraction", &HexMesh::tagged_volume_fraction,
             py::arg("inclusion_index") = -1);
    m.def("generate_mesh", &generate_mesh, py::arg("spec"), py::arg("resolution"),
          py::arg("z_target") = 0.0);
    m.def("periodic_pair_count", [](const HexMesh& mesh, int axis) {
        return periodic_pairs(mesh, axis).pairs.size();
    });

    py::class_<MacroMode>(m, "MacroMode")
        .def(py::init([](int pair, int nu, double magnitude) {
                 if (!MacroMode::valid_pair(pair) || (nu != 0 && nu != 1))
                     throw ValidationError("mode pair must be 11/22/12 and nu 0/1");
                 return MacroMode{pair, nu, magnitude};
             }),
             py::arg("pair"), py::arg("nu"), py::arg("magnitude") = 1.0)
        .def_static("parse", &MacroMode::parse)
        .def_readonly("pair", &MacroMode::pair)
        .def_readonly("nu", &MacroMode::nu)
        .def_readonly("magnitude", &MacroMode::magnitude)
        .def("label", &MacroMode::label);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init([](double tol, int cap) { return SolverOptions{tol, cap}; }),
             py::arg("tolerance") = 1e-9, py::arg("max_iterations") = 0);

    py::class_<SolverReport>(m, "SolverReport")
        .def_readonly("iterations", &SolverReport::iterations)
        .def_readonly("relative_residual", &SolverReport::relative_residual)
        .def_readonly("converged", &SolverReport::converged)
        .def_readonly("reduced_dofs", &SolverReport::reduced_dofs);

    py::class_<CorrectorField>(m, "CorrectorField")
        .def_readonly("mode", &CorrectorField::mode)
        .def_readonly("displacement", &CorrectorField::displacement)
        .def_readonly("report", &CorrectorField::report);

    py::class_<CellProblem>(m, "CellProblem")
        .def(py::init([](const HexMesh& mesh, const std::map<std::string, ElasticityTensor>& mats,
                         double tolerance, int max_iterations) {
                 return CellProblem(mesh, mats, SolverOptions{tolerance, max_iterations});
             }),
             py::arg("mesh"), py::arg("materials"), py::arg("tolerance") = 1e-9,
             py::arg("max_iterations") = 0)
        .def("solve", &CellProblem::solve)
        .def_property_readonly("reduced_dofs", &CellProblem::reduced_dofs);
    m.def("solve_pcp", &solve_pcp, py::arg("mesh"), py::arg("materials"), py::arg("mode"),
          py::arg("options") = SolverOptions{});

    m.def("periodic_part", &recover_periodic_part, py::arg("corrector"), py::arg("mesh"));
    m.def("reconstruct_displacement",
          [](const std::array<double, 6>& entries, const std::vector<CorrectorField>& correctors,
             const HexMesh& mesh, double epsilon) {
              std::vector<const CorrectorField*> ptrs;
              for (const CorrectorField& c : correctors) ptrs.push_back(&c);
              return reconstruct_displacement(entries, ptrs, mesh, epsilon);
          });

    py::class_<StressField>(m, "StressField")
        .def_readonly("mode", &StressField::mode)
        .def_readonly("element_stress", &StressField::element_stress);
    m.def("local_stress",
          py::overload_cast<const HexMesh&, const std::map<std::string, ElasticityTensor>&,
                            const CorrectorField&>(&local_stress));
    m.def("von_mises", py::overload_cast<const StressField&>(&von_mises));
    m.def("combined_mode_stress", &combined_mode_stress, py::arg("tension"), py::arg("bending"),
          py::arg("epsilon"));

    m.def("compute_rigidities",
          [](const HexMesh& mesh, const std::map<std::string, ElasticityTensor>& mats,
             const std::vector<CorrectorField>& correctors) {
              return rigidity_dict(compute_rigidities(mesh, mats, correctors));
          });
    m.def("homogenize",
          [](const CellSpec& spec, const std::vector<IsotropicMaterial>& materials,
             std::array<int, 3> resolution, double tolerance) {
              std::map<std::string, ElasticityTensor> mats;
              for (const IsotropicMaterial& mm : materials) mats.emplace(mm.name, iso_to_tensor(mm));
              const HexMesh mesh = generate_mesh(spec, resolution);
              const CellProblem problem(mesh, mats, SolverOptions{tolerance, 0});
              const auto all = MacroMode::all();
              const auto correctors =
                  solve_modes(problem, std::vector<MacroMode>(all.begin(), all.end()));
              return rigidity_dict(compute_rigidities(mesh, mats, correctors));
          },
          py::arg("spec"), py::arg("materials"), py::arg("resolution"),
          py::arg("tolerance") = 1e-9);

    py::class_<LayerProfile>(m, "LayerProfile")
        .def_property_readonly("slabs", [](const LayerProfile& p) {
            py::list rows;
            for (const SlabStats& s : p.slabs) {
                py::dict r;
                r["z0"] = s.z0;
                r["z1"] = s.z1;
                r["matrix_mean"] = s.matrix_mean;
                r["matrix_max"] = s.matrix_max;
                r["inclusion_mean"] = s.inclusion_mean;
                r["inclusion_max"] = s.inclusion_max;
                r["periodicity_deviation"] = s.periodicity_deviation;
                rows.append(r);
            }
            return rows;
        })
        .def_readonly("pitch", &LayerProfile::pitch);
    m.def("layer_profile", &layer_profile, py::arg("mesh"), py::arg("field"), py::arg("pitch"));
    m.def("default_comparison_pitch", &default_comparison_pitch);

    py::class_<BoundaryLayerThickness>(m, "BoundaryLayerThickness")
        .def_readonly("top", &BoundaryLayerThickness::top)
        .def_readonly("bottom", &BoundaryLayerThickness::bottom)
        .def_readonly("top_pitches", &BoundaryLayerThickness::top_pitches)
        .def_readonly("bottom_pitches", &BoundaryLayerThickness::bottom_pitches);
    m.def("boundary_layer_thickness", &boundary_layer_thickness, py::arg("profile"),
          py::arg("pitch"), py::arg("threshold") = 0.05);

    py::class_<SkinCoreDecomposition>(m, "SkinCoreDecomposition")
        .def_readonly("top_skin", &SkinCoreDecomposition::top_skin)
        .def_readonly("core", &SkinCoreDecomposition::core)
        .def_readonly("bottom_skin", &SkinCoreDecomposition::bottom_skin);
    m.def("skin_core_decompose", &skin_core_decompose, py::arg("spec"), py::arg("pitch") = 0.0);

    py::enum_<RepresentativeAlignment>(m, "RepresentativeAlignment")
        .value("top", RepresentativeAlignment::top)
        .value("center", RepresentativeAlignment::center)
        .value("bottom", RepresentativeAlignment::bottom);
    m.def("build_representative", &build_representative, py::arg("spec"),
          py::arg("align") = RepresentativeAlignment::top);

    py::class_<SimilarityReport>(m, "SimilarityReport")
        .def_readonly("rel_l2", &SimilarityReport::rel_l2)
        .def_readonly("rel_max", &SimilarityReport::rel_max)
        .def_readonly("informative", &SimilarityReport::informative);
    m.def("compare_sss", &compare_sss, py::arg("mesh_a"), py::arg("field_a"), py::arg("zone_a"),
          py::arg("mesh_b"), py::arg("field_b"), py::arg("zone_b"), py::arg("threshold") = 0.05);

    py::enum_<Surface>(m, "Surface").value("top", Surface::top).value("bottom", Surface::bottom);
    py::class_<WrinkleReport>(m, "WrinkleReport")
        .def_readonly("amplitude", &WrinkleReport::amplitude)
        .def_readonly("slope_rms", &WrinkleReport::slope_rms)
        .def_readonly("area_ratio", &WrinkleReport::area_ratio)
        .def_readonly("period_mismatch_rel", &WrinkleReport::period_mismatch_rel)
        .def_readonly("periodic", &WrinkleReport::periodic);
    m.def("surface_wrinkle", &surface_wrinkle, py::arg("mesh"), py::arg("corrector"),
          py::arg("surface"), py::arg("base_period") = std::pair<double, double>{0.0, 0.0},
          py::arg("periodicity_tol") = 1e-6);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("cell", &RunConfig::cell)
        .def_readonly("resolution", &RunConfig::resolution)
        .def_readonly("modes", &RunConfig::modes)
        .def_readonly("epsilon", &RunConfig::epsilon);
    m.def("load_config", &load_config);
    m.def("config_from_json", &config_from_json);
    m.def("normalized_dump", &normalized_dump);

    m.def("run_command", &run_command,
          "run the CLI pipeline; returns the process exit code");
}
