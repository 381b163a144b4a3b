#include "platecell/run.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <thread>

#include "platecell/errors.hpp"
#include "platecell/export.hpp"

namespace platecell {

namespace fs = std::filesystem;

int worker_cap() {
    if (const char* env = std::getenv("PLATECELL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return int(std::min(hw == 0 ? 1u : hw, 4u));
}

std::vector<CorrectorField> solve_modes(const CellProblem& problem,
                                        const std::vector<MacroMode>& modes, int threads) {
    const int cap = threads > 0 ? threads : worker_cap();
    std::vector<CorrectorField> out(modes.size());
    if (cap <= 1 || modes.size() <= 1) {
        for (std::size_t m = 0; m < modes.size(); ++m) out[m] = problem.solve(modes[m]);
        return out;
    }
    for (std::size_t start = 0; start < modes.size(); start += std::size_t(cap)) {
        std::vector<std::future<CorrectorField>> batch;
        const std::size_t end = std::min(modes.size(), start + std::size_t(cap));
        for (std::size_t m = start; m < end; ++m)
            batch.push_back(std::async(std::launch::async,
                                       [&problem, mode = modes[m]] { return problem.solve(mode); }));
        for (std::size_t m = start; m < end; ++m) out[m] = batch[m - start].get();
    }
    return out;
}

namespace {

std::string file_label(const MacroMode& m) {
    return std::to_string(m.pair) + "_" + std::to_string(m.nu);
}

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string resolution;
    std::vector<std::string> modes;
    std::string tile;
    double threshold = 0.0;
    std::string format;
};

std::pair<int, int> parse_counts(const std::string& text, const std::string& flag) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw ValidationError(flag + ": expected K1xK2, got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw ValidationError(flag + ": expected K1xK2, got '" + text + "'");
    }
}

RunConfig load_with_overrides(const CliOptions& cli) {
    RunConfig config = load_config(cli.config_path);
    if (!cli.out_dir.empty()) config.output.directory = cli.out_dir;
    if (!cli.resolution.empty()) {
        const auto x1 = cli.resolution.find('x');
        const auto x2 = cli.resolution.find('x', x1 + 1);
        if (x1 == std::string::npos || x2 == std::string::npos)
            throw ValidationError("--resolution: expected N1xN2xN3");
        try {
            config.resolution = {std::stoi(cli.resolution.substr(0, x1)),
                                 std::stoi(cli.resolution.substr(x1 + 1, x2 - x1 - 1)),
                                 std::stoi(cli.resolution.substr(x2 + 1))};
        } catch (const std::exception&) {
            throw ValidationError("--resolution: expected N1xN2xN3");
        }
    }
    if (!cli.modes.empty()) {
        config.modes.clear();
        for (const std::string& m : cli.modes) config.modes.push_back(MacroMode::parse(m));
    }
    if (cli.threshold > 0.0) {
        config.analysis.threshold = cli.threshold;
        config.analysis.informative_threshold = cli.threshold;
    }
    if (!cli.format.empty()) {
        if (cli.format != "csv" && cli.format != "vtk")
            throw ValidationError("--format: must be csv or vtk");
        config.output.formats = {cli.format};
    }
    return config;
}

bool wants(const RunConfig& config, const std::string& format) {
    for (const std::string& f : config.output.formats)
        if (f == format) return true;
    return false;
}

fs::path ensure_out_dir(const RunConfig& config) {
    const fs::path dir(config.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory: " + dir.string());
    return dir;
}

double comparison_pitch(const RunConfig& config) {
    return config.analysis.pitch > 0.0 ? config.analysis.pitch
                                       : default_comparison_pitch(config.cell);
}

void cmd_solve(const RunConfig& config) {
    const fs::path dir = ensure_out_dir(config);
    const HexMesh mesh = generate_mesh(config.cell, config.resolution);
    const auto tensors = phase_tensors_for(mesh, config.material_tensors());
    const CellProblem problem(mesh, tensors, config.solver);
    const auto correctors = solve_modes(problem, config.modes);
    for (std::size_t m = 0; m < config.modes.size(); ++m) {
        const StressField field = local_stress(mesh, tensors, correctors[m]);
        const std::string label = file_label(config.modes[m]);
        if (wants(config, "csv"))
            write_stress_csv((dir / ("stress_" + label + ".csv")).string(), mesh, field);
        if (wants(config, "vtk"))
            write_vtk((dir / ("field_" + label + ".vtk")).string(), mesh,
                      {{"von_mises", von_mises(field)}},
                      {{"displacement", correctors[m].displacement}});
    }
}

void cmd_homogenize(const RunConfig& config) {
    const fs::path dir = ensure_out_dir(config);
    const HexMesh mesh = generate_mesh(config.cell, config.resolution);
    const auto tensors = phase_tensors_for(mesh, config.material_tensors());
    const CellProblem problem(mesh, tensors, config.solver);
    const auto all = MacroMode::all();
    const auto correctors =
        solve_modes(problem, std::vector<MacroMode>(all.begin(), all.end()));
    const RigidityTable table = compute_rigidities(mesh, tensors, correctors);
    write_rigidity_csv((dir / "rigidities.csv").string(), table);
}

void cmd_profile(const RunConfig& config) {
    const fs::path dir = ensure_out_dir(config);
    const HexMesh mesh = generate_mesh(config.cell, config.resolution);
    const auto tensors = phase_tensors_for(mesh, config.material_tensors());
    const CellProblem problem(mesh, tensors, config.solver);
    const auto correctors = solve_modes(problem, config.modes);
    const double pitch = comparison_pitch(config);
    const double s = structural_pitch(config.cell);

    std::ofstream layers((dir / "boundary_layers.csv").string());
    layers << "mode,surface,thickness,thickness_in_pitch\n";
    for (std::size_t m = 0; m < config.modes.size(); ++m) {
        const StressField field = local_stress(mesh, tensors, correctors[m]);
        const LayerProfile profile = layer_profile(mesh, field, pitch);
        write_profile_csv((dir / ("profile_" + file_label(config.modes[m]) + ".csv")).string(),
                          profile);
        const BoundaryLayerThickness bl =
            boundary_layer_thickness(profile, s, config.analysis.threshold);
        layers << config.modes[m].label() << ",top," << format_double(bl.top) << ','
               << format_double(bl.top_pitches) << '\n';
        layers << config.modes[m].label() << ",bottom," << format_double(bl.bottom) << ','
               << format_double(bl.bottom_pitches) << '\n';
    }
    if (structural_layer_regions(config.cell).size() >= 3)
        write_decomposition_csv((dir / "decomposition.csv").string(),
                                skin_core_decompose(config.cell));
}

void cmd_represent(const RunConfig& config) {
    const fs::path dir = ensure_out_dir(config);
    const HexMesh orig_mesh = generate_mesh(config.cell, config.resolution);
    const auto materials = config.material_tensors();
    const auto orig_tensors = phase_tensors_for(orig_mesh, materials);
    const CellProblem orig_problem(orig_mesh, orig_tensors, config.solver);
    const double z_target = 2.0 * config.cell.half_thickness / config.resolution[2];

    for (const MacroMode& mode : config.modes) {
        const MacroMode unit{mode.pair, mode.nu, 1.0};
        const CorrectorField orig_corr = orig_problem.solve(unit);
        const StressField orig_field = local_stress(orig_mesh, orig_tensors, orig_corr);

        const auto alignments =
            mode.nu == 0 ? std::vector<RepresentativeAlignment>{RepresentativeAlignment::top}
                         : std::vector<RepresentativeAlignment>{RepresentativeAlignment::top,
                                                                RepresentativeAlignment::bottom};
        for (const RepresentativeAlignment align : alignments) {
            const CellSpec rep = build_representative(config.cell, align);
            const HexMesh rep_mesh =
                generate_mesh(rep, {config.resolution[0], config.resolution[1], 2}, z_target);
            const auto rep_tensors = phase_tensors_for(rep_mesh, materials);
            const CellProblem rep_problem(rep_mesh, rep_tensors, config.solver);

            StressField rep_field = [&] {
                if (mode.nu == 0)
                    return local_stress(rep_mesh, rep_tensors,
                                        rep_problem.solve(MacroMode{mode.pair, 0, 1.0}));
                // Bending: reproduce the original's strain profile over the
                // aligned zone by adding the membrane mode scaled with the
                // midplane offset.
                const double delta = align == RepresentativeAlignment::bottom
                                         ? rep.half_thickness - config.cell.half_thickness
                                         : config.cell.half_thickness - rep.half_thickness;
                const StressField bend = local_stress(
                    rep_mesh, rep_tensors, rep_problem.solve(MacroMode{mode.pair, 1, 1.0}));
                const StressField membrane = local_stress(
                    rep_mesh, rep_tensors, rep_problem.solve(MacroMode{mode.pair, 0, 1.0}));
                return superpose_stress({{&bend, 1.0}, {&membrane, delta}});
            }();

            const auto verdicts = classify_informative(
                rep, rep_mesh, rep_field, config.cell, orig_mesh, orig_field, unit, align,
                config.analysis.informative_threshold);
            std::string name = "similarity_" + file_label(mode);
            if (mode.nu == 1)
                name += align == RepresentativeAlignment::top ? "_top" : "_bottom";
            write_similarity_csv((dir / (name + ".csv")).string(), verdicts);
        }
    }
}

void cmd_wrinkle(const RunConfig& config, std::pair<int, int> tile) {
    const fs::path dir = ensure_out_dir(config);
    const CellSpec tiled = tile_cell(config.cell, tile.first, tile.second);
    const std::array<int, 3> res{config.resolution[0] * tile.first,
                                 config.resolution[1] * tile.second, config.resolution[2]};
    const HexMesh mesh = generate_mesh(tiled, res);
    const auto tensors = phase_tensors_for(mesh, config.material_tensors());
    const CellProblem problem(mesh, tensors, config.solver);
    const auto correctors = solve_modes(problem, config.modes);
    for (std::size_t m = 0; m < config.modes.size(); ++m) {
        std::vector<WrinkleReport> reports;
        for (const Surface s : {Surface::top, Surface::bottom})
            reports.push_back(
                surface_wrinkle(mesh, correctors[m], s, {config.cell.h1, config.cell.h2}));
        write_wrinkle_csv(
            (dir / ("wrinkle_" + file_label(config.modes[m]) + ".csv")).string(), reports);
    }
}

void cmd_export(const RunConfig& config) {
    const fs::path dir = ensure_out_dir(config);
    const HexMesh mesh = generate_mesh(config.cell, config.resolution);
    for (const MacroMode& mode : config.modes) {
        const std::string label = file_label(mode);
        const fs::path csv = dir / ("stress_" + label + ".csv");
        if (!fs::exists(csv))
            throw ValidationError("export: missing " + csv.string() + " (run solve first)");
        const StressCsv data = read_stress_csv(csv.string());
        if (data.stress.rows() != mesh.element_count())
            throw ValidationError("export: " + csv.string() + " does not match the mesh");
        static const char* names[6] = {"s11", "s22", "s33", "s23", "s13", "s12"};
        std::vector<std::pair<std::string, Eigen::VectorXd>> scalars;
        for (int s = 0; s < 6; ++s) scalars.emplace_back(names[s], data.stress.col(s));
        scalars.emplace_back("von_mises", data.von_mises);
        write_vtk((dir / ("field_" + label + ".vtk")).string(), mesh, scalars);
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"periodicity-cell solver and plate homogenization pipeline", "platecell"};
    app.require_subcommand(1);

    CliOptions cli;
    std::string tile = "1x1";
    auto add_common = [&cli](CLI::App* cmd) {
        cmd->add_option("--config", cli.config_path, "config file (JSON)")->required();
        cmd->add_option("--out", cli.out_dir, "output directory override");
        cmd->add_option("--resolution", cli.resolution, "mesh resolution override, N1xN2xN3");
        cmd->add_option("--mode", cli.modes, "mode override AB:NU, repeatable");
        cmd->add_option("--threshold", cli.threshold, "analysis threshold override");
        cmd->add_option("--format", cli.format, "output format override (csv or vtk)");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the requested modes and export fields");
    CLI::App* homogenize =
        app.add_subcommand("homogenize", "compute rigidities and neutral planes");
    CLI::App* profile =
        app.add_subcommand("profile", "layer profiles, boundary layers and skin/core split");
    CLI::App* represent =
        app.add_subcommand("represent", "compare 3-layer representatives against the original");
    CLI::App* wrinkle = app.add_subcommand("wrinkle", "surface wrinkling metrics (tiled cell)");
    CLI::App* exportc = app.add_subcommand("export", "convert solved CSV fields to VTK");
    for (CLI::App* cmd : {solve, homogenize, profile, represent, wrinkle, exportc})
        add_common(cmd);
    wrinkle->add_option("--tile", tile, "tiling K1xK2 (default 1x1)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const RunConfig config = load_with_overrides(cli);
        if (solve->parsed()) cmd_solve(config);
        if (homogenize->parsed()) cmd_homogenize(config);
        if (profile->parsed()) cmd_profile(config);
        if (represent->parsed()) cmd_represent(config);
        if (wrinkle->parsed()) cmd_wrinkle(config, parse_counts(tile, "--tile"));
        if (exportc->parsed()) cmd_export(config);
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace platecell
