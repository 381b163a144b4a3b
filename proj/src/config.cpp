#include "platecell/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "platecell/errors.hpp"

namespace platecell {

using json = nlohmann::ordered_json;

std::map<std::string, ElasticityTensor> RunConfig::material_tensors() const {
    std::map<std::string, ElasticityTensor> tensors;
    for (const IsotropicMaterial& m : materials) tensors.emplace(m.name, iso_to_tensor(m));
    return tensors;
}

const IsotropicMaterial* RunConfig::find_material(const std::string& name) const {
    for (const IsotropicMaterial& m : materials)
        if (m.name == name) return &m;
    return nullptr;
}

namespace {

[[noreturn]] void fail(const std::vector<std::string>& errors) {
    std::string msg = "invalid config:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
}

Axis parse_axis(const std::string& s) {
    if (s == "y1") return Axis::y1;
    if (s == "y2") return Axis::y2;
    throw ValidationError("invalid config:\n  axis must be \"y1\" or \"y2\", got \"" + s + "\"");
}

MacroMode parse_mode(const json& j) {
    if (j.is_string()) return MacroMode::parse(j.get<std::string>());
    MacroMode m;
    m.pair = j.at("pair").get<int>();
    m.nu = j.at("nu").get<int>();
    m.magnitude = j.value("magnitude", 1.0);
    if (!MacroMode::valid_pair(m.pair) || (m.nu != 0 && m.nu != 1))
        throw ValidationError("invalid config:\n  mode pair must be 11/22/12 and nu 0/1");
    return m;
}

CellSpec parse_cell(const json& c, std::vector<std::string>& errors) {
    CellSpec spec;
    spec.h1 = c.value("h1", 0.0);
    spec.h2 = c.value("h2", 0.0);
    spec.matrix_material = c.value("matrix", std::string{});

    const bool has_layers = c.contains("layers");
    const bool has_explicit = c.contains("inclusions") || c.contains("half_thickness") ||
                              c.contains("slabs");
    if (has_layers && c.contains("inclusions")) {
        errors.push_back("cell: give either a layers block or an explicit inclusions list");
        return spec;
    }
    if (!has_layers && !has_explicit) {
        errors.push_back("cell: missing geometry (layers block or half_thickness)");
        return spec;
    }

    if (has_layers) {
        const json& l = c.at("layers");
        LayeredPlateParams p;
        p.layer_count = l.value("count", 1);
        const std::string kind = l.value("kind", std::string{"fiber"});
        if (kind == "fiber") {
            p.kind = InclusionKind::fiber;
        } else if (kind == "channel") {
            p.kind = InclusionKind::channel;
        } else {
            errors.push_back("cell.layers: kind must be \"fiber\" or \"channel\"");
        }
        p.radius = l.value("radius", 0.45);
        p.gap = l.value("gap", 0.1);
        p.cover = l.value("cover", 0.1);
        p.h1 = spec.h1;
        p.h2 = spec.h2;
        p.matrix_material = spec.matrix_material;
        p.inclusion_material = l.value("material", std::string{});
        if (l.contains("directions"))
            for (const json& d : l.at("directions"))
                p.directions.push_back(parse_axis(d.get<std::string>()));
        if (l.contains("offsets"))
            for (const json& o : l.at("offsets")) p.offsets.push_back(o.get<double>());
        if (p.layer_count < 1) {
            errors.push_back("cell.layers: count must be >= 1");
            return spec;
        }
        return make_layered_plate(p);
    }

    spec.half_thickness = c.value("half_thickness", 0.0);
    if (c.contains("slabs"))
        for (const json& s : c.at("slabs")) {
            MaterialSlab slab;
            slab.z0 = s.at("from").get<double>();
            slab.z1 = s.at("to").get<double>();
            slab.material = s.at("material").get<std::string>();
            spec.slabs.push_back(slab);
        }
    if (c.contains("inclusions"))
        for (const json& i : c.at("inclusions")) {
            InclusionLayer inc;
            const std::string kind = i.value("kind", std::string{"fiber"});
            if (kind == "fiber") {
                inc.kind = InclusionKind::fiber;
            } else if (kind == "channel") {
                inc.kind = InclusionKind::channel;
            } else {
                errors.push_back("cell.inclusions: kind must be \"fiber\" or \"channel\"");
            }
            inc.axis = parse_axis(i.value("axis", std::string{"y1"}));
            inc.center_y3 = i.value("center_y3", 0.0);
            inc.radius = i.value("radius", 0.0);
            inc.material = i.value("material", std::string{});
            inc.in_plane_offset = i.value("offset", 0.0);
            inc.axis_start = i.value("axis_start", 0.0);
            inc.axis_length = i.value("axis_length", -1.0);
            spec.inclusions.push_back(inc);
        }
    return spec;
}

RunConfig parse_config(const json& root) {
    std::vector<std::string> errors;
    RunConfig config;

    const int version = root.value("schema_version", 1);
    if (version != 1) errors.push_back("schema_version: only version 1 is supported");

    if (!root.contains("materials") || !root.at("materials").is_array() ||
        root.at("materials").empty()) {
        errors.push_back("materials: at least one material required");
    } else {
        for (const json& m : root.at("materials")) {
            IsotropicMaterial mat;
            mat.name = m.value("name", std::string{});
            mat.youngs_modulus = m.value("youngs_modulus", 0.0);
            mat.poisson_ratio = m.value("poisson_ratio", 0.0);
            if (mat.name.empty()) errors.push_back("materials: every material needs a name");
            if (config.find_material(mat.name))
                errors.push_back("materials: duplicate name '" + mat.name + "'");
            for (const std::string& e : mat.validate()) errors.push_back(e);
            config.materials.push_back(mat);
        }
    }

    if (root.contains("cell")) {
        config.cell = parse_cell(root.at("cell"), errors);
    } else {
        errors.push_back("cell: missing");
    }

    if (root.contains("resolution")) {
        const json& r = root.at("resolution");
        if (!r.is_array() || r.size() != 3) {
            errors.push_back("resolution: expected [n1, n2, n3]");
        } else {
            for (int a = 0; a < 3; ++a) {
                config.resolution[std::size_t(a)] = r.at(std::size_t(a)).get<int>();
                if (config.resolution[std::size_t(a)] < 2)
                    errors.push_back("resolution: counts must be >= 2");
            }
        }
    }

    if (!root.contains("modes") || !root.at("modes").is_array() || root.at("modes").empty()) {
        errors.push_back("modes: at least one mode required");
    } else {
        for (const json& m : root.at("modes")) config.modes.push_back(parse_mode(m));
    }

    config.epsilon = root.value("epsilon", 0.01);
    if (!(config.epsilon > 0.0)) errors.push_back("epsilon: must be > 0");

    if (root.contains("solver")) {
        const json& s = root.at("solver");
        config.solver.tolerance = s.value("tolerance", 1e-9);
        config.solver.max_iterations = s.value("max_iterations", 0);
        if (!(config.solver.tolerance > 0.0)) errors.push_back("solver.tolerance: must be > 0");
        if (config.solver.max_iterations < 0)
            errors.push_back("solver.max_iterations: must be >= 0");
    }
    if (root.contains("analysis")) {
        const json& a = root.at("analysis");
        config.analysis.threshold = a.value("threshold", 0.05);
        config.analysis.informative_threshold = a.value("informative_threshold", 0.05);
        config.analysis.pitch = a.value("pitch", 0.0);
        if (!(config.analysis.threshold > 0.0)) errors.push_back("analysis.threshold: must be > 0");
        if (!(config.analysis.informative_threshold > 0.0))
            errors.push_back("analysis.informative_threshold: must be > 0");
        if (config.analysis.pitch < 0.0) errors.push_back("analysis.pitch: must be >= 0");
    }
    if (root.contains("output")) {
        const json& o = root.at("output");
        config.output.directory = o.value("directory", std::string{"out"});
        if (o.contains("formats")) {
            config.output.formats.clear();
            for (const json& f : o.at("formats")) {
                const std::string fmt = f.get<std::string>();
                if (fmt != "csv" && fmt != "vtk") {
                    errors.push_back("output.formats: unsupported format '" + fmt + "'");
                } else {
                    config.output.formats.push_back(fmt);
                }
            }
        }
    }

    // Cross references and geometry, only once the pieces parsed.
    if (errors.empty()) {
        for (const MaterialSlab& s : config.cell.slabs)
            if (!config.find_material(s.material))
                errors.push_back("cell: unknown material '" + s.material + "'");
        for (const InclusionLayer& i : config.cell.inclusions)
            if (i.kind == InclusionKind::fiber && !config.find_material(i.material))
                errors.push_back("cell: unknown material '" + i.material + "'");
        if (!config.find_material(config.cell.matrix_material))
            errors.push_back("cell: unknown matrix material '" + config.cell.matrix_material + "'");
        for (const std::string& e : validate_cell(config.cell).errors) errors.push_back(e);
    }

    if (!errors.empty()) fail(errors);
    return config;
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string{"config parse error: "} + e.what());
    }
    return parse_config(root);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config file not found: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string normalized_dump(const RunConfig& config) {
    json root;
    root["schema_version"] = 1;
    root["materials"] = json::array();
    for (const IsotropicMaterial& m : config.materials)
        root["materials"].push_back({{"name", m.name},
                                     {"youngs_modulus", m.youngs_modulus},
                                     {"poisson_ratio", m.poisson_ratio}});
    json cell;
    cell["h1"] = config.cell.h1;
    cell["h2"] = config.cell.h2;
    cell["half_thickness"] = config.cell.half_thickness;
    cell["matrix"] = config.cell.matrix_material;
    if (!config.cell.slabs.empty()) {
        cell["slabs"] = json::array();
        for (const MaterialSlab& s : config.cell.slabs)
            cell["slabs"].push_back({{"from", s.z0}, {"to", s.z1}, {"material", s.material}});
    }
    if (!config.cell.inclusions.empty()) {
        cell["inclusions"] = json::array();
        for (const InclusionLayer& i : config.cell.inclusions) {
            json inc;
            inc["kind"] = i.kind == InclusionKind::fiber ? "fiber" : "channel";
            inc["axis"] = axis_name(i.axis);
            inc["center_y3"] = i.center_y3;
            inc["radius"] = i.radius;
            if (!i.material.empty()) inc["material"] = i.material;
            inc["offset"] = i.in_plane_offset;
            if (i.axis_length >= 0.0) {
                inc["axis_start"] = i.axis_start;
                inc["axis_length"] = i.axis_length;
            }
            cell["inclusions"].push_back(inc);
        }
    }
    root["cell"] = cell;
    root["resolution"] = config.resolution;
    root["modes"] = json::array();
    for (const MacroMode& m : config.modes)
        root["modes"].push_back({{"pair", m.pair}, {"nu", m.nu}, {"magnitude", m.magnitude}});
    root["epsilon"] = config.epsilon;
    root["solver"] = {{"tolerance", config.solver.tolerance},
                      {"max_iterations", config.solver.max_iterations}};
    root["analysis"] = {{"threshold", config.analysis.threshold},
                        {"informative_threshold", config.analysis.informative_threshold},
                        {"pitch", config.analysis.pitch}};
    root["output"] = {{"directory", config.output.directory},
                      {"formats", config.output.formats}};
    return root.dump(2) + "\n";
}

}  // namespace platecell
