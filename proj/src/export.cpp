#include "platecell/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "platecell/errors.hpp"

namespace platecell {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    return out;
}

// CSV stress order: s11,s22,s33,s12,s23,s13 against Voigt (11,22,33,23,13,12).
constexpr int kCsvToVoigt[6] = {0, 1, 2, 5, 3, 4};

}  // namespace

void write_stress_csv(const std::string& path, const HexMesh& mesh, const StressField& field) {
    if (field.element_stress.rows() != mesh.element_count())
        throw ValidationError("write_stress_csv: field does not match the mesh");
    std::ofstream out = open_out(path);
    out << "x,y,z,phase,s11,s22,s33,s12,s23,s13,von_mises\n";
    const Eigen::VectorXd vm = von_mises(field);
    for (std::int64_t e = 0; e < mesh.element_count(); ++e) {
        const Vec3 c = mesh.element_center(e);
        out << format_double(c.x()) << ',' << format_double(c.y()) << ',' << format_double(c.z())
            << ',' << mesh.phase[std::size_t(e)];
        for (int s = 0; s < 6; ++s)
            out << ',' << format_double(field.element_stress(e, kCsvToVoigt[s]));
        out << ',' << format_double(vm[e]) << '\n';
    }
}

StressCsv read_stress_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,z,phase,", 0) != 0)
        throw ValidationError("read_stress_csv: missing header in " + path);

    std::vector<std::array<double, 10>> values;
    std::vector<int> phases;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::array<double, 10> v{};
        int phase = 0;
        char comma = 0;
        row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> phase;
        for (int c = 3; c < 10; ++c) row >> comma >> v[std::size_t(c)];
        if (!row) throw ValidationError("read_stress_csv: malformed row in " + path);
        values.push_back(v);
        phases.push_back(phase);
    }

    StressCsv csv;
    const Eigen::Index n = Eigen::Index(values.size());
    csv.centroids.resize(n, 3);
    csv.stress.resize(n, 6);
    csv.von_mises.resize(n);
    csv.phase = std::move(phases);
    for (Eigen::Index e = 0; e < n; ++e) {
        const auto& v = values[std::size_t(e)];
        csv.centroids.row(e) << v[0], v[1], v[2];
        for (int s = 0; s < 6; ++s) csv.stress(e, kCsvToVoigt[s]) = v[std::size_t(3 + s)];
        csv.von_mises[e] = v[9];
    }
    return csv;
}

void write_vtk(const std::string& path, const HexMesh& mesh,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& cell_scalars,
               const std::vector<std::pair<std::string, Eigen::Matrix<double, Eigen::Dynamic, 3>>>&
                   point_vectors) {
    std::ofstream out = open_out(path);
    out << "# vtk DataFile Version 3.0\nplatecell cell fields\nASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.node_count() << " double\n";
    for (std::int64_t n = 0; n < mesh.node_count(); ++n) {
        const Vec3 p = mesh.node_position(n);
        out << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z())
            << '\n';
    }

    std::vector<std::int64_t> solid;
    for (std::int64_t e = 0; e < mesh.element_count(); ++e)
        if (!mesh.is_void(e)) solid.push_back(e);

    out << "CELLS " << solid.size() << ' ' << solid.size() * 9 << '\n';
    for (const std::int64_t e : solid) {
        out << 8;
        for (const std::int64_t n : mesh.element_nodes(e)) out << ' ' << n;
        out << '\n';
    }
    out << "CELL_TYPES " << solid.size() << '\n';
    for (std::size_t i = 0; i < solid.size(); ++i) out << "12\n";

    if (!cell_scalars.empty()) {
        out << "CELL_DATA " << solid.size() << '\n';
        for (const auto& [name, data] : cell_scalars) {
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for (const std::int64_t e : solid) out << format_double(data[e]) << '\n';
        }
    }
    if (!point_vectors.empty()) {
        out << "POINT_DATA " << mesh.node_count() << '\n';
        for (const auto& [name, data] : point_vectors) {
            out << "VECTORS " << name << " double\n";
            for (std::int64_t n = 0; n < mesh.node_count(); ++n)
                out << format_double(data(n, 0)) << ' ' << format_double(data(n, 1)) << ' '
                    << format_double(data(n, 2)) << '\n';
        }
    }
}

void write_rigidity_csv(const std::string& path, const RigidityTable& table) {
    std::ofstream out = open_out(path);
    out << "nu,mu,row_pair,col_pair,value\n";
    static const char* pairs[3] = {"11", "22", "12"};
    for (int nu = 0; nu < 2; ++nu)
        for (int mu = 0; mu < 2; ++mu)
            for (int gd = 0; gd < 3; ++gd)
                for (int ab = 0; ab < 3; ++ab)
                    out << nu << ',' << mu << ',' << pairs[gd] << ',' << pairs[ab] << ','
                        << format_double(table.blocks[std::size_t(nu)][std::size_t(mu)](gd, ab))
                        << '\n';
    out << "\npair,neutral_plane\n";
    for (int p = 0; p < 3; ++p)
        out << pairs[p] << ',' << format_double(table.neutral_planes[std::size_t(p)]) << '\n';
}

void write_profile_csv(const std::string& path, const LayerProfile& profile) {
    std::ofstream out = open_out(path);
    out << "z0,z1,matrix_mean,matrix_max,inclusion_mean,inclusion_max,periodicity_deviation\n";
    for (const SlabStats& s : profile.slabs)
        out << format_double(s.z0) << ',' << format_double(s.z1) << ','
            << format_double(s.matrix_mean) << ',' << format_double(s.matrix_max) << ','
            << format_double(s.inclusion_mean) << ',' << format_double(s.inclusion_max) << ','
            << format_double(s.periodicity_deviation) << '\n';
}

void write_decomposition_csv(const std::string& path, const SkinCoreDecomposition& d) {
    std::ofstream out = open_out(path);
    out << "zone,z0,z1,thickness,thickness_in_pitch\n";
    out << "top_skin," << format_double(d.top_skin.first) << ',' << format_double(d.top_skin.second)
        << ',' << format_double(d.top_thickness) << ',' << format_double(d.top_pitches) << '\n';
    out << "core," << format_double(d.core.first) << ',' << format_double(d.core.second) << ','
        << format_double(d.core.second - d.core.first) << ",\n";
    out << "bottom_skin," << format_double(d.bottom_skin.first) << ','
        << format_double(d.bottom_skin.second) << ',' << format_double(d.bottom_thickness) << ','
        << format_double(d.bottom_pitches) << '\n';
}

void write_similarity_csv(const std::string& path, const std::vector<LayerVerdict>& verdicts) {
    std::ofstream out = open_out(path);
    out << "layer,rep_z0,rep_z1,orig_z0,orig_z1,rel_l2,rel_max,verdict\n";
    for (const LayerVerdict& v : verdicts)
        out << v.layer << ',' << format_double(v.zone_rep.first) << ','
            << format_double(v.zone_rep.second) << ',' << format_double(v.zone_orig.first) << ','
            << format_double(v.zone_orig.second) << ',' << format_double(v.rel_l2) << ','
            << format_double(v.rel_max) << ','
            << (v.informative ? "informative" : "non-informative") << '\n';
}

void write_wrinkle_csv(const std::string& path, const std::vector<WrinkleReport>& reports) {
    std::ofstream out = open_out(path);
    out << "surface,amplitude,slope_rms,area_ratio,baseline_offset,period_mismatch,"
           "period_mismatch_rel,periodic\n";
    for (const WrinkleReport& r : reports)
        out << (r.surface == Surface::top ? "top" : "bottom") << ','
            << format_double(r.amplitude) << ',' << format_double(r.slope_rms) << ','
            << format_double(r.area_ratio) << ',' << format_double(r.baseline_offset) << ','
            << format_double(r.period_mismatch) << ',' << format_double(r.period_mismatch_rel)
            << ',' << (r.periodic ? 1 : 0) << '\n';
}

}  // namespace platecell
