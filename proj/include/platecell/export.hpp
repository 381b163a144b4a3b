#pragma once

#include "platecell/profile.hpp"
#include "platecell/representative.hpp"
#include "platecell/rigidity.hpp"
#include "platecell/wrinkle.hpp"

namespace platecell {

/// %.17g formatting shared by every writer; lossless for doubles.
std::string format_double(double v);

/// Per-element CSV with the fixed header
/// x,y,z,phase,s11,s22,s33,s12,s23,s13,von_mises (phase -1 = void).
void write_stress_csv(const std::string& path, const HexMesh& mesh, const StressField& field);

struct StressCsv {
    Eigen::Matrix<double, Eigen::Dynamic, 3> centroids;
    std::vector<int> phase;
    Eigen::Matrix<double, Eigen::Dynamic, 6> stress;  // Voigt order
    Eigen::VectorXd von_mises;
};
StressCsv read_stress_csv(const std::string& path);

/// ASCII legacy VTK unstructured grid: all nodes, hexahedral cells with
/// voids omitted, CELL_DATA scalars and optional POINT_DATA vectors.
void write_vtk(const std::string& path, const HexMesh& mesh,
               const std::vector<std::pair<std::string, Eigen::VectorXd>>& cell_scalars,
               const std::vector<std::pair<std::string, Eigen::Matrix<double, Eigen::Dynamic, 3>>>&
                   point_vectors = {});

void write_rigidity_csv(const std::string& path, const RigidityTable& table);
void write_profile_csv(const std::string& path, const LayerProfile& profile);
void write_decomposition_csv(const std::string& path, const SkinCoreDecomposition& decomp);
void write_similarity_csv(const std::string& path, const std::vector<LayerVerdict>& verdicts);
void write_wrinkle_csv(const std::string& path, const std::vector<WrinkleReport>& reports);

}  // namespace platecell
