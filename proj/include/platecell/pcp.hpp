#pragma once

#include <Eigen/Sparse>
#include <map>
#include <memory>
#include <vector>

#include "platecell/affine.hpp"
#include "platecell/mesh.hpp"

namespace platecell {

struct SolverOptions {
    double tolerance = 1e-9;  // relative residual
    int max_iterations = 0;   // 0 -> 50 * sqrt(dof count)
};

struct SolverReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
    std::int64_t reduced_dofs = 0;
};

/// Nodal solution Z of one periodicity-cell problem. Satisfies the affine
/// jump conditions across both in-plane face pairs, traction-free top and
/// bottom faces, and the zero volume-average rigid-body gauge. Nodes
/// touching only void elements carry zeros and node_active = 0.
struct CorrectorField {
    MacroMode mode;
    Eigen::Matrix<double, Eigen::Dynamic, 3> displacement;
    std::vector<std::uint8_t> node_active;
    SolverReport report;
};

/// Periodicity-cell elasticity problem on one mesh. Assembles the reduced
/// stiffness (slave dofs eliminated onto their periodic masters) and a
/// preconditioner once; each macroscopic mode is then a conjugate-gradient
/// solve against the mode's affine-jump right-hand side. Translations, the
/// only rigid modes compatible with the constraints, are removed by
/// projection. Safe for concurrent solve() calls of different modes.
class CellProblem {
  public:
    CellProblem(const HexMesh& mesh, const std::vector<ElasticityTensor>& phase_tensors,
                SolverOptions opts = {});
    CellProblem(const HexMesh& mesh, const std::map<std::string, ElasticityTensor>& materials,
                SolverOptions opts = {});

    CorrectorField solve(MacroMode mode) const;

    const HexMesh& mesh() const { return mesh_; }
    const std::vector<ElasticityTensor>& phase_tensors() const { return tensors_; }
    std::int64_t reduced_dofs() const { return 3 * n_reduced_; }

    ~CellProblem();
    CellProblem(CellProblem&&) noexcept;

  private:
    void assemble();

    HexMesh mesh_;
    std::vector<ElasticityTensor> tensors_;  // aligned with mesh.phase_names
    SolverOptions opts_;

    std::vector<std::int64_t> master_of_node_;
    std::vector<std::int64_t> reduced_of_master_;  // -1 for inactive nodes
    std::int64_t n_reduced_ = 0;
    Eigen::SparseMatrix<double> stiffness_;
    struct Preconditioner;
    std::unique_ptr<Preconditioner> precond_;
};

/// Convenience single-mode solve.
CorrectorField solve_pcp(const HexMesh& mesh,
                         const std::map<std::string, ElasticityTensor>& materials,
                         MacroMode mode, SolverOptions opts = {});

/// Periodic part of a corrector: Z / magnitude - xi at every node. Zero
/// jump across both periodic face pairs up to the constraint tolerance.
Eigen::Matrix<double, Eigen::Dynamic, 3> recover_periodic_part(const CorrectorField& corrector,
                                                               const HexMesh& mesh);

/// Corrector contribution to the physical displacement: epsilon times the
/// sum of macroscopic strain/curvature entries times the periodic part of
/// the matching unit-magnitude corrector. `entries` is indexed canonically
/// (11:0, 22:0, 12:0, 11:1, 22:1, 12:1); every nonzero entry needs its
/// corrector.
Eigen::Matrix<double, Eigen::Dynamic, 3> reconstruct_displacement(
    const std::array<double, 6>& entries, const std::vector<const CorrectorField*>& correctors,
    const HexMesh& mesh, double epsilon);

/// Resolve phase tensors for a mesh from a materials map (every phase name
/// must be present).
std::vector<ElasticityTensor> phase_tensors_for(
    const HexMesh& mesh, const std::map<std::string, ElasticityTensor>& materials);

}  // namespace platecell
