#pragma once

#include "platecell/stress.hpp"

namespace platecell {

/// Homogenized plate rigidities per unit cell area. blocks[nu][mu](gd, ab)
/// couples the unit-magnitude mode (ab, nu) to the test pair gd with
/// thickness moment mu; pair indices run over {11, 22, 12} and shear uses
/// the engineering convention (unit 12 magnitude = engineering shear 1).
/// Signs follow the classical laminate convention: blocks[0][0] is the
/// membrane stiffness (GPa*length), blocks[0][1] = blocks[1][0]^T the
/// membrane/bending coupling (GPa*length^2), blocks[1][1] the bending
/// stiffness (GPa*length^3); homogeneous-plate diagonals are positive.
struct RigidityTable {
    std::array<std::array<Eigen::Matrix3d, 2>, 2> blocks;
    std::array<double, 3> neutral_planes{0.0, 0.0, 0.0};

    RigidityTable() {
        for (auto& row : blocks)
            for (auto& block : row) block.setZero();
    }

    const Eigen::Matrix3d& membrane() const { return blocks[0][0]; }
    const Eigen::Matrix3d& coupling() const { return blocks[0][1]; }
    const Eigen::Matrix3d& bending() const { return blocks[1][1]; }

    /// Largest relative violation of A[nu][mu](gd,ab) = A[mu][nu](ab,gd).
    double max_reciprocity_error() const;
};

/// Gauss-point quadrature of the per-mode stresses against y3 moments over
/// the non-void elements. Requires all six unit-mode correctors (any
/// magnitudes; stresses are normalized per unit magnitude).
RigidityTable compute_rigidities(const HexMesh& mesh,
                                 const std::vector<ElasticityTensor>& phase_tensors,
                                 const std::vector<CorrectorField>& correctors);

RigidityTable compute_rigidities(const HexMesh& mesh,
                                 const std::map<std::string, ElasticityTensor>& materials,
                                 const std::vector<CorrectorField>& correctors);

/// Neutral-plane offset for an index pair (11, 22 or 12): the shift that
/// zeroes the pair's membrane/bending coupling diagonal.
double neutral_plane(const RigidityTable& table, int pair);

/// Parallel-axis transform of the table to coordinates y3' = y3 - h_shift.
RigidityTable shift_rigidities(const RigidityTable& table, double h_shift);

}  // namespace platecell
