#pragma once

#include "platecell/stress.hpp"

namespace platecell {

/// Which zone of the original plate the representative's middle layer
/// replicates (and, under bending, which surface the representative is
/// held flush with).
enum class RepresentativeAlignment { top, center, bottom };

/// 3-layer representative cell: top layer replicating the original's top
/// structural layer, bottom replicating the bottom one, middle replicating
/// one interior layer; covers and layer pitch preserved, half thickness
/// recomputed. Requires at least 3 structural layers and a regular pitch.
CellSpec build_representative(const CellSpec& spec,
                              RepresentativeAlignment align = RepresentativeAlignment::top);

/// Zone-to-zone similarity of matrix-phase von Mises fields. Zones are
/// y3 intervals spanning whole element layers with congruent
/// discretizations; they are registered by the y3 translation aligning the
/// zone starts and compared element by element.
struct SimilarityReport {
    std::pair<double, double> zone_a{0.0, 0.0}, zone_b{0.0, 0.0};
    double rel_l2 = 0.0;
    double rel_max = 0.0;
    bool informative = false;  // rel_l2 <= threshold
};

SimilarityReport compare_sss(const HexMesh& mesh_a, const StressField& field_a,
                             std::pair<double, double> zone_a, const HexMesh& mesh_b,
                             const StressField& field_b, std::pair<double, double> zone_b,
                             double threshold = 0.05);

/// Verdicts for the three representative layers (numbered 1..3 from the
/// top) against their counterpart zones of the original plate. For tension
/// the counterparts are the zones each layer replicates (top, interior,
/// bottom); for bending they are the positionally aligned zones at the
/// shared surface, which brands the far layer non-informative.
struct LayerVerdict {
    int layer = 0;  // 1..3 from the top
    std::pair<double, double> zone_rep{0.0, 0.0}, zone_orig{0.0, 0.0};
    double rel_l2 = 0.0, rel_max = 0.0;
    bool informative = false;
};

std::vector<LayerVerdict> classify_informative(
    const CellSpec& rep_spec, const HexMesh& rep_mesh, const StressField& rep_field,
    const CellSpec& orig_spec, const HexMesh& orig_mesh, const StressField& orig_field,
    MacroMode mode, RepresentativeAlignment align, double threshold = 0.05);

}  // namespace platecell
