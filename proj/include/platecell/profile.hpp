#pragma once

#include "platecell/stress.hpp"

namespace platecell {

/// Per-slab (one element layer in y3) von Mises statistics. The matrix
/// phase is everything that is neither an inclusion nor void; slab
/// materials of laminates count as matrix.
struct SlabStats {
    double z0 = 0.0, z1 = 0.0;
    double matrix_mean = 0.0, matrix_max = 0.0;
    double inclusion_mean = 0.0, inclusion_max = 0.0;
    /// Relative L2 difference between this slab's in-plane von Mises
    /// pattern and the pattern one comparison pitch deeper into the plate,
    /// both with their in-plane means removed; 0 where no deeper slab
    /// exists. A field that depends on y3 only gives 0 in every slab.
    double periodicity_deviation = 0.0;
};

struct LayerProfile {
    std::vector<SlabStats> slabs;  // ascending y3
    double pitch = 0.0;            // comparison pitch used
};

/// Pitch used for the slab periodicity comparison: the stack's repeat
/// distance when the inclusion layers form a periodic pattern, otherwise
/// the half thickness.
double default_comparison_pitch(const CellSpec& spec);

LayerProfile layer_profile(const HexMesh& mesh, const StressField& field, double pitch);

struct BoundaryLayerThickness {
    double top = 0.0, bottom = 0.0;           // length units
    double top_pitches = 0.0, bottom_pitches = 0.0;  // multiples of S
};

/// Depth of the outermost contiguous run of slabs with periodicity
/// deviation above the threshold, per surface.
BoundaryLayerThickness boundary_layer_thickness(const LayerProfile& profile, double pitch_s,
                                                double threshold = 0.05);

struct SkinCoreDecomposition {
    std::pair<double, double> bottom_skin, core, top_skin;  // partition of [-h, h]
    double top_thickness = 0.0, bottom_thickness = 0.0;
    double top_pitches = 0.0, bottom_pitches = 0.0;
};

/// Layer-granular decomposition: one structural layer per skin, the rest is
/// the core. Fails for plates with fewer than three structural layers.
SkinCoreDecomposition skin_core_decompose(const CellSpec& spec, double pitch_s = 0.0);

}  // namespace platecell
