#pragma once

#include <optional>
#include <string>
#include <vector>

#include "platecell/materials.hpp"

namespace platecell {

enum class InclusionKind { fiber, channel };

/// In-plane direction of a fiber or channel run.
enum class Axis : int { y1 = 1, y2 = 2 };

inline const char* axis_name(Axis a) { return a == Axis::y1 ? "y1" : "y2"; }

/// One layer of parallel cylindrical inclusions at depth center_y3.
/// A layer holds a single cylinder per cell period; it repeats with the
/// in-plane cell period transverse to its axis and runs continuously along
/// the axis (crossing a periodic face it re-enters on the opposite one).
/// axis_length < 0 means "full axis period"; tiling materialises segments
/// so that copies abut instead of overlapping.
struct InclusionLayer {
    InclusionKind kind = InclusionKind::fiber;
    Axis axis = Axis::y1;
    double center_y3 = 0.0;
    double radius = 0.0;
    std::string material;        // empty for channels (void)
    double in_plane_offset = 0.0;  // transverse center of the cylinder axis
    double axis_start = 0.0;
    double axis_length = -1.0;
};

/// Full-width homogeneous layer [z0, z1] of a given material. Used to build
/// laminates of homogeneous layers; overrides the matrix, inclusions win.
struct MaterialSlab {
    double z0 = 0.0;
    double z1 = 0.0;
    std::string material;
};

/// Periodicity cell [0,h1] x [0,h2] x [-h,h].
struct CellSpec {
    double h1 = 0.0;
    double h2 = 0.0;
    double half_thickness = 0.0;
    std::string matrix_material;
    std::vector<MaterialSlab> slabs;
    std::vector<InclusionLayer> inclusions;

    double thickness() const { return 2.0 * half_thickness; }
    double volume() const { return h1 * h2 * thickness(); }
    /// Cell period transverse to an inclusion axis.
    double transverse_period(Axis a) const { return a == Axis::y1 ? h2 : h1; }
    double axis_period(Axis a) const { return a == Axis::y1 ? h1 : h2; }
};

struct CellValidation {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

/// Checks all CellSpec/InclusionLayer invariants and returns the complete
/// list of violations (empty when valid).
CellValidation validate_cell(const CellSpec& spec);

/// Throwing variant used by operations whose precondition is a valid spec.
void require_valid_cell(const CellSpec& spec);

/// k1 x k2 copies of the inclusion pattern; periods scale to k1*h1, k2*h2.
CellSpec tile_cell(const CellSpec& spec, int k1, int k2);

/// Phase of a point of the cell, in-plane periodic.
struct PhaseSample {
    bool is_void = false;
    int inclusion = -1;          // index into spec.inclusions, -1 = background
    std::string material;        // empty iff void
};
PhaseSample sample_phase(const CellSpec& spec, const Vec3& y);

/// Index of the inclusion containing the point, -1 if none.
int inclusion_at(const CellSpec& spec, const Vec3& y);

/// Total inclusion volume fraction (inclusions are pairwise disjoint).
double inclusion_volume_fraction(const CellSpec& spec);

/// Sorted (ascending) inclusion-layer center depths.
std::vector<double> layer_centers(const CellSpec& spec);

/// Through-thickness spacing of adjacent structural layers (0 if fewer than
/// two layers).
double structural_pitch(const CellSpec& spec);

/// Smallest through-thickness translation mapping the interior layer stack
/// onto itself (direction/offset/radius pattern period times the pitch);
/// 0 when undefined (no repeat, or fewer than two layers).
double stack_repeat_pitch(const CellSpec& spec);

/// Structural layer regions [z0,z1], ascending; outermost regions extend to
/// the free surfaces. Empty when the cell has no inclusion layers.
std::vector<std::pair<double, double>> structural_layer_regions(const CellSpec& spec);

/// Parameters for the stacked-layer plate builder: layer_count parallel-fiber
/// (or channel) layers at pitch 2*radius + gap, matrix cover above and below
/// the outermost layers. Directions default to alternating y1/y2 from the
/// bottom layer up; offsets default to the transverse cell midpoint.
struct LayeredPlateParams {
    int layer_count = 1;
    InclusionKind kind = InclusionKind::fiber;
    double radius = 0.45;
    double gap = 0.1;
    double cover = 0.1;
    double h1 = 1.1;
    double h2 = 3.0;
    std::string matrix_material = "matrix";
    std::string inclusion_material = "fiber";  // ignored for channels
    std::vector<Axis> directions;              // bottom to top; empty = alternate
    std::vector<double> offsets;               // bottom to top; empty = centered
};

CellSpec make_layered_plate(const LayeredPlateParams& p);

}  // namespace platecell
