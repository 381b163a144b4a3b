#pragma once

#include "platecell/materials.hpp"

namespace platecell {

/// Macroscopic in-plane mode: unit membrane strain (nu = 0) or unit
/// curvature/torsion (nu = 1) for the index pair 11, 22 or 12, scaled by
/// magnitude. For the 12 pair a unit magnitude means tensor strain
/// e12 = 1/2, i.e. engineering shear 1.
struct MacroMode {
    int pair = 11;  // 11, 22 or 12
    int nu = 0;     // 0 = tension/shear, 1 = bending/torsion
    double magnitude = 1.0;

    int alpha() const { return pair / 10 - 1; }  // 0-based first index
    int beta() const { return pair % 10 - 1; }   // 0-based second index
    /// 0..2 within {11, 22, 12}.
    int pair_index() const { return pair == 11 ? 0 : (pair == 22 ? 1 : 2); }
    /// 0..5 over all six modes, tension block first.
    int index() const { return 3 * nu + pair_index(); }
    std::string label() const { return std::to_string(pair) + ":" + std::to_string(nu); }

    static MacroMode parse(const std::string& text);  // "AB:NU" with optional ":MAG"
    static std::array<MacroMode, 6> all();            // unit magnitude, canonical order
    static bool valid_pair(int pair) { return pair == 11 || pair == 22 || pair == 12; }
};

/// Closed-form displacement whose symmetric gradient is y3^nu times the
/// symmetrized unit strain of the mode pair. Carries per-pair affine jumps
/// across the periodic faces; for nu = 1 the jump varies over a face (it is
/// an affine function of the master-node position), so jumps are evaluated
/// per node pair.
class AffineField {
  public:
    explicit AffineField(MacroMode mode) : mode_(mode) {}

    const MacroMode& mode() const { return mode_; }

    /// xi(y) for unit magnitude.
    Vec3 evaluate(const Vec3& y) const;

    /// Engineering strain of xi at y (unit magnitude): y3^nu * unit(pair).
    Vec6 strain(const Vec3& y) const;

    /// xi(master + period e_axis) - xi(master); axis is 1 or 2.
    Vec3 jump(const Vec3& master, int axis, double period) const;

  private:
    MacroMode mode_;
};

inline AffineField unit_strain_field(MacroMode mode) { return AffineField(mode); }

}  // namespace platecell
