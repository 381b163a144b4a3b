#include "platecell/cell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "platecell/errors.hpp"

namespace platecell {

namespace {

// Signed distance to the nearest periodic image of the center coordinate.
double wrap_delta(double t, double center, double period) {
    double dt = t - center;
    dt -= period * std::round(dt / period);
    return dt;
}

double axis_coordinate(const InclusionLayer& inc, const Vec3& y) {
    return inc.axis == Axis::y1 ? y.x() : y.y();
}

double transverse_coordinate(const InclusionLayer& inc, const Vec3& y) {
    return inc.axis == Axis::y1 ? y.y() : y.x();
}

double segment_length(const CellSpec& spec, const InclusionLayer& inc) {
    return inc.axis_length < 0.0 ? spec.axis_period(inc.axis) : inc.axis_length;
}

bool inside_axis_segment(const CellSpec& spec, const InclusionLayer& inc, double s) {
    const double period = spec.axis_period(inc.axis);
    s -= period * std::floor(s / period);
    const double len = segment_length(spec, inc);
    return s >= inc.axis_start && s < inc.axis_start + len;
}

bool segments_intersect(double a0, double la, double b0, double lb) {
    return a0 < b0 + lb && b0 < a0 + la;
}

}  // namespace

int inclusion_at(const CellSpec& spec, const Vec3& y) {
    for (std::size_t idx = 0; idx < spec.inclusions.size(); ++idx) {
        const InclusionLayer& inc = spec.inclusions[idx];
        const double dz = y.z() - inc.center_y3;
        if (std::abs(dz) >= inc.radius) continue;
        const double dt = wrap_delta(transverse_coordinate(inc, y), inc.in_plane_offset,
                                     spec.transverse_period(inc.axis));
        if (dt * dt + dz * dz >= inc.radius * inc.radius) continue;
        if (!inside_axis_segment(spec, inc, axis_coordinate(inc, y))) continue;
        return static_cast<int>(idx);
    }
    return -1;
}

PhaseSample sample_phase(const CellSpec& spec, const Vec3& y) {
    PhaseSample s;
    const int idx = inclusion_at(spec, y);
    if (idx >= 0) {
        const InclusionLayer& inc = spec.inclusions[static_cast<std::size_t>(idx)];
        s.inclusion = idx;
        if (inc.kind == InclusionKind::channel) {
            s.is_void = true;
        } else {
            s.material = inc.material;
        }
        return s;
    }
    for (const MaterialSlab& slab : spec.slabs) {
        if (y.z() >= slab.z0 && y.z() < slab.z1) {
            s.material = slab.material;
            return s;
        }
    }
    s.material = spec.matrix_material;
    return s;
}

CellValidation validate_cell(const CellSpec& spec) {
    CellValidation v;
    auto err = [&v](const std::string& msg) { v.errors.push_back(msg); };

    if (!(spec.h1 > 0.0)) err("cell: h1 must be > 0");
    if (!(spec.h2 > 0.0)) err("cell: h2 must be > 0");
    if (!(spec.half_thickness > 0.0)) err("cell: half_thickness must be > 0");
    if (spec.matrix_material.empty()) err("cell: matrix material not set");
    if (!v.ok()) return v;  // geometric checks below need positive periods

    const double h = spec.half_thickness;

    for (std::size_t i = 0; i < spec.slabs.size(); ++i) {
        const MaterialSlab& s = spec.slabs[i];
        const std::string tag = "slab " + std::to_string(i);
        if (!(s.z1 > s.z0)) err(tag + ": empty interval");
        if (s.z0 < -h - 1e-12 || s.z1 > h + 1e-12) err(tag + ": outside the cell thickness");
        if (s.material.empty()) err(tag + ": material not set");
        for (std::size_t j = i + 1; j < spec.slabs.size(); ++j) {
            const MaterialSlab& t = spec.slabs[j];
            if (s.z0 < t.z1 - 1e-12 && t.z0 < s.z1 - 1e-12)
                err(tag + ": overlap with slab " + std::to_string(j));
        }
    }

    for (std::size_t i = 0; i < spec.inclusions.size(); ++i) {
        const InclusionLayer& a = spec.inclusions[i];
        const std::string tag = "inclusion " + std::to_string(i);
        if (!(a.radius > 0.0)) err(tag + ": non-positive radius");
        if (a.kind == InclusionKind::fiber && a.material.empty())
            err(tag + ": fiber without material");
        if (std::abs(a.center_y3) + a.radius >= h) err(tag + ": surface breach");
        if (a.axis_length >= 0.0) {
            if (!(a.axis_length > 0.0)) err(tag + ": empty axis segment");
            if (a.axis_start < 0.0 || a.axis_start + a.axis_length > spec.axis_period(a.axis) + 1e-12)
                err(tag + ": axis segment outside the cell");
        }

        for (std::size_t j = i + 1; j < spec.inclusions.size(); ++j) {
            const InclusionLayer& b = spec.inclusions[j];
            const double rsum = a.radius + b.radius;
            bool overlap = false;
            if (a.axis == b.axis) {
                const double dt = wrap_delta(a.in_plane_offset, b.in_plane_offset,
                                             spec.transverse_period(a.axis));
                const double dz = a.center_y3 - b.center_y3;
                const double d2 = dt * dt + dz * dz;
                if (d2 < rsum * rsum - 1e-12) {
                    const double la = segment_length(spec, a);
                    const double lb = segment_length(spec, b);
                    overlap = segments_intersect(a.axis_start, la, b.axis_start, lb);
                }
            } else {
                // Perpendicular runs cross in-plane; the axes pass at a
                // vertical distance |dz| where they meet.
                const double dz = a.center_y3 - b.center_y3;
                if (std::abs(dz) < rsum - 1e-12) {
                    const bool crosses = inside_axis_segment(
                                             spec, a, b.in_plane_offset) &&
                                         inside_axis_segment(spec, b, a.in_plane_offset);
                    overlap = crosses;
                }
            }
            if (overlap) err(tag + ": overlap with inclusion " + std::to_string(j));
        }
    }
    return v;
}

void require_valid_cell(const CellSpec& spec) {
    const CellValidation v = validate_cell(spec);
    if (v.ok()) return;
    std::string msg = "invalid cell:";
    for (const std::string& e : v.errors) msg += "\n  " + e;
    throw ValidationError(msg);
}

CellSpec tile_cell(const CellSpec& spec, int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw ValidationError("tile_cell: tile counts must be >= 1");
    if (k1 == 1 && k2 == 1) return spec;

    CellSpec tiled = spec;
    tiled.h1 = spec.h1 * k1;
    tiled.h2 = spec.h2 * k2;
    tiled.inclusions.clear();
    tiled.inclusions.reserve(spec.inclusions.size() * static_cast<std::size_t>(k1 * k2));
    for (const InclusionLayer& inc : spec.inclusions) {
        const double axis_period = spec.axis_period(inc.axis);
        const double len = inc.axis_length < 0.0 ? axis_period : inc.axis_length;
        const int k_axis = inc.axis == Axis::y1 ? k1 : k2;
        const int k_trans = inc.axis == Axis::y1 ? k2 : k1;
        const double trans_period = spec.transverse_period(inc.axis);
        for (int it = 0; it < k_trans; ++it) {
            for (int ia = 0; ia < k_axis; ++ia) {
                InclusionLayer copy = inc;
                copy.in_plane_offset = inc.in_plane_offset + it * trans_period;
                copy.axis_start = inc.axis_start + ia * axis_period;
                copy.axis_length = len;
                tiled.inclusions.push_back(copy);
            }
        }
    }
    return tiled;
}

double inclusion_volume_fraction(const CellSpec& spec) {
    double vol = 0.0;
    for (const InclusionLayer& inc : spec.inclusions)
        vol += std::numbers::pi * inc.radius * inc.radius * segment_length(spec, inc);
    return vol / spec.volume();
}

std::vector<double> layer_centers(const CellSpec& spec) {
    std::vector<double> centers;
    centers.reserve(spec.inclusions.size());
    for (const InclusionLayer& inc : spec.inclusions) centers.push_back(inc.center_y3);
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  centers.end());
    return centers;
}

double structural_pitch(const CellSpec& spec) {
    const std::vector<double> centers = layer_centers(spec);
    if (centers.size() < 2) return 0.0;
    double pitch = centers[1] - centers[0];
    for (std::size_t i = 1; i + 1 < centers.size(); ++i) {
        const double d = centers[i + 1] - centers[i];
        if (std::abs(d - pitch) > 1e-9 * std::max(1.0, pitch)) return 0.0;  // irregular stack
    }
    return pitch;
}

namespace {

struct LayerDescriptor {
    double center;
    InclusionKind kind;
    Axis axis;
    double radius;
    double offset;
};

bool same_layer(const LayerDescriptor& a, const LayerDescriptor& b) {
    return a.kind == b.kind && a.axis == b.axis && std::abs(a.radius - b.radius) < 1e-12 &&
           std::abs(a.offset - b.offset) < 1e-12;
}

}  // namespace

double stack_repeat_pitch(const CellSpec& spec) {
    const double pitch = structural_pitch(spec);
    if (pitch <= 0.0) return 0.0;

    std::vector<LayerDescriptor> layers;
    for (const InclusionLayer& inc : spec.inclusions)
        layers.push_back({inc.center_y3, inc.kind, inc.axis, inc.radius, inc.in_plane_offset});
    std::sort(layers.begin(), layers.end(),
              [](const LayerDescriptor& a, const LayerDescriptor& b) { return a.center < b.center; });

    const std::size_t n = layers.size();
    for (std::size_t p = 1; p < n; ++p) {
        bool repeats = true;
        for (std::size_t i = 0; i + p < n; ++i) {
            if (!same_layer(layers[i], layers[i + p]) ||
                std::abs(layers[i + p].center - layers[i].center - static_cast<double>(p) * pitch) >
                    1e-9) {
                repeats = false;
                break;
            }
        }
        if (repeats) return static_cast<double>(p) * pitch;
    }
    return 0.0;
}

std::vector<std::pair<double, double>> structural_layer_regions(const CellSpec& spec) {
    const std::vector<double> centers = layer_centers(spec);
    std::vector<std::pair<double, double>> regions;
    if (centers.empty()) return regions;
    const double h = spec.half_thickness;
    double lo = -h;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double hi = i + 1 < centers.size() ? 0.5 * (centers[i] + centers[i + 1]) : h;
        regions.emplace_back(lo, hi);
        lo = hi;
    }
    return regions;
}

CellSpec make_layered_plate(const LayeredPlateParams& p) {
    if (p.layer_count < 1) throw ValidationError("layered plate: layer_count must be >= 1");
    CellSpec spec;
    spec.h1 = p.h1;
    spec.h2 = p.h2;
    spec.matrix_material = p.matrix_material;

    const double pitch = 2.0 * p.radius + p.gap;
    spec.half_thickness =
        0.5 * ((p.layer_count - 1) * pitch + 2.0 * p.radius + 2.0 * p.cover);
    const double c0 = -spec.half_thickness + p.cover + p.radius;

    for (int i = 0; i < p.layer_count; ++i) {
        InclusionLayer inc;
        inc.kind = p.kind;
        if (!p.directions.empty()) {
            inc.axis = p.directions[static_cast<std::size_t>(i) % p.directions.size()];
        } else if (p.kind == InclusionKind::channel) {
            inc.axis = Axis::y1;  // channel systems run parallel to one axis
        } else {
            inc.axis = (i % 2 == 0) ? Axis::y1 : Axis::y2;
        }
        inc.center_y3 = c0 + i * pitch;
        inc.radius = p.radius;
        if (p.kind == InclusionKind::fiber) inc.material = p.inclusion_material;
        inc.in_plane_offset = !p.offsets.empty()
                                  ? p.offsets[static_cast<std::size_t>(i) % p.offsets.size()]
                                  : 0.5 * spec.transverse_period(inc.axis);
        spec.inclusions.push_back(inc);
    }
    return spec;
}

}  // namespace platecell
