// geometry.hpp - node poses, unit conversion, and sweep generators
#pragma once

#include <map>
#include <string>
#include <vector>

#include "miseclab/vec3.hpp"

namespace miseclab {

/// Position plus the unit symmetry axis of a coil.
struct NodePose {
    Vec3 position;
    Vec3 axis{1.0, 0.0, 0.0};
};

/// Builds a pose, normalizing the axis. Throws std::invalid_argument on
/// non-finite input or a zero axis.
NodePose make_pose(const Vec3& position, const Vec3& axis);

double ft_to_m(double feet);
double m_to_ft(double meters);
double deg_to_rad(double degrees);
double rad_to_deg(double radians);

/// Angle between two unit vectors, in [0, pi].
double angle_between(const Vec3& a, const Vec3& b);

/// Rodrigues rotation of v about the unit vector axis.
Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle_rad);

enum class SweepKind { translate, orbit, self_rotate, standoff };
enum class SweepPlane { xy, xz, yz };

Vec3 plane_normal(SweepPlane plane);

const char* to_string(SweepKind kind);

/// One swept parameter: which node moves, how, and over what grid.
/// start/stop/step are meters for translate/standoff and degrees for
/// orbit/self_rotate.
struct SweepSpec {
    SweepKind kind = SweepKind::translate;
    std::string subject;
    std::string anchor;       // node id; empty means anchor_point is used
    Vec3 anchor_point;
    bool has_anchor_point = false;
    Vec3 direction{1.0, 0.0, 0.0};  // translate only
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    SweepPlane plane = SweepPlane::xy;
};

/// Throws config_error when grid or kind-specific constraints are violated.
void validate_sweep(const SweepSpec& spec);

std::size_t sweep_point_count(const SweepSpec& spec);

/// The grid start, start+step, ..., up to stop (inclusive within fp slack).
std::vector<double> sweep_values(const SweepSpec& spec);

/// Poses of the subject node, one per sweep value.
///
/// translate:   position advances along `direction` by (value - start);
///              axis unchanged.
/// orbit:       subject circles the anchor in `plane` at fixed radius; the
///              axis always points at the anchor.
/// self_rotate: position fixed; axis rotated in `plane` by the sweep angle
///              from its initial direction.
/// standoff:    subject moves along the anchor->subject ray; value is the
///              distance from the anchor; axis unchanged.
std::vector<NodePose> generate_sweep(const SweepSpec& spec,
                                     const std::map<std::string, NodePose>& base);

} // namespace miseclab
