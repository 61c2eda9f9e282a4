// geometry.cpp - poses, unit conversion, sweep generators
#include "miseclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "miseclab/errors.hpp"

namespace miseclab {

namespace {
constexpr double k_ft_per_m = 0.3048;
// slack so that e.g. (1.2192 - 0) / 0.1524 lands on the intended grid size
constexpr double k_grid_eps = 1e-9;
} // namespace

NodePose make_pose(const Vec3& position, const Vec3& axis) {
    if (!position.finite() || !axis.finite())
        throw std::invalid_argument("pose fields must be finite");
    return NodePose{position, axis.normalized()};
}

double ft_to_m(double feet) {
    if (!std::isfinite(feet)) throw std::invalid_argument("ft_to_m: non-finite input");
    return feet * k_ft_per_m;
}

double m_to_ft(double meters) {
    if (!std::isfinite(meters)) throw std::invalid_argument("m_to_ft: non-finite input");
    return meters / k_ft_per_m;
}

double deg_to_rad(double degrees) { return degrees * std::numbers::pi / 180.0; }
double rad_to_deg(double radians) { return radians * 180.0 / std::numbers::pi; }

double angle_between(const Vec3& a, const Vec3& b) {
    if (!a.finite() || !b.finite())
        throw std::invalid_argument("angle_between: non-finite input");
    const double d = std::clamp(a.dot(b), -1.0, 1.0);
    return std::acos(d);
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    return v * c + axis.cross(v) * s + axis * (axis.dot(v) * (1.0 - c));
}

Vec3 plane_normal(SweepPlane plane) {
    switch (plane) {
        case SweepPlane::xy: return {0.0, 0.0, 1.0};
        case SweepPlane::xz: return {0.0, 1.0, 0.0};
        case SweepPlane::yz: return {1.0, 0.0, 0.0};
    }
    throw std::invalid_argument("unknown sweep plane");
}

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::translate: return "translate";
        case SweepKind::orbit: return "orbit";
        case SweepKind::self_rotate: return "self_rotate";
        case SweepKind::standoff: return "standoff";
    }
    return "?";
}

void validate_sweep(const SweepSpec& spec) {
    if (spec.subject.empty())
        throw config_error("sweep: subject node id is required");
    if (!(spec.step > 0.0))
        throw config_error("sweep: step must be > 0");
    if (!(spec.start <= spec.stop))
        throw config_error("sweep: start must be <= stop");
    if (spec.kind == SweepKind::orbit || spec.kind == SweepKind::self_rotate) {
        if (spec.start < 0.0 || spec.stop > 360.0)
            throw config_error("sweep: angles must lie within [0, 360] degrees");
    }
    if (spec.kind == SweepKind::translate && spec.direction.norm() == 0.0)
        throw config_error("sweep: translate direction must be non-zero");
    if ((spec.kind == SweepKind::orbit || spec.kind == SweepKind::standoff) &&
        spec.anchor.empty() && !spec.has_anchor_point)
        throw config_error("sweep: orbit/standoff requires an anchor");
}

std::size_t sweep_point_count(const SweepSpec& spec) {
    return static_cast<std::size_t>(
               std::floor((spec.stop - spec.start) / spec.step + k_grid_eps)) + 1;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    const std::size_t n = sweep_point_count(spec);
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        values.push_back(spec.start + static_cast<double>(i) * spec.step);
    return values;
}

namespace {

Vec3 resolve_anchor(const SweepSpec& spec, const std::map<std::string, NodePose>& base) {
    if (!spec.anchor.empty()) {
        auto it = base.find(spec.anchor);
        if (it == base.end())
            throw not_found_error("sweep anchor node '" + spec.anchor + "' does not exist");
        return it->second.position;
    }
    if (spec.has_anchor_point) return spec.anchor_point;
    throw config_error("sweep: no anchor given");
}

} // namespace

std::vector<NodePose> generate_sweep(const SweepSpec& spec,
                                     const std::map<std::string, NodePose>& base) {
    validate_sweep(spec);
    auto it = base.find(spec.subject);
    if (it == base.end())
        throw not_found_error("sweep subject node '" + spec.subject + "' does not exist");
    const NodePose start_pose = it->second;
    const std::vector<double> values = sweep_values(spec);

    std::vector<NodePose> poses;
    poses.reserve(values.size());

    switch (spec.kind) {
        case SweepKind::translate: {
            const Vec3 dir = spec.direction.normalized();
            for (double v : values)
                poses.push_back({start_pose.position + dir * (v - spec.start), start_pose.axis});
            break;
        }
        case SweepKind::orbit: {
            const Vec3 anchor = resolve_anchor(spec, base);
            const Vec3 r0 = start_pose.position - anchor;
            const double radius = r0.norm();
            if (radius == 0.0)
                throw degenerate_geometry_error("orbit radius is zero (subject coincides with anchor)");
            const Vec3 normal = plane_normal(spec.plane);
            for (double v : values) {
                // negative angle reproduces the clockwise convention of the
                // built-in configurations: (-R,0,0) passes (0,+R,0) at 90 deg
                const Vec3 offset = rotate_about(r0, normal, -deg_to_rad(v));
                const Vec3 position = anchor + offset;
                poses.push_back({position, (anchor - position).normalized()});
            }
            break;
        }
        case SweepKind::self_rotate: {
            const Vec3 normal = plane_normal(spec.plane);
            for (double v : values)
                poses.push_back({start_pose.position,
                                 rotate_about(start_pose.axis, normal, deg_to_rad(v)).normalized()});
            break;
        }
        case SweepKind::standoff: {
            const Vec3 anchor = resolve_anchor(spec, base);
            const Vec3 r0 = start_pose.position - anchor;
            if (r0.norm() == 0.0)
                throw degenerate_geometry_error("standoff direction undefined (subject coincides with anchor)");
            const Vec3 dir = r0.normalized();
            for (double v : values)
                poses.push_back({anchor + dir * v, start_pose.axis});
            break;
        }
    }
    return poses;
}

} // namespace miseclab
