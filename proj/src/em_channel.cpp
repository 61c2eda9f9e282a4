// em_channel.cpp - dipole field, eddy attenuation, mutual inductance
#include "miseclab/em_channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "miseclab/errors.hpp"

namespace miseclab {

const char* to_string(CoilTopology topology) {
    return topology == CoilTopology::series_capacitor ? "series_capacitor"
                                                      : "parallel_capacitor";
}

void validate_coil(const CoilSpec& coil, const std::string& label) {
    if (!(coil.radius > 0.0)) throw std::invalid_argument(label + ": radius must be > 0");
    if (coil.turns < 1) throw std::invalid_argument(label + ": turns must be >= 1");
    if (!(coil.inductance > 0.0)) throw std::invalid_argument(label + ": inductance must be > 0");
    if (!(coil.capacitance > 0.0)) throw std::invalid_argument(label + ": capacitance must be > 0");
    if (coil.wire_resistance < 0.0) throw std::invalid_argument(label + ": wire_resistance must be >= 0");
    if (coil.load_resistance < 0.0) throw std::invalid_argument(label + ": load_resistance must be >= 0");
}

void validate_medium(const Medium& medium) {
    if (medium.conductivity < 0.0)
        throw std::invalid_argument("medium: conductivity must be >= 0");
    if (!(medium.relative_permeability > 0.0))
        throw std::invalid_argument("medium: relative_permeability must be > 0");
    if (!(medium.noise_power > 0.0))
        throw std::invalid_argument("medium: noise_power must be > 0");
}

double skin_depth(double frequency, const Medium& medium) {
    if (!(frequency > 0.0)) throw std::invalid_argument("skin_depth: frequency must be > 0");
    if (medium.conductivity < 0.0)
        throw std::invalid_argument("skin_depth: conductivity must be >= 0");
    if (medium.conductivity == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(std::numbers::pi * frequency * mu_0 *
                           medium.relative_permeability * medium.conductivity);
}

namespace {

// exp(-distance/delta); exactly 1 in a non-conducting medium
double eddy_factor(double distance, double frequency, const Medium& medium) {
    if (medium.conductivity == 0.0) return 1.0;
    return std::exp(-distance / skin_depth(frequency, medium));
}

} // namespace

double axial_b_field(const CoilSpec& coil, double current, double distance,
                     double angle_theta, double frequency, const Medium& medium) {
    if (distance < 0.0) throw std::invalid_argument("axial_b_field: distance must be >= 0");
    const double r2 = coil.radius * coil.radius;
    const double geometric = mu_0 * medium.relative_permeability * coil.turns * current *
                             r2 * std::cos(angle_theta) /
                             (2.0 * std::pow(r2 + distance * distance, 1.5));
    return geometric *
           eddy_factor(std::sqrt(distance * distance + r2), frequency, medium);
}

FieldSample dipole_b_field(const CoilSpec& coil, const NodePose& pose, Complex current,
                           const Vec3& point, double frequency, const Medium& medium) {
    const Vec3 d = point - pose.position;
    const double dist = d.norm();
    if (dist == 0.0)
        throw degenerate_geometry_error("dipole_b_field: field point coincides with the coil center");
    const Vec3 dhat = d * (1.0 / dist);
    const Vec3 mhat = pose.axis;
    // 3 (m.d) d - m, scaled by mu N I A / (4 pi D^3) and the eddy factor
    const Vec3 pattern = dhat * (3.0 * mhat.dot(dhat)) - mhat;
    const Complex scale = current *
                          (mu_0 * medium.relative_permeability *
                           static_cast<double>(coil.turns) * coil.area() /
                           (4.0 * std::numbers::pi * dist * dist * dist) *
                           eddy_factor(dist, frequency, medium));
    return {scale * pattern.x, scale * pattern.y, scale * pattern.z};
}

Complex flux_through(const CoilSpec& coil, const NodePose& pose, const FieldSample& field) {
    return static_cast<double>(coil.turns) * coil.area() * field.dot(pose.axis);
}

Complex induced_voltage(Complex flux, double frequency) {
    if (!(frequency > 0.0)) throw std::invalid_argument("induced_voltage: frequency must be > 0");
    return 2.0 * std::numbers::pi * frequency * flux;
}

double mutual_inductance_coaxial(const CoilSpec& tx, const CoilSpec& rx, double distance,
                                 double relative_permeability) {
    if (distance < 0.0)
        throw std::invalid_argument("mutual_inductance_coaxial: distance must be >= 0");
    const double rt2 = tx.radius * tx.radius;
    const double rr2 = rx.radius * rx.radius;
    return relative_permeability * mu_0 * std::numbers::pi * tx.turns * rt2 * rx.turns * rr2 /
           (2.0 * std::sqrt(std::pow(rt2 + distance * distance, 3)));
}

double mutual_inductance_general(const CoilSpec& coil_a, const NodePose& pose_a,
                                 const CoilSpec& coil_b, const NodePose& pose_b,
                                 const Medium& medium, double frequency) {
    const Vec3 d = pose_b.position - pose_a.position;
    const double dist = d.norm();
    if (dist == 0.0)
        throw degenerate_geometry_error("mutual_inductance_general: coil centers coincide");
    const Vec3 dhat = d * (1.0 / dist);
    // grouping the axis projections first keeps the value bit-identical
    // under argument swap (the projections only flip sign together)
    const double orientation = 3.0 * (pose_a.axis.dot(dhat) * pose_b.axis.dot(dhat)) -
                               pose_a.axis.dot(pose_b.axis);
    const double winding_a = static_cast<double>(coil_a.turns) * coil_a.area();
    const double winding_b = static_cast<double>(coil_b.turns) * coil_b.area();
    return mu_0 * medium.relative_permeability * (winding_a * winding_b) /
           (4.0 * std::numbers::pi * dist * dist * dist) * orientation *
           eddy_factor(dist, frequency, medium);
}

double coupling_coefficient(double mutual, double inductance_a, double inductance_b) {
    if (!(inductance_a > 0.0) || !(inductance_b > 0.0))
        throw std::invalid_argument("coupling_coefficient: inductances must be > 0");
    return std::abs(mutual) / std::sqrt(inductance_a * inductance_b);
}

double magnetic_moment(const CoilSpec& coil, double current, double theta) {
    return static_cast<double>(coil.turns) * current * coil.area() * std::cos(theta);
}

bool near_field(const CoilSpec& coil_a, const NodePose& pose_a,
                const CoilSpec& coil_b, const NodePose& pose_b) {
    const double dist = (pose_b.position - pose_a.position).norm();
    return dist < 3.0 * std::max(coil_a.radius, coil_b.radius);
}

} // namespace miseclab
