// em_channel.hpp - analytic magnetic-dipole channel: fields, flux, skin
// depth, induced voltage, mutual inductance
#pragma once

#include <complex>
#include <numbers>

#include "miseclab/geometry.hpp"
#include "miseclab/vec3.hpp"

namespace miseclab {

using Complex = std::complex<double>;

inline constexpr double mu_0 = 4.0e-7 * std::numbers::pi; // H/m

enum class CoilTopology { series_capacitor, parallel_capacitor };

const char* to_string(CoilTopology topology);

/// Physical and electrical description of one coil.
struct CoilSpec {
    double radius = 0.127;          // m
    int turns = 30;
    double inductance = 329.75e-6;  // H
    double capacitance = 7.681e-9;  // F
    CoilTopology topology = CoilTopology::parallel_capacitor;
    double wire_resistance = 1.0;   // ohm
    double load_resistance = 50.0;  // ohm, 0 for the driven coil

    double area() const { return std::numbers::pi * radius * radius; }
};

/// Throws std::invalid_argument naming the offending field.
void validate_coil(const CoilSpec& coil, const std::string& label = "coil");

/// Propagation environment.
struct Medium {
    double conductivity = 0.01;         // S/m
    double relative_permeability = 1.0;
    double noise_power = 1e-12;         // W, receiver noise floor
};

void validate_medium(const Medium& medium);

/// Complex B-field phasor at a point, tesla.
struct FieldSample {
    Complex x;
    Complex y;
    Complex z;

    Complex dot(const Vec3& v) const { return x * v.x + y * v.y + z * v.z; }
};

/// Skin depth 1/sqrt(pi f mu sigma); +inf for a non-conducting medium.
double skin_depth(double frequency, const Medium& medium);

/// On-axis field of a driven loop at distance d with misalignment theta,
/// including the eddy-current attenuation exp(-sqrt(d^2+r^2)/delta).
double axial_b_field(const CoilSpec& coil, double current, double distance,
                     double angle_theta, double frequency, const Medium& medium);

/// Point-dipole field of a driven coil at an arbitrary field point, with the
/// same eddy factor applied over the center distance.
FieldSample dipole_b_field(const CoilSpec& coil, const NodePose& pose, Complex current,
                           const Vec3& point, double frequency, const Medium& medium);

/// Flux linkage N * A * (B . axis) of a pickup coil in a uniform local field.
Complex flux_through(const CoilSpec& coil, const NodePose& pose, const FieldSample& field);

/// Open-circuit voltage phasor 2*pi*f*flux.
Complex induced_voltage(Complex flux, double frequency);

/// Coaxial two-coil mutual inductance mu pi N1 r1^2 N2 r2^2 / (2 (r1^2+d^2)^{3/2}).
double mutual_inductance_coaxial(const CoilSpec& tx, const CoilSpec& rx, double distance,
                                 double relative_permeability = 1.0);

/// Dipole-coupling mutual inductance for arbitrary positions/orientations,
/// signed, with the eddy factor. Reduces to the coaxial form in the far field.
double mutual_inductance_general(const CoilSpec& coil_a, const NodePose& pose_a,
                                 const CoilSpec& coil_b, const NodePose& pose_b,
                                 const Medium& medium, double frequency);

/// |M| / sqrt(La Lb).
double coupling_coefficient(double mutual, double inductance_a, double inductance_b);

/// N I A cos(theta).
double magnetic_moment(const CoilSpec& coil, double current, double theta);

/// True when the separation is under 3x the larger coil radius, where the
/// point-dipole approximation degrades.
bool near_field(const CoilSpec& coil_a, const NodePose& pose_a,
                const CoilSpec& coil_b, const NodePose& pose_b);

} // namespace miseclab
