#include <cmath>
#include <doctest.h>
#include <limits>
#include <random>

#include "miseclab/em_channel.hpp"
#include "miseclab/errors.hpp"
#include "miseclab/scenario.hpp"

using namespace miseclab;

namespace {

const Vec3 x_axis{1.0, 0.0, 0.0};
const Vec3 y_axis{0.0, 1.0, 0.0};

Medium fresh_water() { return Medium{0.01, 1.0, 1e-12}; }
Medium vacuum() { return Medium{0.0, 1.0, 1e-12}; }
Medium seawater() { return Medium{4.0, 1.0, 1e-12}; }

CoilSpec table1() { return table1_pickup_coil(); }

} // namespace

TEST_CASE("skin depth against the closed form") {
    // independently evaluated 1/sqrt(pi f mu0 mur sigma)
    CHECK(skin_depth(100e3, fresh_water()) ==
          doctest::Approx(15.915494309189537).epsilon(1e-12));
    CHECK(skin_depth(100e3, seawater()) ==
          doctest::Approx(0.7957747154594768).epsilon(1e-12));
    CHECK(std::isinf(skin_depth(100e3, vacuum())));
    CHECK_THROWS_AS(skin_depth(0.0, fresh_water()), std::invalid_argument);
    Medium bad = fresh_water();
    bad.conductivity = -1.0;
    CHECK_THROWS_AS(skin_depth(100e3, bad), std::invalid_argument);
}

TEST_CASE("axial field values and identities") {
    const CoilSpec coil = table1();

    // theta = 90 deg kills the field
    CHECK(std::abs(axial_b_field(coil, 1.0, 1.0, std::numbers::pi / 2, 100e3, vacuum())) <
          1e-20);

    // independently evaluated mu0 N I r^2 / (2 (r^2+d^2)^{3/2}) at 4 ft
    CHECK(axial_b_field(coil, 1.0, 1.2192, 0.0, 100e3, vacuum()) ==
          doctest::Approx(1.6506431058075283e-07).epsilon(1e-12));

    // conductive result is exactly the lossless one times the eddy factor
    const double d = 2.0;
    const double lossless = axial_b_field(coil, 1.0, d, 0.0, 100e3, vacuum());
    const double lossy = axial_b_field(coil, 1.0, d, 0.0, 100e3, fresh_water());
    const double factor = std::exp(-std::sqrt(d * d + coil.radius * coil.radius) /
                                   skin_depth(100e3, fresh_water()));
    CHECK(lossy == doctest::Approx(lossless * factor).epsilon(1e-15));

    // at sqrt(d^2+r^2) = delta the two runs differ by exactly e^-1
    const double delta = skin_depth(100e3, fresh_water());
    const double d_at_delta = std::sqrt(delta * delta - coil.radius * coil.radius);
    const double ratio = axial_b_field(coil, 1.0, d_at_delta, 0.0, 100e3, fresh_water()) /
                         axial_b_field(coil, 1.0, d_at_delta, 0.0, 100e3, vacuum());
    CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(axial_b_field(coil, 1.0, -0.5, 0.0, 100e3, vacuum()),
                    std::invalid_argument);
}

TEST_CASE("dipole field agrees with the axial form on axis") {
    const CoilSpec coil = table1();
    const NodePose pose = make_pose({0, 0, 0}, x_axis);
    const double d = 10.0 * coil.radius;

    const FieldSample sample = dipole_b_field(coil, pose, 1.0, {d, 0, 0}, 100e3, vacuum());
    const double axial = axial_b_field(coil, 1.0, d, 0.0, 100e3, vacuum());
    const double rel = std::abs(std::abs(sample.x) - axial) / axial;

    // the exact discrepancy of the two models is (1 + (r/d)^2)^{3/2} - 1
    const double bound = std::pow(1.0 + 0.01, 1.5) - 1.0;
    CHECK(rel == doctest::Approx(bound).epsilon(1e-6));
    CHECK(rel < 0.0151);
    CHECK(std::abs(sample.y) < 1e-25);
    CHECK(std::abs(sample.z) < 1e-25);
}

TEST_CASE("dipole field equatorial point is antiparallel at half magnitude") {
    const CoilSpec coil = table1();
    const NodePose pose = make_pose({0, 0, 0}, x_axis);
    const double d = 3.0;

    const FieldSample on_axis = dipole_b_field(coil, pose, 1.0, {d, 0, 0}, 100e3, vacuum());
    const FieldSample equatorial =
        dipole_b_field(coil, pose, 1.0, {0, d, 0}, 100e3, vacuum());
    CHECK(equatorial.x.real() < 0.0);
    CHECK(std::abs(equatorial.x) ==
          doctest::Approx(std::abs(on_axis.x) / 2.0).epsilon(1e-12));
    CHECK(std::abs(equatorial.y) < 1e-25);
}

TEST_CASE("dipole field edge cases") {
    const CoilSpec coil = table1();
    const NodePose pose = make_pose({0, 0, 0}, x_axis);

    const FieldSample zero = dipole_b_field(coil, pose, 0.0, {1, 0, 0}, 100e3, vacuum());
    CHECK(std::abs(zero.x) == 0.0);

    CHECK_THROWS_AS(dipole_b_field(coil, pose, 1.0, {0, 0, 0}, 100e3, vacuum()),
                    degenerate_geometry_error);
}

TEST_CASE("far-field decay is a pure inverse cube") {
    const CoilSpec coil = table1();
    const NodePose pose = make_pose({0, 0, 0}, x_axis);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(1.0, 20.0);
    for (int i = 0; i < 30; ++i) {
        const double d = dist(rng);
        const FieldSample near = dipole_b_field(coil, pose, 1.0, {d, 0.3, 0.1}, 100e3, vacuum());
        const FieldSample far =
            dipole_b_field(coil, pose, 1.0, {2 * d, 0.6, 0.2}, 100e3, vacuum());
        const double mag_near = std::sqrt(std::norm(near.x) + std::norm(near.y) + std::norm(near.z));
        const double mag_far = std::sqrt(std::norm(far.x) + std::norm(far.y) + std::norm(far.z));
        CHECK(std::abs(mag_far * 8.0 - mag_near) <= 1e-9 * mag_near);
    }
}

TEST_CASE("flux through a pickup coil") {
    const CoilSpec coil = table1();
    const NodePose pose = make_pose({0, 0, 0}, x_axis);

    const FieldSample parallel{1e-6, 0.0, 0.0};
    // independently evaluated 30 * pi * 0.127^2 * 1e-6
    CHECK(std::abs(flux_through(coil, pose, parallel)) ==
          doctest::Approx(1.520122437292493e-06).epsilon(1e-12));

    const FieldSample perpendicular{0.0, 1e-6, 0.0};
    CHECK(std::abs(flux_through(coil, pose, perpendicular)) == 0.0);

    CoilSpec doubled = coil;
    doubled.turns = 2 * coil.turns;
    CHECK(std::abs(flux_through(doubled, pose, parallel)) ==
          doctest::Approx(2.0 * std::abs(flux_through(coil, pose, parallel))).epsilon(1e-15));
}

TEST_CASE("induced voltage") {
    CHECK(std::abs(induced_voltage(0.0, 100e3)) == 0.0);
    CHECK(std::abs(induced_voltage(1.520122437292493e-06, 100e3)) ==
          doctest::Approx(0.9551210963110214).epsilon(1e-12));
    const Complex v_full = induced_voltage(3.3e-7, 100e3);
    const Complex v_half = induced_voltage(3.3e-7, 50e3);
    CHECK(std::abs(v_half) == doctest::Approx(std::abs(v_full) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(induced_voltage(1e-6, 0.0), std::invalid_argument);
}

TEST_CASE("coaxial mutual inductance") {
    const CoilSpec coil = table1();
    // independently evaluated Table-I value at d = 4 ft
    CHECK(mutual_inductance_coaxial(coil, coil, 1.2192) ==
          doctest::Approx(2.509179621100191e-07).epsilon(1e-12));

    const double r2 = coil.radius * coil.radius;
    const double cap = mu_0 * std::numbers::pi * coil.turns * coil.turns * r2 * r2 /
                       (2.0 * std::sqrt(std::pow(r2, 3)));
    CHECK(mutual_inductance_coaxial(coil, coil, 0.0) == doctest::Approx(cap).epsilon(1e-12));

    double previous = std::numeric_limits<double>::infinity();
    for (double d = 0.0; d <= 5.0; d += 0.25) {
        const double m = mutual_inductance_coaxial(coil, coil, d);
        CHECK(m < previous);
        previous = m;
    }
}

TEST_CASE("general mutual inductance geometry cases") {
    const CoilSpec coil = table1();
    const NodePose a = make_pose({0, 0, 0}, x_axis);

    // coaxial far field reduces to the closed coaxial form, ever closer
    // as the separation grows
    double previous_diff = 1.0;
    for (double mult : {10.0, 20.0, 50.0}) {
        const double d = mult * coil.radius;
        const NodePose b = make_pose({d, 0, 0}, x_axis);
        const double general = mutual_inductance_general(coil, a, coil, b, vacuum(), 100e3);
        const double coaxial = mutual_inductance_coaxial(coil, coil, d);
        const double diff = std::abs(general - coaxial) / coaxial;
        CHECK(diff < 0.02);
        CHECK(diff < previous_diff);
        previous_diff = diff;
    }

    // bracket vanishes: a along the separation, b perpendicular to both
    const NodePose b_perp = make_pose({2, 0, 0}, y_axis);
    CHECK(mutual_inductance_general(coil, a, coil, b_perp, vacuum(), 100e3) == 0.0);

    CHECK_THROWS_AS(
        mutual_inductance_general(coil, a, coil, make_pose({0, 0, 0}, y_axis), vacuum(), 100e3),
        degenerate_geometry_error);
}

TEST_CASE("general mutual inductance is bitwise reciprocal") {
    const CoilSpec coil = table1();
    CoilSpec other = table1();
    other.radius = 0.08;
    other.turns = 12;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const NodePose a = make_pose({dist(rng), dist(rng), dist(rng)},
                                     Vec3{dist(rng), dist(rng), dist(rng)}.normalized());
        Vec3 pos_b{dist(rng), dist(rng), dist(rng)};
        if ((pos_b - a.position).norm() < 0.05) pos_b.x += 1.0;
        const NodePose b =
            make_pose(pos_b, Vec3{dist(rng), dist(rng), dist(rng)}.normalized());
        const double forward = mutual_inductance_general(coil, a, other, b, fresh_water(), 100e3);
        const double reverse = mutual_inductance_general(other, b, coil, a, fresh_water(), 100e3);
        CHECK(forward == reverse);
    }
}

TEST_CASE("coupling coefficient") {
    CHECK(coupling_coefficient(2.509179621100191e-07, 329.75e-6, 329.75e-6) ==
          doctest::Approx(7.609339260349328e-04).epsilon(1e-12));
    CHECK(coupling_coefficient(0.0, 1e-3, 1e-3) == 0.0);
    const double la = 4.2e-4, lb = 1.3e-4;
    CHECK(coupling_coefficient(std::sqrt(la * lb), la, lb) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(coupling_coefficient(1e-7, 0.0, 1e-3), std::invalid_argument);
}

TEST_CASE("magnetic moment") {
    const CoilSpec coil = table1();
    CHECK(std::abs(magnetic_moment(coil, 1.0, std::numbers::pi / 2)) < 1e-15);
    CHECK(magnetic_moment(coil, 1.0, 0.0) ==
          doctest::Approx(1.520122437292493).epsilon(1e-12));
    CHECK(magnetic_moment(coil, 2.0, 0.0) ==
          doctest::Approx(2.0 * magnetic_moment(coil, 1.0, 0.0)).epsilon(1e-15));
}

TEST_CASE("Table I preset resonates at 100 kHz") {
    const CoilSpec coil = table1();
    const double f0 =
        1.0 / (2.0 * std::numbers::pi * std::sqrt(coil.inductance * coil.capacitance));
    CHECK(std::abs(f0 - 100e3) / 100e3 < 1e-3);
}

TEST_CASE("open-circuit voltage follows |cos theta| under self-rotation") {
    const CoilSpec coil = table1();
    const NodePose tx = make_pose({0, 0, 0}, x_axis);
    const double d = 10.0 * coil.radius;
    const Vec3 point{d, 0, 0};
    const Medium medium = vacuum();
    const FieldSample field = dipole_b_field(coil, tx, 1.0, point, 100e3, medium);

    std::map<std::string, NodePose> base;
    base["eve"] = make_pose(point, x_axis);
    SweepSpec spec;
    spec.kind = SweepKind::self_rotate;
    spec.subject = "eve";
    spec.start = 0.0;
    spec.stop = 180.0;
    spec.step = 10.0;

    const auto poses = generate_sweep(spec, base);
    const double v0 = std::abs(induced_voltage(flux_through(coil, poses[0], field), 100e3));
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const double v = std::abs(induced_voltage(flux_through(coil, poses[i], field), 100e3));
        const double theta = deg_to_rad(spec.start + static_cast<double>(i) * spec.step);
        CHECK(std::abs(v / v0 - std::abs(std::cos(theta))) <= 1e-9);
    }
}
