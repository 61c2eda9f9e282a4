#include <cmath>
#include <doctest.h>
#include <map>
#include <numbers>
#include <random>

#include "miseclab/errors.hpp"
#include "miseclab/geometry.hpp"

using namespace miseclab;

namespace {
const Vec3 x_axis{1.0, 0.0, 0.0};
const Vec3 y_axis{0.0, 1.0, 0.0};
} // namespace

TEST_CASE("angle_between basics") {
    CHECK(angle_between(x_axis, x_axis) == doctest::Approx(0.0));
    CHECK(angle_between(x_axis, y_axis) == doctest::Approx(std::numbers::pi / 2));
    CHECK(angle_between(x_axis, -x_axis) == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(angle_between({std::nan(""), 0, 0}, x_axis), std::invalid_argument);
}

TEST_CASE("angle_between clamps slightly-out-of-range dots") {
    const Vec3 v = Vec3{1.0, 1.0, 1.0}.normalized();
    CHECK(angle_between(v, v) == 0.0);
}

TEST_CASE("ft_to_m defined values") {
    CHECK(ft_to_m(4.0) == doctest::Approx(1.2192).epsilon(1e-15));
    CHECK(ft_to_m(0.0) == 0.0);
    CHECK(ft_to_m(1.5) == doctest::Approx(0.4572).epsilon(1e-15));
    CHECK(m_to_ft(ft_to_m(3.0)) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(ft_to_m(std::nan("")), std::invalid_argument);
}

TEST_CASE("ft_to_m is a pure scale") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double a = dist(rng), b = dist(rng);
        const double lhs = ft_to_m(a + b);
        const double rhs = ft_to_m(a) + ft_to_m(b);
        CHECK(std::abs(lhs - rhs) <= 1e-15 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("orbit sweep matches the documented start and quarter-turn poses") {
    std::map<std::string, NodePose> base;
    base["tx"] = make_pose({0, 0, 0}, x_axis);
    base["eve"] = make_pose({ft_to_m(-2.0), 0, 0}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::orbit;
    spec.subject = "eve";
    spec.anchor = "tx";
    spec.start = 0.0;
    spec.stop = 180.0;
    spec.step = 90.0;

    const auto poses = generate_sweep(spec, base);
    REQUIRE(poses.size() == 3);

    CHECK(poses[0].position.x == doctest::Approx(-0.6096).epsilon(1e-12));
    CHECK(poses[0].position.y == doctest::Approx(0.0));
    CHECK(poses[0].axis.x == doctest::Approx(1.0));

    CHECK(poses[1].position.x == doctest::Approx(0.0));
    CHECK(poses[1].position.y == doctest::Approx(0.6096).epsilon(1e-12));
    CHECK(poses[1].axis.y == doctest::Approx(-1.0));

    CHECK(poses[2].position.x == doctest::Approx(0.6096).epsilon(1e-12));
    CHECK(poses[2].axis.x == doctest::Approx(-1.0));
}

TEST_CASE("orbit preserves radius and keeps the axis radial") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, NodePose> base;
        const Vec3 anchor{coord(rng), coord(rng), coord(rng)};
        Vec3 offset{coord(rng), coord(rng), 0.0};
        if (offset.norm() < 0.1) offset = {1.0, 0.5, 0.0};
        base["tx"] = make_pose(anchor, x_axis);
        base["eve"] = make_pose(anchor + offset, x_axis);

        SweepSpec spec;
        spec.kind = SweepKind::orbit;
        spec.subject = "eve";
        spec.anchor = "tx";
        spec.start = 0.0;
        spec.stop = 360.0;
        spec.step = 17.0;

        const double radius = offset.norm();
        for (const NodePose& pose : generate_sweep(spec, base)) {
            const double r = (pose.position - anchor).norm();
            CHECK(std::abs(r - radius) <= 1e-12 * radius);
            // atan2 of the cross norm resolves angles far below the
            // ~1.5e-8 floor of the acos form
            const Vec3 toward = (anchor - pose.position).normalized();
            const double tiny_angle =
                std::atan2(pose.axis.cross(toward).norm(), pose.axis.dot(toward));
            CHECK(tiny_angle <= 1e-9);
        }
    }
}

TEST_CASE("self_rotate turns the axis in place") {
    std::map<std::string, NodePose> base;
    base["eve"] = make_pose({1.0, 2.0, 3.0}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::self_rotate;
    spec.subject = "eve";
    spec.start = 0.0;
    spec.stop = 90.0;
    spec.step = 90.0;

    const auto poses = generate_sweep(spec, base);
    REQUIRE(poses.size() == 2);
    CHECK(poses[1].position.x == 1.0);
    CHECK(poses[1].axis.x == doctest::Approx(0.0));
    CHECK(poses[1].axis.y == doctest::Approx(1.0));
}

TEST_CASE("translate point count matches the grid formula") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> startd(-2.0, 2.0);
    std::uniform_int_distribution<int> stepsd(0, 40);
    for (int trial = 0; trial < 100; ++trial) {
        const int steps = stepsd(rng);
        SweepSpec spec;
        spec.kind = SweepKind::translate;
        spec.subject = "eve";
        spec.start = startd(rng);
        spec.step = 0.125;
        spec.stop = spec.start + steps * spec.step;

        std::map<std::string, NodePose> base;
        base["eve"] = make_pose({0, 0, 0}, x_axis);
        const auto poses = generate_sweep(spec, base);
        CHECK(poses.size() == static_cast<std::size_t>(steps) + 1);
    }
}

TEST_CASE("translate moves along the stated line with axis unchanged") {
    std::map<std::string, NodePose> base;
    base["eve"] = make_pose({0.0, ft_to_m(3.0), 0.0}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::translate;
    spec.subject = "eve";
    spec.direction = x_axis;
    spec.start = 0.0;
    spec.stop = ft_to_m(4.0);
    spec.step = ft_to_m(0.5);

    const auto poses = generate_sweep(spec, base);
    REQUIRE(poses.size() == 9);
    CHECK(poses.back().position.x == doctest::Approx(ft_to_m(4.0)).epsilon(1e-12));
    CHECK(poses.back().position.y == doctest::Approx(ft_to_m(3.0)).epsilon(1e-12));
    for (const NodePose& pose : poses) CHECK(pose.axis.x == 1.0);
}

TEST_CASE("standoff walks away from the anchor") {
    std::map<std::string, NodePose> base;
    base["tx"] = make_pose({0, 0, 0}, x_axis);
    base["rx"] = make_pose({ft_to_m(0.5), 0, 0}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::standoff;
    spec.subject = "rx";
    spec.anchor = "tx";
    spec.start = ft_to_m(0.5);
    spec.stop = ft_to_m(4.0);
    spec.step = ft_to_m(0.5);

    const auto poses = generate_sweep(spec, base);
    REQUIRE(poses.size() == 8);
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const double want = ft_to_m(0.5) + static_cast<double>(i) * ft_to_m(0.5);
        CHECK(poses[i].position.x == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("sweep validation errors") {
    SweepSpec spec;
    spec.subject = "eve";
    spec.step = -1.0;
    CHECK_THROWS_AS(validate_sweep(spec), config_error);
    spec.step = 1.0;
    spec.start = 2.0;
    spec.stop = 1.0;
    CHECK_THROWS_AS(validate_sweep(spec), config_error);
    spec.kind = SweepKind::orbit;
    spec.anchor = "tx";
    spec.start = 0.0;
    spec.stop = 400.0;
    CHECK_THROWS_AS(validate_sweep(spec), config_error);
}

TEST_CASE("zero orbit radius is degenerate") {
    std::map<std::string, NodePose> base;
    base["tx"] = make_pose({1, 1, 1}, x_axis);
    base["eve"] = make_pose({1, 1, 1}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::orbit;
    spec.subject = "eve";
    spec.anchor = "tx";
    spec.start = 0.0;
    spec.stop = 90.0;
    spec.step = 30.0;
    CHECK_THROWS_AS(generate_sweep(spec, base), degenerate_geometry_error);
}

TEST_CASE("unknown subject or anchor") {
    std::map<std::string, NodePose> base;
    base["tx"] = make_pose({0, 0, 0}, x_axis);

    SweepSpec spec;
    spec.kind = SweepKind::orbit;
    spec.subject = "ghost";
    spec.anchor = "tx";
    spec.stop = 90.0;
    spec.step = 30.0;
    CHECK_THROWS_AS(generate_sweep(spec, base), not_found_error);
    spec.subject = "tx";
    spec.anchor = "ghost";
    CHECK_THROWS_AS(generate_sweep(spec, base), not_found_error);
}
