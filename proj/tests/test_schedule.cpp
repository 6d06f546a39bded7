#include <doctest.h>

#include <cmath>

#include "rydanneal/errors.hpp"
#include "rydanneal/schedule.hpp"

using namespace ryd;

namespace {

RampParams symmetric(double s) { return {s, 3.0, -6.0, 6.0, 2.70, 0.1, 0.1}; }

}  // namespace

TEST_SUITE("schedule") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Schedule({-0.1, 3, -6, 6, 2.7, 0.1, 0.1}), ParameterError);
    CHECK_THROWS_AS(Schedule({0.5, 0.0, -6, 6, 2.7, 0.1, 0.1}), ParameterError);
    CHECK_THROWS_AS(Schedule({0.5, 3, 6, 6, 2.7, 0.1, 0.1}), ParameterError);
    CHECK_THROWS_AS(Schedule({0.5, 3, -6, -6, 2.7, 0.1, 0.1}), ParameterError);
    CHECK_THROWS_AS(Schedule({0.5, 3, -6, 6, 0.0, 0.1, 0.1}), ParameterError);
    CHECK_THROWS_AS(Schedule({0.5, 3, -6, 6, 2.7, -0.1, 0.1}), ParameterError);
}

TEST_CASE("cubic endpoints hold for every shape") {
    for (double s : {0.0, 0.31, 0.5, 0.77, 1.0}) {
        const auto p = symmetric(s);
        CHECK(cubic_delta(p, 0.0) == doctest::Approx(-6.0).epsilon(1e-12));
        CHECK(cubic_delta(p, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(cubic_delta(p, 1.5) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const RampParams asym{0.4, 1.65, -3.0, 4.2, 2.7, 0.1, 0.1};
    CHECK(cubic_delta(asym, 0.0) == doctest::Approx(-3.0));
    CHECK(cubic_delta(asym, 1.65) == doctest::Approx(4.2));
    CHECK(cubic_delta(asym, 0.825) == doctest::Approx(0.6));  // midpoint mean
}

TEST_CASE("shape zero is an exact chord") {
    const auto p = symmetric(0.0);
    for (int k = 0; k <= 50; ++k) {
        const double t = 3.0 * k / 50.0;
        const double chord = -6.0 + 12.0 * t / 3.0;
        CHECK(cubic_delta(p, t) == doctest::Approx(chord).epsilon(1e-12));
    }
}

TEST_CASE("worked cubic value at s = 1") {
    // c = 10, a = 10, b = 0; t' = -0.5 -> -10 + 10*(-0.125) + 10 = -1.25
    const RampParams p{1.0, 2.0, -10.0, 10.0, 2.7, 0.1, 0.1};
    CHECK(cubic_delta(p, 0.5) == doctest::Approx(-1.25).epsilon(1e-12));
}

TEST_CASE("cubic domain is [0, tau]") {
    const auto p = symmetric(0.5);
    CHECK_THROWS_AS(cubic_delta(p, -0.01), DomainError);
    CHECK_THROWS_AS(cubic_delta(p, 3.01), DomainError);
}

TEST_CASE("delta is monotone nondecreasing over the sweep") {
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto p = symmetric(s);
        double prev = cubic_delta(p, 0.0);
        for (int k = 1; k <= 10000; ++k) {
            const double value = cubic_delta(p, 3.0 * k / 10000.0);
            CHECK(value >= prev - 1e-12);
            prev = value;
        }
    }
}

TEST_CASE("stage split: detuning and light-shift never overlap") {
    const Schedule sch(symmetric(0.5));
    const double total = sch.total_duration();
    CHECK(total == doctest::Approx(3.2));
    for (int k = 0; k <= 2000; ++k) {
        const double t = total * k / 2000.0;
        const DriveSample d = sch.sample(t);
        CHECK(d.delta_global <= 0.0);
        CHECK(d.delta_ac_unit >= 0.0);
        CHECK(d.delta_global * d.delta_ac_unit == 0.0);
        CHECK(d.omega >= 0.0);
    }
}

TEST_CASE("envelope endpoints") {
    const Schedule sch(symmetric(0.3));
    const DriveSample start = sch.sample(0.0);
    CHECK(start.omega == 0.0);
    CHECK(start.delta_global == doctest::Approx(-6.0));
    CHECK(start.delta_ac_unit == 0.0);

    const DriveSample top = sch.sample(0.1);
    CHECK(top.omega == doctest::Approx(2.70));
    CHECK(top.delta_global == doctest::Approx(-6.0));

    const DriveSample end = sch.sample(sch.total_duration());
    CHECK(end.omega == doctest::Approx(0.0));
    CHECK(end.delta_global == 0.0);
    CHECK(end.delta_ac_unit == doctest::Approx(6.0));

    CHECK_THROWS_AS(sch.sample(-0.001), DomainError);
    CHECK_THROWS_AS(sch.sample(3.3), DomainError);
}

TEST_CASE("symmetric ramps cross zero at mid-sweep for every shape") {
    for (double s : {0.0, 0.5, 1.0}) {
        const Schedule sch(symmetric(s));
        CHECK(sch.zero_crossing() == doctest::Approx(1.5).epsilon(1e-9));
    }
}

TEST_CASE("a ramp reproducing the 2D crossing at 0.6 us exists") {
    // Root-found delta_min for s = 0.4, delta_max = 4.2, tau = 1.65.
    const RampParams p{0.4, 1.65, -2.9687612208258516, 4.2, 2.70, 0.1, 0.1};
    const Schedule sch(p);
    CHECK(sch.zero_crossing() == doctest::Approx(0.6).epsilon(1e-9));
    // With s = 0, the crossing constraint solves in closed form:
    // |delta_min| / (delta_max - delta_min) = 0.6 / 1.65.
    const RampParams linear{0.0, 1.65, -4.0 / 7.0 * 4.2, 4.2, 2.70, 0.1, 0.1};
    CHECK(Schedule(linear).zero_crossing() == doctest::Approx(0.6).epsilon(1e-9));
}

}  // TEST_SUITE
