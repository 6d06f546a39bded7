#include <doctest.h>

#include <cmath>
#include <vector>

#include "rydanneal/calibration.hpp"
#include "rydanneal/errors.hpp"

using namespace ryd;

namespace {

PlantModel identity_plant(int n, double sigma = 0.0) {
    PlantModel p;
    p.gains.assign(n, 1.0);
    p.noise_sigma = sigma;
    return p;
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("identity plant with zero noise measures the command") {
    const auto plant = identity_plant(4);
    const std::vector<double> cmd{1.0, 2.0, 0.5, 3.0};
    CHECK(measure_shifts(plant, cmd, 1) == cmd);
}

TEST_CASE("diagonal gains scale the command") {
    PlantModel plant;
    plant.gains = {2.0, 1.0};
    plant.noise_sigma = 0.0;
    const auto m = measure_shifts(plant, std::vector<double>{1.0, 1.0}, 5);
    CHECK(m[0] == doctest::Approx(2.0));
    CHECK(m[1] == doctest::Approx(1.0));
}

TEST_CASE("measurements are reproducible for a fixed seed") {
    const auto plant = PlantModel::random(9, 0.3, 0.0, 0.01, 12345);
    const std::vector<double> cmd(9, 1.0);
    CHECK(measure_shifts(plant, cmd, 42) == measure_shifts(plant, cmd, 42));
    CHECK(measure_shifts(plant, cmd, 42) != measure_shifts(plant, cmd, 43));
}

TEST_CASE("plant validity limits") {
    PlantModel p;
    p.gains = {1.0, -1.0};
    CHECK_THROWS_AS(p.validate(), InstanceError);
    p.gains = {1.0, 1.0};
    p.crosstalk = {{0.0, 0.5}, {0.5, 0.0}};
    CHECK_THROWS_AS(p.validate(), InstanceError);  // |K| > 0.2
    p.crosstalk = {{0.1, 0.1}, {0.1, 0.0}};
    CHECK_THROWS_AS(p.validate(), InstanceError);  // nonzero diagonal
}

TEST_CASE("feedback fixed point") {
    const std::vector<double> target{1, 2, 1, 2, 2};
    std::vector<double> measured(target);
    for (double& m : measured) m *= 3.7;  // proportional to target
    const std::vector<double> cmd{1, 1, 1, 1, 1};
    const auto next = feedback_step(cmd, measured, target);
    for (std::size_t i = 0; i < cmd.size(); ++i) {
        CHECK(next[i] == doctest::Approx(cmd[i]).epsilon(1e-14));
    }
    CHECK_THROWS_AS(feedback_step(cmd, std::vector<double>{1, -1, 1, 1, 1}, target),
                    CalibrationError);
}

TEST_CASE("diagonal plant converges in one step without noise") {
    const auto plant = PlantModel::random(9, 0.3, 0.0, 0.0, 99);
    const std::vector<double> target{2, 1, 2, 1, 3, 1, 2, 1, 3};
    const auto hist = run_calibration(plant, target, 10, 1e-12, 7);
    CHECK(hist.converged);
    REQUIRE(hist.iterations.size() == 2);  // initial measure + post-update measure
    CHECK(hist.iterations[1].rms < 1e-12);
}

TEST_CASE("identity plant terminates at iteration one") {
    const auto hist = run_calibration(identity_plant(9, 0.005), std::vector<double>(9, 1.0), 10,
                                      0.02, 3);
    CHECK(hist.converged);
    CHECK(hist.iterations.size() == 1);
}

TEST_CASE("paper-like scenario converges within five iterations") {
    // Targets are the embedded (1,2,1,2,2) site weights including the
    // ancilla values 1 and 3.
    const std::vector<double> target{2, 1, 2, 1, 3, 1, 2, 1, 3};
    int converged_by_5 = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto plant = PlantModel::random(9, 0.3, 0.0, 0.005, 1000 + seed);
        const auto hist = run_calibration(plant, target, 5, 0.02, 2000 + seed);
        if (hist.converged && hist.iterations.size() <= 5) ++converged_by_5;
    }
    CHECK(converged_by_5 >= 95);
}

TEST_CASE("crosstalk still converges within fifteen iterations") {
    const std::vector<double> target{2, 1, 2, 1, 3, 1, 2, 1, 3};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto plant = PlantModel::random(9, 0.3, 0.05, 0.005, 500 + seed);
        const auto hist = run_calibration(plant, target, 15, 0.02, 600 + seed);
        CHECK(hist.converged);
    }
}

TEST_CASE("converged relative weights are scale invariant") {
    const std::vector<double> target{1, 2, 1, 2, 2, 1, 1, 3, 3};
    std::vector<double> scaled(target);
    for (double& t : scaled) t *= 4.2;
    const auto plant = PlantModel::random(9, 0.3, 0.0, 0.0, 31);
    const auto h1 = run_calibration(plant, target, 10, 1e-10, 8);
    const auto h2 = run_calibration(plant, scaled, 10, 1e-10, 8);
    REQUIRE(h1.converged);
    REQUIRE(h2.converged);
    const auto& m1 = h1.iterations.back().measured;
    const auto& m2 = h2.iterations.back().measured;
    // compare unit-mean normalized measured vectors
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < m1.size(); ++i) {
        s1 += m1[i];
        s2 += m2[i];
    }
    for (std::size_t i = 0; i < m1.size(); ++i) {
        CHECK(m1[i] / s1 == doctest::Approx(m2[i] / s2).epsilon(1e-9));
    }
}

TEST_CASE("rms error of one step on a noiseless diagonal plant is zero") {
    const auto plant = PlantModel::random(6, 0.25, 0.0, 0.0, 11);
    const std::vector<double> target{1, 2, 3, 1, 2, 3};
    const auto m0 = measure_shifts(plant, target, 0);
    const auto cmd = feedback_step(target, m0, target);
    const auto m1 = measure_shifts(plant, cmd, 1);
    CHECK(rms_relative_error(m1, target) < 1e-13);
}

}  // TEST_SUITE
