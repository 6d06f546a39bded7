#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ryd {

// Abstract actuator model standing in for the light-shift hardware:
// measured_i = (sum_j (I + K)_ij g_j commanded_j) * (1 + noise), with
// multiplicative gains g, crosstalk K (zero diagonal, |K_ij| <= 0.2) and
// relative measurement noise of width noise_sigma.
struct PlantModel {
    std::vector<double> gains;
    std::vector<std::vector<double>> crosstalk;  // empty = no crosstalk
    double noise_sigma = 0.005;

    void validate() const;
    int n_sites() const { return static_cast<int>(gains.size()); }

    // Gains uniform in [1 - gain_spread, 1 + gain_spread]; off-diagonal
    // crosstalk uniform in [-crosstalk_mag, crosstalk_mag].
    static PlantModel random(int n, double gain_spread, double crosstalk_mag,
                             double noise_sigma, std::uint64_t seed);
};

std::vector<double> measure_shifts(const PlantModel& plant, std::span<const double> commanded,
                                   std::uint64_t seed);

// Multiplicative update commanded_i *= target_i / measured_i after both are
// normalized to unit mean (only relative weightings matter).
std::vector<double> feedback_step(std::span<const double> commanded,
                                  std::span<const double> measured,
                                  std::span<const double> target);

// RMS of (measured_i / target_i - 1) with both vectors normalized to unit mean.
double rms_relative_error(std::span<const double> measured, std::span<const double> target);

struct CalibrationHistory {
    struct Iteration {
        std::vector<double> commanded;
        std::vector<double> measured;
        double rms = 0.0;
    };
    std::vector<Iteration> iterations;
    bool converged = false;
};

// Iterates measure -> update until the RMS relative error drops below tol or
// max_iters is reached. Throws CalibrationError if the RMS grows three
// iterations in a row.
CalibrationHistory run_calibration(const PlantModel& plant, std::span<const double> target,
                                   int max_iters, double tol, std::uint64_t seed);

}  // namespace ryd
