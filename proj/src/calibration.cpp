#include "rydanneal/calibration.hpp"

#include <cmath>
#include <string>

#include "rydanneal/errors.hpp"
#include "rydanneal/rng.hpp"

namespace ryd {

namespace {

std::vector<double> unit_mean(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / mean;
    return out;
}

}  // namespace

void PlantModel::validate() const {
    if (gains.empty()) throw InstanceError("plant needs at least one site");
    for (double g : gains) {
        if (!(g > 0.0)) throw InstanceError("plant gains must be > 0");
    }
    if (!crosstalk.empty()) {
        if (crosstalk.size() != gains.size()) {
            throw InstanceError("crosstalk matrix size must match gains");
        }
        for (std::size_t i = 0; i < crosstalk.size(); ++i) {
            if (crosstalk[i].size() != gains.size()) {
                throw InstanceError("crosstalk matrix must be square");
            }
            for (std::size_t j = 0; j < crosstalk[i].size(); ++j) {
                const double k = crosstalk[i][j];
                if (i == j && k != 0.0) throw InstanceError("crosstalk diagonal must be zero");
                if (std::abs(k) > 0.2) {
                    throw InstanceError("|K_ij| <= 0.2 required for model validity");
                }
            }
        }
    }
    if (noise_sigma < 0.0) throw ParameterError("noise sigma must be >= 0");
}

PlantModel PlantModel::random(int n, double gain_spread, double crosstalk_mag, double noise_sigma,
                              std::uint64_t seed) {
    if (n <= 0) throw InstanceError("plant needs at least one site");
    if (gain_spread < 0.0 || gain_spread >= 1.0) {
        throw ParameterError("gain spread must lie in [0, 1)");
    }
    Rng rng(seed);
    PlantModel plant;
    plant.noise_sigma = noise_sigma;
    plant.gains.resize(static_cast<std::size_t>(n));
    for (double& g : plant.gains) g = 1.0 + gain_spread * (2.0 * rng.uniform() - 1.0);
    if (crosstalk_mag > 0.0) {
        plant.crosstalk.assign(static_cast<std::size_t>(n),
                               std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) {
                    plant.crosstalk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        crosstalk_mag * (2.0 * rng.uniform() - 1.0);
                }
            }
        }
    }
    plant.validate();
    return plant;
}

std::vector<double> measure_shifts(const PlantModel& plant, std::span<const double> commanded,
                                   std::uint64_t seed) {
    plant.validate();
    const std::size_t n = plant.gains.size();
    if (commanded.size() != n) throw InstanceError("commanded length must match plant size");
    for (double c : commanded) {
        if (!(c > 0.0)) throw InstanceError("commanded weights must be > 0");
    }
    Rng rng(seed);
    std::vector<double> measured(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = plant.gains[i] * commanded[i];
        if (!plant.crosstalk.empty()) {
            for (std::size_t j = 0; j < n; ++j) {
                acc += plant.crosstalk[i][j] * plant.gains[j] * commanded[j];
            }
        }
        measured[i] = acc * (1.0 + plant.noise_sigma * rng.normal());
    }
    return measured;
}

std::vector<double> feedback_step(std::span<const double> commanded,
                                  std::span<const double> measured,
                                  std::span<const double> target) {
    if (commanded.size() != measured.size() || commanded.size() != target.size()) {
        throw InstanceError("feedback_step requires equal-length vectors");
    }
    for (double m : measured) {
        if (!(m > 0.0)) throw CalibrationError("non-positive measured shift (plant sign fault)");
    }
    const std::vector<double> m_hat = unit_mean(measured);
    const std::vector<double> t_hat = unit_mean(target);
    std::vector<double> updated(commanded.size());
    for (std::size_t i = 0; i < commanded.size(); ++i) {
        updated[i] = commanded[i] * t_hat[i] / m_hat[i];
    }
    return updated;
}

double rms_relative_error(std::span<const double> measured, std::span<const double> target) {
    if (measured.size() != target.size()) {
        throw InstanceError("rms_relative_error requires equal-length vectors");
    }
    const std::vector<double> m_hat = unit_mean(measured);
    const std::vector<double> t_hat = unit_mean(target);
    double acc = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double e = m_hat[i] / t_hat[i] - 1.0;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(measured.size()));
}

CalibrationHistory run_calibration(const PlantModel& plant, std::span<const double> target,
                                   int max_iters, double tol, std::uint64_t seed) {
    if (!(tol > 0.0)) throw ParameterError("tolerance must be > 0");
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
    plant.validate();

    CalibrationHistory history;
    std::vector<double> commanded(target.begin(), target.end());
    int growth_streak = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        const std::vector<double> measured =
            measure_shifts(plant, commanded, mix_seed(seed, static_cast<std::uint64_t>(iter)));
        const double rms = rms_relative_error(measured, target);
        history.iterations.push_back({commanded, measured, rms});
        if (rms < tol) {
            history.converged = true;
            break;
        }
        if (history.iterations.size() >= 2 &&
            rms > history.iterations[history.iterations.size() - 2].rms) {
            if (++growth_streak >= 3) {
                throw CalibrationError("calibration diverged: RMS grew 3 consecutive iterations (" +
                                       std::to_string(plant.n_sites()) + "-site plant)");
            }
        } else {
            growth_streak = 0;
        }
        commanded = feedback_step(commanded, measured, target);
    }
    return history;
}

}  // namespace ryd
