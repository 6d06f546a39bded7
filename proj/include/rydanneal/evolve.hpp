#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "rydanneal/graph.hpp"
#include "rydanneal/hamiltonian.hpp"
#include "rydanneal/schedule.hpp"

namespace ryd {

struct StateVector {
    int n_sites = 0;
    std::vector<std::complex<double>> amplitudes;  // length 2^n_sites

    static StateVector ground(int n_sites);  // all atoms in |g>
    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

enum class IntegratorMethod {
    Split4,  // 4th-order commutator-free Magnus, factors applied as exact
             // unitaries via Yoshida-composed diagonal/sigma_x splitting
    Rk4,     // classical RK4 with H sampled at sub-stage times
};

struct EvolutionConfig {
    double dt_us = 1e-3;
    IntegratorMethod method = IntegratorMethod::Split4;
    std::vector<double> snapshot_times_us;
    double norm_tolerance = 1e-6;
};

struct EvolveResult {
    StateVector state;
    std::vector<std::pair<double, StateVector>> snapshots;
    double norm_drift = 0.0;  // |norm - 1| at the final time
};

// Integrates psi' = -i 2 pi H(t) psi over [0, schedule.total_duration()],
// H in MHz and t in us. Initial state defaults to all-ground. Throws
// DiagnosticError if the final norm drifts beyond cfg.norm_tolerance.
EvolveResult evolve(const RydbergSystem& sys, const Schedule& sch, const EvolutionConfig& cfg,
                    const StateVector* initial = nullptr);

// Same integrator under an arbitrary drive profile.
using DriveFn = std::function<DriveSample(double)>;
EvolveResult evolve_drive(const RydbergSystem& sys, const DriveFn& drive, double duration,
                          const EvolutionConfig& cfg, const StateVector* initial = nullptr);

// |amplitude|^2 for every basis state.
std::vector<double> probabilities(const StateVector& psi);

// Multinomial draw; deterministic given seed. Bit 1 = Rydberg = atom ejected.
std::map<Config, std::uint64_t> sample_counts(std::span<const double> dist, std::uint64_t shots,
                                              std::uint64_t seed);

// Each ground-state bit flips to 1 with per-site probability eps (atom loss
// reads out identically to a Rydberg detection). Shots are expanded in
// ascending configuration order, so the result is deterministic given seed.
std::map<Config, std::uint64_t> apply_readout_noise(const std::map<Config, std::uint64_t>& counts,
                                                    std::span<const double> eps_per_site,
                                                    int n_sites, std::uint64_t seed);

}  // namespace ryd
