#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydanneal/embedding.hpp"
#include "rydanneal/evolve.hpp"
#include "rydanneal/graph.hpp"
#include "rydanneal/schedule.hpp"

namespace ryd {

struct Bounds {
    double lo = 0.0;
    double hi = 0.0;
};

// Tunable ramp parameters are named "s", "tau", "delta_min", "delta_max".
struct OptProblem {
    RydbergSystem system;
    WeightedGraph cost_graph;  // classical MWIS cost target (embedded graph when present)
    RampParams base_ramp;      // values for parameters not being tuned
    std::vector<std::string> tunables;
    std::map<std::string, Bounds> bounds;
    int shots_per_eval = 250;
    double penalty_u = 0.0;  // 0 -> cost_graph.default_penalty()
    std::uint64_t master_seed = 0;
    EvolutionConfig evolution;

    double penalty() const;
    RampParams ramp_with(std::span<const double> values) const;
};

struct EvalRecord {
    std::vector<double> values;  // tunable values, in tunables order
    double cost = 0.0;
    double std_err = 0.0;  // multinomial standard error of the mean cost
    std::uint64_t seed = 0;
};

struct OptResult {
    std::vector<double> best_values;
    double best_cost = 0.0;
    std::vector<EvalRecord> history;
    int evaluations = 0;
};

// One closed-loop evaluation: schedule -> evolve -> sample -> expectation
// cost. Infeasible light-shift caps add a 10*u*N penalty instead of raising.
// Deterministic given seed. std_err (optional out) is the sampling error.
double evaluate(const OptProblem& prob, const RampParams& params, std::uint64_t seed,
                double* std_err = nullptr);

struct EvalOutput {
    double cost = 0.0;
    double std_err = 0.0;
    std::map<Config, std::uint64_t> counts;
    double norm_drift = 0.0;
    bool cap_ok = true;
};

EvalOutput evaluate_full(const OptProblem& prob, const RampParams& params, std::uint64_t seed);

// Called after each closed-loop evaluation with its full sampling output.
using EvalObserver =
    std::function<void(int index, const RampParams&, const EvalOutput&, std::uint64_t seed)>;

// Objective used by the generic search: values -> (cost, std_err).
using Objective = std::function<double(std::span<const double>, std::uint64_t seed, double*)>;

// Seeded Nelder-Mead with box projection. Candidates that do not improve on
// the incumbent by more than the sampling error are treated as not better.
OptResult nelder_mead(const Objective& f, const std::vector<Bounds>& box, int budget,
                      std::uint64_t master_seed, const std::vector<double>* initial = nullptr);

// Closed-loop optimization of the annealing ramp against the classical cost.
OptResult optimize(const OptProblem& prob, int budget, const EvalObserver& observer = nullptr);

}  // namespace ryd
