#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydanneal/calibration.hpp"
#include "rydanneal/embedding.hpp"
#include "rydanneal/evolve.hpp"
#include "rydanneal/io.hpp"
#include "rydanneal/optimizer.hpp"
#include "rydanneal/schedule.hpp"

namespace ryd {

struct SystemConfig {
    double c6_ghz_um6 = -3376.0;  // signed, as published; |C6| is used
    double omega_mhz = 2.70;
    bool include_tails = true;

    double c6_magnitude_mhz_um6() const { return std::abs(c6_ghz_um6) * 1e3; }
};

struct EvolveBlock {
    double dt_us = 1e-3;
    std::string method = "split4";  // or "rk4"
    std::uint64_t shots = 1000;
    std::vector<double> snapshot_times_us;
    double trajectory_floor = 1e-4;

    IntegratorMethod integrator() const;
};

struct OptimizerBlock {
    std::vector<std::string> tunables;
    std::map<std::string, Bounds> bounds;
    int budget = 80;
    int shots_per_eval = 250;
    std::uint64_t final_shots = 1000;
};

struct PlantBlock {
    int n_sites = 9;
    double gain_spread = 0.3;
    double crosstalk = 0.0;
    double noise_sigma = 0.005;
    std::vector<double> targets;  // empty -> embedding site weights
    int max_iters = 15;
    double tol = 0.02;
};

struct ExperimentConfig {
    std::optional<WeightedGraph> graph;
    std::optional<Embedding> embedding;
    std::optional<AtomLayout> layout;
    SystemConfig system;
    std::optional<RampParams> ramp;
    EvolveBlock evolve;
    std::optional<OptimizerBlock> optimizer;
    std::optional<PlantBlock> plant;
    double penalty_u = 0.0;  // 0 -> 2 * max weight of the cost graph
    std::uint64_t seed = 1;

    // The graph the classical cost is evaluated on (embedded when embedding
    // present, else explicit graph, else layout-derived UDG).
    WeightedGraph cost_graph() const;
    AtomLayout physical_layout() const;
    RydbergSystem make_system() const;
    double penalty() const;
};

json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::string& path);

// Hash of the canonical serialized config; embedded in every output file.
std::string config_hash(const ExperimentConfig& cfg);

// Bundled fixtures: 1d_uniform, 1d_weighted, 2d_21211, 2d_12122,
// 2d_fractional, calibrate_12122.
ExperimentConfig fixture_config(const std::string& name);
std::vector<std::string> fixture_names();

struct RunRecord {
    std::map<Config, std::uint64_t> counts;
    std::uint64_t shots = 0;
    double estimated_cost = 0.0;
    RampParams ramp;
    std::uint64_t seed = 0;
    double penalty_u = 0.0;
    bool exact = false;
    std::vector<double> exact_probabilities;  // only when exact
    Config argmax = 0;
    int n_sites = 0;
    std::optional<Config> decoded_argmax;
    int n_logical = 0;
    double norm_drift = 0.0;
    double sweep_time_us = 0.0;
    double total_duration_us = 0.0;
    std::string hash;
    double dt_us = 0.0;
    bool include_tails = true;
    std::string method;

    json to_json() const;
};

struct SolveOutput {
    MwisResult result;
    int n_sites = 0;
    std::optional<std::vector<Config>> decoded_optima;  // with embedding
    int n_logical = 0;
    double penalty_u = 0.0;
    std::string hash;

    json to_json() const;
};

struct TrajectoryPoint {
    double t_us = 0.0;
    std::vector<double> probabilities;
};

struct AnnealOutput {
    RunRecord record;
    std::vector<TrajectoryPoint> trajectory;
};

SolveOutput run_solve(const ExperimentConfig& cfg);
AnnealOutput run_anneal(const ExperimentConfig& cfg, bool exact = false, bool force = false);

struct OptimizeOutput {
    OptResult result;
    RunRecord verification;  // final run at best params with final_shots
    std::vector<RunRecord> eval_records;
};

OptimizeOutput run_optimize(const ExperimentConfig& cfg);

CalibrationHistory run_calibrate(const ExperimentConfig& cfg);

// CSV emitters (deterministic formatting).
std::string schedule_csv(const Schedule& sch, double dt_us);
std::string trajectory_csv(const AnnealOutput& out, int n_sites, double floor);
std::string calibration_csv(const CalibrationHistory& h);
std::string optimize_summary_csv(const OptResult& r, const std::vector<std::string>& tunables);

}  // namespace ryd
