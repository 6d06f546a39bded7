#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydanneal/errors.hpp"
#include "rydanneal/experiment.hpp"

namespace fs = std::filesystem;
using ryd::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    bool exact = false;
    bool force = false;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "experiment config JSON");
    if (needs_config) c->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--shots", opts.shots, "override the shot count");
    cmd->add_flag("--exact", opts.exact, "write the exact distribution instead of samples");
    cmd->add_flag("--force", opts.force, "run even if the light-shift cap check fails");
    cmd->add_option("--jobs", opts.jobs, "worker bound for internal parallelism")
        ->check(CLI::PositiveNumber);
}

ryd::ExperimentConfig load(const CommonOpts& opts) {
    json j = json::parse(ryd::read_text_file(opts.config_path));
    // Manifests wrap the config under a "config" key; accept both forms.
    if (j.contains("config")) j = j.at("config");
    ryd::ExperimentConfig cfg = ryd::config_from_json(j);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.shots) cfg.evolve.shots = *opts.shots;
    return cfg;
}

void write_manifest(const std::string& command, const ryd::ExperimentConfig& cfg,
                    const fs::path& dir) {
    json m;
    m["command"] = command;
    m["config"] = ryd::config_to_json(cfg);
    m["config_hash"] = ryd::config_hash(cfg);
    ryd::write_text_file((dir / "manifest.json").string(), m.dump(2) + "\n");
}

fs::path prepare_out(const CommonOpts& opts) {
    fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_solve(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto dir = prepare_out(opts);
    write_manifest("solve", cfg, dir);
    const ryd::SolveOutput out = ryd::run_solve(cfg);
    const json j = out.to_json();
    ryd::write_text_file((dir / "solution.json").string(), j.dump(2) + "\n");
    std::printf("%s\n", j.dump().c_str());
    return 0;
}

int cmd_embed(const CommonOpts& opts) {
    const auto cfg = load(opts);
    if (!cfg.embedding) throw ryd::InstanceError("embed requires an 'embedding' block");
    const auto dir = prepare_out(opts);
    write_manifest("embed", cfg, dir);
    const ryd::ValidationReport report = ryd::validate_embedding(*cfg.embedding);
    json j;
    j["valid"] = report.ok;
    j["detail"] = report.detail;
    j["config_hash"] = ryd::config_hash(cfg);
    ryd::write_text_file((dir / "embedding.json").string(),
                         ryd::embedding_to_json(*cfg.embedding).dump(2) + "\n");
    ryd::write_text_file((dir / "validation.json").string(), j.dump(2) + "\n");
    std::printf("%s\n", j.dump().c_str());
    return report.ok ? 0 : 1;
}

int cmd_anneal(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto dir = prepare_out(opts);
    write_manifest("anneal", cfg, dir);
    std::fprintf(stderr, "[anneal] %d sites, dt=%g us, %s\n", cfg.physical_layout().n_sites(),
                 cfg.evolve.dt_us, opts.exact ? "exact" : "sampled");
    const ryd::AnnealOutput out = ryd::run_anneal(cfg, opts.exact, opts.force);
    const json j = out.record.to_json();
    ryd::write_text_file((dir / "run_record.json").string(), j.dump(2) + "\n");
    if (!out.trajectory.empty()) {
        ryd::write_text_file((dir / "trajectory.csv").string(),
                             ryd::trajectory_csv(out, out.record.n_sites,
                                                 cfg.evolve.trajectory_floor));
    }
    json brief;
    brief["argmax"] = j.at("argmax");
    if (j.contains("decoded_argmax")) brief["decoded_argmax"] = j.at("decoded_argmax");
    brief["estimated_cost"] = j.at("estimated_cost");
    std::printf("%s\n", brief.dump().c_str());
    return 0;
}

int cmd_optimize(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto dir = prepare_out(opts);
    write_manifest("optimize", cfg, dir);
    std::fprintf(stderr, "[optimize] budget %d, %d shots per evaluation\n",
                 cfg.optimizer ? cfg.optimizer->budget : 0,
                 cfg.optimizer ? cfg.optimizer->shots_per_eval : 0);
    const ryd::OptimizeOutput out = ryd::run_optimize(cfg);

    fs::create_directories(dir / "evals");
    for (std::size_t i = 0; i < out.eval_records.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "eval_%04zu.json", i);
        ryd::write_text_file((dir / "evals" / name).string(),
                             out.eval_records[i].to_json().dump(2) + "\n");
    }
    ryd::write_text_file((dir / "summary.csv").string(),
                         ryd::optimize_summary_csv(out.result, cfg.optimizer->tunables));
    ryd::write_text_file((dir / "verification.json").string(),
                         out.verification.to_json().dump(2) + "\n");

    json j;
    j["best_cost"] = out.result.best_cost;
    j["best_values"] = out.result.best_values;
    j["tunables"] = cfg.optimizer->tunables;
    j["evaluations"] = out.result.evaluations;
    j["verification_argmax"] = ryd::config_to_string(out.verification.argmax,
                                                     out.verification.n_sites);
    if (out.verification.decoded_argmax) {
        j["verification_decoded_argmax"] =
            ryd::config_to_string(*out.verification.decoded_argmax, out.verification.n_logical);
    }
    j["config_hash"] = ryd::config_hash(cfg);
    ryd::write_text_file((dir / "result.json").string(), j.dump(2) + "\n");
    std::printf("%s\n", j.dump().c_str());
    return 0;
}

int cmd_calibrate(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto dir = prepare_out(opts);
    write_manifest("calibrate", cfg, dir);
    const ryd::CalibrationHistory hist = ryd::run_calibrate(cfg);
    ryd::write_text_file((dir / "calibration.csv").string(), ryd::calibration_csv(hist));
    json j;
    j["iterations"] = hist.iterations.size();
    j["converged"] = hist.converged;
    j["final_rms"] = hist.iterations.empty() ? 0.0 : hist.iterations.back().rms;
    std::printf("%s\n", j.dump().c_str());
    return hist.converged ? 0 : 1;
}

int cmd_schedule_dump(const CommonOpts& opts, double dt) {
    const auto cfg = load(opts);
    if (!cfg.ramp) throw ryd::InstanceError("schedule-dump requires a 'ramp' block");
    const auto dir = prepare_out(opts);
    write_manifest("schedule-dump", cfg, dir);
    const ryd::Schedule sch(*cfg.ramp);
    const std::string csv = ryd::schedule_csv(sch, dt);
    ryd::write_text_file((dir / "schedule.csv").string(), csv);
    std::printf("schedule.csv: %zu samples\n", static_cast<std::size_t>(
        std::count(csv.begin(), csv.end(), '\n') - 1));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg-array MWIS annealing toolchain"};
    app.require_subcommand(1);

    CommonOpts opts;
    double dump_dt = 0.01;

    auto* solve = app.add_subcommand("solve", "exact MWIS by enumeration");
    add_common(solve, opts);
    auto* embed = app.add_subcommand("embed", "build and validate a graph embedding");
    add_common(embed, opts);
    auto* anneal = app.add_subcommand("anneal", "simulate the annealing protocol and sample");
    add_common(anneal, opts);
    auto* optimize = app.add_subcommand("optimize", "closed-loop ramp optimization");
    add_common(optimize, opts);
    auto* calibrate = app.add_subcommand("calibrate", "light-shift feedback calibration");
    add_common(calibrate, opts);
    auto* dump = app.add_subcommand("schedule-dump", "emit the sampled schedule as CSV");
    add_common(dump, opts);
    dump->add_option("--dt", dump_dt, "sampling step in us")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opts);
        if (embed->parsed()) return cmd_embed(opts);
        if (anneal->parsed()) return cmd_anneal(opts);
        if (optimize->parsed()) return cmd_optimize(opts);
        if (calibrate->parsed()) return cmd_calibrate(opts);
        if (dump->parsed()) return cmd_schedule_dump(opts, dump_dt);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
