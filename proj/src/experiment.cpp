#include "rydanneal/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rydanneal/errors.hpp"
#include "rydanneal/rng.hpp"

namespace ryd {

namespace {

// Seed stream tags, one per consumer of the experiment master seed.
constexpr std::uint64_t kStreamSampling = 11;
constexpr std::uint64_t kStreamOptimizer = 22;
constexpr std::uint64_t kStreamPlant = 33;
constexpr std::uint64_t kStreamCalibration = 44;
constexpr std::uint64_t kStreamVerification = 55;

json ramp_to_json(const RampParams& p) {
    json j;
    j["s"] = p.s;
    j["tau_us"] = p.tau_us;
    j["delta_min_mhz"] = p.delta_min_mhz;
    j["delta_max_mhz"] = p.delta_max_mhz;
    j["omega_max_mhz"] = p.omega_max_mhz;
    j["t_rise_us"] = p.t_rise_us;
    j["t_fall_us"] = p.t_fall_us;
    return j;
}

RampParams ramp_from_json(const json& j) {
    RampParams p;
    for (const char* field :
         {"s", "tau_us", "delta_min_mhz", "delta_max_mhz", "omega_max_mhz"}) {
        if (!j.contains(field)) {
            throw InstanceError(std::string("ramp is missing field '") + field + "'");
        }
    }
    p.s = j.at("s").get<double>();
    p.tau_us = j.at("tau_us").get<double>();
    p.delta_min_mhz = j.at("delta_min_mhz").get<double>();
    p.delta_max_mhz = j.at("delta_max_mhz").get<double>();
    p.omega_max_mhz = j.at("omega_max_mhz").get<double>();
    p.t_rise_us = j.value("t_rise_us", 0.1);
    p.t_fall_us = j.value("t_fall_us", 0.1);
    p.validate();
    return p;
}

json layout_to_json(const AtomLayout& l) {
    json j;
    json pos = json::array();
    for (const auto& p : l.positions) pos.push_back({p[0], p[1]});
    j["positions"] = pos;
    j["site_weights"] = l.site_weights;
    j["unit_distance"] = l.unit_distance;
    j["r_edge_factor"] = l.r_edge_factor;
    return j;
}

AtomLayout layout_from_json(const json& j) {
    for (const char* field : {"positions", "site_weights", "unit_distance"}) {
        if (!j.contains(field)) {
            throw InstanceError(std::string("layout is missing field '") + field + "'");
        }
    }
    std::vector<std::array<double, 2>> positions;
    for (const auto& p : j.at("positions")) {
        positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return AtomLayout::make(std::move(positions), j.at("site_weights").get<std::vector<double>>(),
                            j.at("unit_distance").get<double>(), j.value("r_edge_factor", 1.5));
}

std::array<double, 5> five_weights(const json& arr, const char* field) {
    if (!arr.is_array() || arr.size() != 5) {
        throw InstanceError(std::string("field '") + field + "' must be an array of 5 weights");
    }
    std::array<double, 5> w{};
    for (std::size_t i = 0; i < 5; ++i) w[i] = arr[i].get<double>();
    return w;
}

Config counts_argmax(const std::map<Config, std::uint64_t>& counts, int n) {
    Config best = 0;
    std::uint64_t best_count = 0;
    for (const auto& [c, k] : counts) {
        if (k > best_count ||
            (k == best_count && config_to_string(c, n) < config_to_string(best, n))) {
            best = c;
            best_count = k;
        }
    }
    return best;
}

}  // namespace

IntegratorMethod EvolveBlock::integrator() const {
    if (method == "split4") return IntegratorMethod::Split4;
    if (method == "rk4") return IntegratorMethod::Rk4;
    throw ParameterError("evolve.method must be 'split4' or 'rk4'");
}

WeightedGraph ExperimentConfig::cost_graph() const {
    if (embedding) return udg_from_layout(embedding->layout);
    if (graph) return *graph;
    if (layout) return udg_from_layout(*layout);
    throw InstanceError("config needs one of 'graph', 'embedding' or 'layout'");
}

AtomLayout ExperimentConfig::physical_layout() const {
    if (embedding) return embedding->layout;
    if (layout) return *layout;
    throw InstanceError("config needs an 'embedding' or 'layout' block for simulation");
}

RydbergSystem ExperimentConfig::make_system() const {
    return RydbergSystem(physical_layout(), system.c6_magnitude_mhz_um6(), system.include_tails);
}

double ExperimentConfig::penalty() const {
    return penalty_u > 0.0 ? penalty_u : cost_graph().default_penalty();
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    if (cfg.graph) j["graph"] = graph_to_json(*cfg.graph);
    if (cfg.embedding) j["embedding"] = embedding_to_json(*cfg.embedding);
    if (cfg.layout) j["layout"] = layout_to_json(*cfg.layout);
    j["system"] = {{"c6_ghz_um6", cfg.system.c6_ghz_um6},
                   {"omega_mhz", cfg.system.omega_mhz},
                   {"include_tails", cfg.system.include_tails}};
    if (cfg.ramp) j["ramp"] = ramp_to_json(*cfg.ramp);
    j["evolve"] = {{"dt_us", cfg.evolve.dt_us},
                   {"method", cfg.evolve.method},
                   {"shots", cfg.evolve.shots},
                   {"snapshot_times_us", cfg.evolve.snapshot_times_us},
                   {"trajectory_floor", cfg.evolve.trajectory_floor}};
    if (cfg.optimizer) {
        json b = json::object();
        for (const auto& [name, bounds] : cfg.optimizer->bounds) {
            b[name] = {bounds.lo, bounds.hi};
        }
        j["optimizer"] = {{"tunables", cfg.optimizer->tunables},
                          {"bounds", b},
                          {"budget", cfg.optimizer->budget},
                          {"shots_per_eval", cfg.optimizer->shots_per_eval},
                          {"final_shots", cfg.optimizer->final_shots}};
    }
    if (cfg.plant) {
        j["plant"] = {{"n_sites", cfg.plant->n_sites},
                      {"gain_spread", cfg.plant->gain_spread},
                      {"crosstalk", cfg.plant->crosstalk},
                      {"noise_sigma", cfg.plant->noise_sigma},
                      {"targets", cfg.plant->targets},
                      {"max_iters", cfg.plant->max_iters},
                      {"tol", cfg.plant->tol}};
    }
    j["penalty_u"] = cfg.penalty_u;
    j["seed"] = cfg.seed;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("graph")) {
        const json& g = j.at("graph");
        cfg.graph = g.contains("file") ? graph_from_json(json::parse(read_text_file(
                                             g.at("file").get<std::string>())))
                                       : graph_from_json(g);
    }
    if (j.contains("embedding")) {
        const json& e = j.at("embedding");
        if (e.contains("paper_fixture_2d")) {
            cfg.embedding = paper_fixture_2d(
                five_weights(e.at("paper_fixture_2d").at("weights"), "embedding.paper_fixture_2d"));
        } else if (e.contains("file")) {
            cfg.embedding =
                embedding_from_json(json::parse(read_text_file(e.at("file").get<std::string>())));
        } else {
            cfg.embedding = embedding_from_json(e);
        }
    }
    if (j.contains("layout")) cfg.layout = layout_from_json(j.at("layout"));
    if (j.contains("system")) {
        const json& s = j.at("system");
        cfg.system.c6_ghz_um6 = s.value("c6_ghz_um6", cfg.system.c6_ghz_um6);
        cfg.system.omega_mhz = s.value("omega_mhz", cfg.system.omega_mhz);
        cfg.system.include_tails = s.value("include_tails", cfg.system.include_tails);
    }
    if (j.contains("ramp")) cfg.ramp = ramp_from_json(j.at("ramp"));
    if (j.contains("evolve")) {
        const json& e = j.at("evolve");
        cfg.evolve.dt_us = e.value("dt_us", cfg.evolve.dt_us);
        cfg.evolve.method = e.value("method", cfg.evolve.method);
        cfg.evolve.shots = e.value("shots", cfg.evolve.shots);
        cfg.evolve.snapshot_times_us =
            e.value("snapshot_times_us", cfg.evolve.snapshot_times_us);
        cfg.evolve.trajectory_floor = e.value("trajectory_floor", cfg.evolve.trajectory_floor);
        cfg.evolve.integrator();  // validates the method name
    }
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        OptimizerBlock blk;
        if (!o.contains("tunables")) throw InstanceError("optimizer is missing field 'tunables'");
        blk.tunables = o.at("tunables").get<std::vector<std::string>>();
        if (o.contains("bounds")) {
            for (const auto& [name, arr] : o.at("bounds").items()) {
                if (!arr.is_array() || arr.size() != 2) {
                    throw InstanceError("optimizer.bounds entries must be [lo, hi]");
                }
                blk.bounds[name] = {arr[0].get<double>(), arr[1].get<double>()};
            }
        }
        blk.budget = o.value("budget", blk.budget);
        blk.shots_per_eval = o.value("shots_per_eval", blk.shots_per_eval);
        blk.final_shots = o.value("final_shots", blk.final_shots);
        cfg.optimizer = std::move(blk);
    }
    if (j.contains("plant")) {
        const json& p = j.at("plant");
        PlantBlock blk;
        blk.n_sites = p.value("n_sites", blk.n_sites);
        blk.gain_spread = p.value("gain_spread", blk.gain_spread);
        blk.crosstalk = p.value("crosstalk", blk.crosstalk);
        blk.noise_sigma = p.value("noise_sigma", blk.noise_sigma);
        blk.targets = p.value("targets", blk.targets);
        blk.max_iters = p.value("max_iters", blk.max_iters);
        blk.tol = p.value("tol", blk.tol);
        cfg.plant = std::move(blk);
    }
    cfg.penalty_u = j.value("penalty_u", 0.0);
    cfg.seed = j.value("seed", std::uint64_t{1});
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& err) {
        throw InstanceError("config '" + path + "' is not valid JSON: " + err.what());
    }
    return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& cfg) {
    return "fnv1a:" + hex64(fnv1a64(config_to_json(cfg).dump()));
}

std::vector<std::string> fixture_names() {
    return {"1d_uniform", "1d_weighted", "2d_21211", "2d_12122", "2d_fractional",
            "calibrate_12122"};
}

ExperimentConfig fixture_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.system = SystemConfig{};  // published |C6| and Omega

    const RampParams ramp_1d{0.3, 3.0, -6.0, 6.0, 2.70, 0.1, 0.1};
    // Zero crossing of the 2D sweep sits at 0.6 us into the 1.65 us ramp;
    // delta_min is the root of cubic_delta(0.6) = 0 for s = 0.4, delta_max = 4.2.
    const RampParams ramp_2d{0.4, 1.65, -2.9687612208258516, 4.2, 2.70, 0.1, 0.1};

    auto make_2d = [&](const std::array<double, 5>& w, std::uint64_t seed) {
        cfg.embedding = paper_fixture_2d(w);
        cfg.ramp = ramp_2d;
        cfg.seed = seed;
    };

    if (name == "1d_uniform") {
        cfg.layout = AtomLayout::chain(9, 7.0, std::vector<double>(9, 1.0));
        cfg.ramp = ramp_1d;
        cfg.seed = 101;
    } else if (name == "1d_weighted") {
        cfg.layout = AtomLayout::chain(9, 7.0, {1, 2, 1, 2, 1, 2, 1, 2, 1});
        cfg.ramp = ramp_1d;
        cfg.seed = 102;
    } else if (name == "2d_21211") {
        make_2d({2, 1, 2, 1, 1}, 201);
        OptimizerBlock opt;
        opt.tunables = {"s", "delta_min", "delta_max"};
        opt.bounds["s"] = {0.0, 1.0};
        opt.bounds["delta_min"] = {-5.0, -1.0};
        // Upper bound keeps max_i(w_i) * delta_max below V(8 um) = 12.88 MHz
        // for every bundled weighting (largest site weight is w_beta = 3).
        opt.bounds["delta_max"] = {3.5, 4.2};
        opt.budget = 80;
        cfg.optimizer = opt;
    } else if (name == "2d_12122") {
        make_2d({1, 2, 1, 2, 2}, 202);
    } else if (name == "2d_fractional") {
        make_2d({7.0 / 4.0, 5.0 / 4.0, 9.0 / 4.0, 3.0 / 2.0, 1.0}, 203);
    } else if (name == "calibrate_12122") {
        const Embedding e = paper_fixture_2d({1, 2, 1, 2, 2});
        PlantBlock plant;
        plant.n_sites = e.n_sites();
        plant.targets = e.layout.site_weights;
        cfg.plant = plant;
        cfg.seed = 301;
    } else {
        throw InstanceError("unknown fixture '" + name + "'");
    }
    return cfg;
}

json RunRecord::to_json() const {
    json j;
    j["argmax"] = config_to_string(argmax, n_sites);
    if (!exact) {
        json c = json::object();
        for (const auto& [cfg, k] : counts) c[config_to_string(cfg, n_sites)] = k;
        j["counts"] = c;
        j["shots"] = shots;
    } else {
        json p = json::object();
        for (std::size_t m = 0; m < exact_probabilities.size(); ++m) {
            if (exact_probabilities[m] > 1e-12) {
                p[config_to_string(static_cast<Config>(m), n_sites)] = exact_probabilities[m];
            }
        }
        j["probabilities"] = p;
        j["shots"] = 0;
    }
    if (decoded_argmax) j["decoded_argmax"] = config_to_string(*decoded_argmax, n_logical);
    j["estimated_cost"] = estimated_cost;
    j["exact"] = exact;
    j["config_hash"] = hash;
    j["metadata"] = {{"dt_us", dt_us},
                     {"include_tails", include_tails},
                     {"integrator", method},
                     {"norm_drift", norm_drift}};
    j["penalty_u"] = penalty_u;
    j["ramp"] = ramp_to_json(ramp);
    j["seed"] = seed;
    j["sweep_time_us"] = sweep_time_us;
    j["total_duration_us"] = total_duration_us;
    return j;
}

json SolveOutput::to_json() const {
    json j;
    j["optimal_cost"] = result.optimal_cost;
    json opt = json::array();
    for (Config c : result.optima) opt.push_back(config_to_string(c, n_sites));
    j["optima"] = opt;
    if (decoded_optima) {
        json dec = json::array();
        for (Config c : *decoded_optima) dec.push_back(config_to_string(c, n_logical));
        j["decoded_optima"] = dec;
    }
    j["penalty_u"] = penalty_u;
    j["config_hash"] = hash;
    return j;
}

SolveOutput run_solve(const ExperimentConfig& cfg) {
    SolveOutput out;
    const WeightedGraph g = cfg.cost_graph();
    out.result = brute_force_mwis(g);
    out.n_sites = g.n_vertices;
    out.penalty_u = cfg.penalty();
    out.hash = config_hash(cfg);
    if (cfg.embedding) {
        std::vector<Config> decoded;
        std::set<Config> seen;
        for (Config c : out.result.optima) {
            const Config d = decode(*cfg.embedding, c);
            if (seen.insert(d).second) decoded.push_back(d);
        }
        out.decoded_optima = std::move(decoded);
        out.n_logical = cfg.embedding->n_logical();
    }
    return out;
}

AnnealOutput run_anneal(const ExperimentConfig& cfg, bool exact, bool force) {
    if (!cfg.ramp) throw InstanceError("anneal requires a 'ramp' block");
    const RydbergSystem sys = cfg.make_system();
    const WeightedGraph g = cfg.cost_graph();
    const double u = cfg.penalty();

    const BlockadeCapCheck cap = check_blockade_cap(sys, cfg.ramp->delta_max_mhz);
    if (!cap.ok && !force) {
        throw ParameterError("light-shift cap violated: max_i(w_i) * delta_max exceeds the "
                             "minimum blockade-edge V_ij by " +
                             std::to_string(-cap.margin) + " MHz (pass --force to run anyway)");
    }

    const Schedule sch(*cfg.ramp);
    EvolutionConfig evo;
    evo.dt_us = cfg.evolve.dt_us;
    evo.method = cfg.evolve.integrator();
    evo.snapshot_times_us = cfg.evolve.snapshot_times_us;
    const EvolveResult res = evolve(sys, sch, evo);
    const std::vector<double> dist = probabilities(res.state);

    AnnealOutput out;
    RunRecord& rec = out.record;
    rec.n_sites = sys.n_sites();
    rec.ramp = *cfg.ramp;
    rec.seed = cfg.seed;
    rec.penalty_u = u;
    rec.exact = exact;
    rec.norm_drift = res.norm_drift;
    rec.sweep_time_us = cfg.ramp->tau_us;
    rec.total_duration_us = sch.total_duration();
    rec.hash = config_hash(cfg);
    rec.dt_us = cfg.evolve.dt_us;
    rec.include_tails = cfg.system.include_tails;
    rec.method = cfg.evolve.method;

    if (exact) {
        rec.exact_probabilities = dist;
        rec.argmax = static_cast<Config>(
            std::distance(dist.begin(), std::max_element(dist.begin(), dist.end())));
        double acc = 0.0;
        for (std::size_t m = 0; m < dist.size(); ++m) {
            acc += dist[m] * mwis_cost(g, static_cast<Config>(m), u);
        }
        rec.estimated_cost = acc;
    } else {
        if (cfg.evolve.shots == 0) throw InstanceError("anneal requires shots > 0 (or --exact)");
        rec.shots = cfg.evolve.shots;
        rec.counts = sample_counts(dist, cfg.evolve.shots, mix_seed(cfg.seed, kStreamSampling));
        rec.estimated_cost = expectation_cost(rec.counts, g, u);
        rec.argmax = counts_argmax(rec.counts, rec.n_sites);
    }
    if (cfg.embedding) {
        rec.decoded_argmax = decode(*cfg.embedding, rec.argmax);
        rec.n_logical = cfg.embedding->n_logical();
    }
    for (const auto& [t, state] : res.snapshots) {
        out.trajectory.push_back({t, probabilities(state)});
    }
    return out;
}

OptimizeOutput run_optimize(const ExperimentConfig& cfg) {
    if (!cfg.optimizer) throw InstanceError("optimize requires an 'optimizer' block");
    if (!cfg.ramp) throw InstanceError("optimize requires a 'ramp' block (initial guess)");

    OptProblem prob{cfg.make_system(), cfg.cost_graph(), *cfg.ramp, cfg.optimizer->tunables,
                    cfg.optimizer->bounds, cfg.optimizer->shots_per_eval, cfg.penalty_u,
                    mix_seed(cfg.seed, kStreamOptimizer), EvolutionConfig{}};
    prob.evolution.dt_us = cfg.evolve.dt_us;
    prob.evolution.method = cfg.evolve.integrator();

    OptimizeOutput out;
    const std::string hash = config_hash(cfg);
    const auto observer = [&](int index, const RampParams& ramp, const EvalOutput& eval,
                              std::uint64_t seed) {
        RunRecord rec;
        rec.counts = eval.counts;
        rec.shots = static_cast<std::uint64_t>(prob.shots_per_eval);
        rec.estimated_cost = eval.cost;
        rec.ramp = ramp;
        rec.seed = seed;
        rec.penalty_u = prob.penalty();
        rec.argmax = counts_argmax(eval.counts, prob.system.n_sites());
        rec.n_sites = prob.system.n_sites();
        rec.norm_drift = eval.norm_drift;
        rec.sweep_time_us = ramp.tau_us;
        rec.total_duration_us = ramp.t_rise_us + ramp.tau_us + ramp.t_fall_us;
        rec.hash = hash;
        rec.dt_us = cfg.evolve.dt_us;
        rec.include_tails = cfg.system.include_tails;
        rec.method = cfg.evolve.method;
        if (cfg.embedding) {
            rec.decoded_argmax = decode(*cfg.embedding, rec.argmax);
            rec.n_logical = cfg.embedding->n_logical();
        }
        (void)index;
        out.eval_records.push_back(std::move(rec));
    };
    out.result = optimize(prob, cfg.optimizer->budget, observer);

    // Final verification run at the best parameters with the full shot count.
    ExperimentConfig verify = cfg;
    verify.ramp = prob.ramp_with(out.result.best_values);
    verify.evolve.shots = cfg.optimizer->final_shots;
    verify.evolve.snapshot_times_us.clear();
    verify.seed = mix_seed(cfg.seed, kStreamVerification);
    out.verification = run_anneal(verify, /*exact=*/false, /*force=*/true).record;
    return out;
}

CalibrationHistory run_calibrate(const ExperimentConfig& cfg) {
    if (!cfg.plant) throw InstanceError("calibrate requires a 'plant' block");
    const PlantBlock& blk = *cfg.plant;
    std::vector<double> targets = blk.targets;
    if (targets.empty()) {
        if (!cfg.embedding) {
            throw InstanceError("plant.targets is empty and no embedding provides weights");
        }
        targets = cfg.embedding->layout.site_weights;
    }
    const PlantModel plant = PlantModel::random(static_cast<int>(targets.size()),
                                                blk.gain_spread, blk.crosstalk, blk.noise_sigma,
                                                mix_seed(cfg.seed, kStreamPlant));
    return run_calibration(plant, targets, blk.max_iters, blk.tol,
                           mix_seed(cfg.seed, kStreamCalibration));
}

std::string schedule_csv(const Schedule& sch, double dt_us) {
    if (!(dt_us > 0.0)) throw ParameterError("schedule dump requires dt > 0");
    std::ostringstream out;
    out << "t_us,omega_mhz,delta_mhz,delta_ac_mhz\n";
    const double total = sch.total_duration();
    const auto n = static_cast<std::uint64_t>(std::floor(total / dt_us + 1e-9));
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double t = std::min(total, k * dt_us);
        const DriveSample d = sch.sample(t);
        out << format_double(t) << ',' << format_double(d.omega) << ','
            << format_double(d.delta_global) << ',' << format_double(d.delta_ac_unit) << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const AnnealOutput& out, int n_sites, double floor) {
    std::vector<Config> cols;
    const std::size_t dim = std::size_t{1} << n_sites;
    for (std::size_t m = 0; m < dim; ++m) {
        for (const auto& pt : out.trajectory) {
            if (pt.probabilities[m] > floor) {
                cols.push_back(static_cast<Config>(m));
                break;
            }
        }
    }
    std::sort(cols.begin(), cols.end(), [&](Config a, Config b) {
        return config_to_string(a, n_sites) < config_to_string(b, n_sites);
    });
    std::ostringstream os;
    os << "t_us";
    for (Config c : cols) os << ',' << config_to_string(c, n_sites);
    os << '\n';
    for (const auto& pt : out.trajectory) {
        os << format_double(pt.t_us);
        for (Config c : cols) os << ',' << format_double(pt.probabilities[c]);
        os << '\n';
    }
    return os.str();
}

std::string calibration_csv(const CalibrationHistory& h) {
    std::ostringstream os;
    os << "iteration,rms_error\n";
    for (std::size_t i = 0; i < h.iterations.size(); ++i) {
        os << (i + 1) << ',' << format_double(h.iterations[i].rms) << '\n';
    }
    os << "\nsite,final_commanded_weight\n";
    if (!h.iterations.empty()) {
        const auto& final_cmd = h.iterations.back().commanded;
        for (std::size_t i = 0; i < final_cmd.size(); ++i) {
            os << i << ',' << format_double(final_cmd[i]) << '\n';
        }
    }
    return os.str();
}

std::string optimize_summary_csv(const OptResult& r, const std::vector<std::string>& tunables) {
    std::ostringstream os;
    os << "evaluation";
    for (const auto& name : tunables) os << ',' << name;
    os << ",cost,std_err\n";
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        os << i;
        for (double v : r.history[i].values) os << ',' << format_double(v);
        os << ',' << format_double(r.history[i].cost) << ','
           << format_double(r.history[i].std_err) << '\n';
    }
    return os.str();
}

}  // namespace ryd
