#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydanneal/embedding.hpp"
#include "rydanneal/errors.hpp"
#include "rydanneal/experiment.hpp"
#include "rydanneal/graph.hpp"
#include "rydanneal/hamiltonian.hpp"
#include "rydanneal/io.hpp"
#include "rydanneal/schedule.hpp"

namespace py = pybind11;
using ryd::json;

// JSON strings cross the boundary; the python package wraps them as dicts.

namespace {

std::string solve_graph(const std::string& graph_json) {
    const ryd::WeightedGraph g = ryd::graph_from_json(json::parse(graph_json));
    const ryd::MwisResult r = ryd::brute_force_mwis(g);
    json out;
    out["optimal_cost"] = r.optimal_cost;
    json optima = json::array();
    for (ryd::Config c : r.optima) optima.push_back(ryd::config_to_string(c, g.n_vertices));
    out["optima"] = optima;
    return out.dump();
}

double cost_of(const std::string& graph_json, const std::string& config, double u) {
    const ryd::WeightedGraph g = ryd::graph_from_json(json::parse(graph_json));
    return ryd::mwis_cost(g, ryd::config_from_string(config), u);
}

bool independent(const std::string& graph_json, const std::string& config) {
    const ryd::WeightedGraph g = ryd::graph_from_json(json::parse(graph_json));
    return ryd::is_independent(g, ryd::config_from_string(config));
}

std::string fixture_2d(const std::vector<double>& w) {
    if (w.size() != 5) throw ryd::InstanceError("paper_fixture_2d takes 5 weights");
    const ryd::Embedding e = ryd::paper_fixture_2d({w[0], w[1], w[2], w[3], w[4]});
    return ryd::embedding_to_json(e).dump();
}

std::string validate(const std::string& embedding_json) {
    const ryd::Embedding e = ryd::embedding_from_json(json::parse(embedding_json));
    const ryd::ValidationReport r = ryd::validate_embedding(e);
    json out;
    out["valid"] = r.ok;
    out["detail"] = r.detail;
    return out.dump();
}

std::string decode_config(const std::string& embedding_json, const std::string& physical) {
    const ryd::Embedding e = ryd::embedding_from_json(json::parse(embedding_json));
    const ryd::Config d = ryd::decode(e, ryd::config_from_string(physical));
    return ryd::config_to_string(d, e.n_logical());
}

std::string anneal(const std::string& config_json, bool exact, bool force) {
    const ryd::ExperimentConfig cfg = ryd::config_from_json(json::parse(config_json));
    return ryd::run_anneal(cfg, exact, force).record.to_json().dump();
}

std::string solve_config(const std::string& config_json) {
    const ryd::ExperimentConfig cfg = ryd::config_from_json(json::parse(config_json));
    return ryd::run_solve(cfg).to_json().dump();
}

std::string optimize_config(const std::string& config_json) {
    const ryd::ExperimentConfig cfg = ryd::config_from_json(json::parse(config_json));
    const ryd::OptimizeOutput out = ryd::run_optimize(cfg);
    json j;
    j["best_cost"] = out.result.best_cost;
    j["best_values"] = out.result.best_values;
    j["evaluations"] = out.result.evaluations;
    j["verification"] = out.verification.to_json();
    json hist = json::array();
    for (const auto& rec : out.result.history) {
        hist.push_back({{"values", rec.values}, {"cost", rec.cost}, {"std_err", rec.std_err}});
    }
    j["history"] = hist;
    return j.dump();
}

std::string calibrate_config(const std::string& config_json) {
    const ryd::ExperimentConfig cfg = ryd::config_from_json(json::parse(config_json));
    const ryd::CalibrationHistory h = ryd::run_calibrate(cfg);
    json j;
    j["converged"] = h.converged;
    json rms = json::array();
    for (const auto& it : h.iterations) rms.push_back(it.rms);
    j["rms"] = rms;
    if (!h.iterations.empty()) j["final_commanded"] = h.iterations.back().commanded;
    return j.dump();
}

std::string fixture(const std::string& name) {
    return ryd::config_to_json(ryd::fixture_config(name)).dump();
}

std::string schedule_table(const std::string& ramp_json, double dt_us) {
    json j = json::parse(ramp_json);
    ryd::RampParams p;
    p.s = j.at("s").get<double>();
    p.tau_us = j.at("tau_us").get<double>();
    p.delta_min_mhz = j.at("delta_min_mhz").get<double>();
    p.delta_max_mhz = j.at("delta_max_mhz").get<double>();
    p.omega_max_mhz = j.at("omega_max_mhz").get<double>();
    p.t_rise_us = j.value("t_rise_us", 0.1);
    p.t_fall_us = j.value("t_fall_us", 0.1);
    return ryd::schedule_csv(ryd::Schedule(p), dt_us);
}

}  // namespace

PYBIND11_MODULE(_rydanneal, m) {
    m.doc() = "Rydberg-array MWIS annealing toolchain (C++ core)";

    m.def("blockade_radius", &ryd::blockade_radius, py::arg("c6_magnitude"), py::arg("omega"),
          "Resonant blockade radius (|C6|/Omega)^(1/6) in um");
    m.def("ancilla_weights",
          [](double w1, double w2, double w3, double w4, double w5) {
              return ryd::ancilla_weights({w1, w2, w3, w4, w5});
          },
          "Gadget ancilla weights (w_alpha, w_beta)");
    m.def("solve_graph_json", &solve_graph, py::arg("graph_json"));
    m.def("mwis_cost_json", &cost_of, py::arg("graph_json"), py::arg("config"), py::arg("u"));
    m.def("is_independent_json", &independent, py::arg("graph_json"), py::arg("config"));
    m.def("paper_fixture_2d_json", &fixture_2d, py::arg("weights"));
    m.def("validate_embedding_json", &validate, py::arg("embedding_json"));
    m.def("decode_json", &decode_config, py::arg("embedding_json"), py::arg("physical"));
    m.def("run_anneal_json", &anneal, py::arg("config_json"), py::arg("exact") = false,
          py::arg("force") = false);
    m.def("run_solve_json", &solve_config, py::arg("config_json"));
    m.def("run_optimize_json", &optimize_config, py::arg("config_json"));
    m.def("run_calibrate_json", &calibrate_config, py::arg("config_json"));
    m.def("fixture_config_json", &fixture, py::arg("name"));
    m.def("schedule_csv", &schedule_table, py::arg("ramp_json"), py::arg("dt_us") = 0.01);
}
