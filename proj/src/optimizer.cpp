#include "rydanneal/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rydanneal/errors.hpp"
#include "rydanneal/rng.hpp"

namespace ryd {

namespace {

double clamp_to(const Bounds& b, double x) { return std::clamp(x, b.lo, b.hi); }

struct Vertex {
    std::vector<double> values;
    double cost = 0.0;
    double std_err = 0.0;
    std::uint64_t order = 0;  // age, for deterministic tie-breaking
};

// "new beats old" only when the improvement exceeds the sampling error of
// the comparison; otherwise the incumbent is retained.
bool beats(double new_cost, double new_se, const Vertex& inc) {
    return new_cost < inc.cost - std::max(new_se, inc.std_err);
}

}  // namespace

double OptProblem::penalty() const {
    return penalty_u > 0.0 ? penalty_u : cost_graph.default_penalty();
}

RampParams OptProblem::ramp_with(std::span<const double> values) const {
    if (values.size() != tunables.size()) {
        throw InstanceError("tunable value count does not match tunables");
    }
    RampParams p = base_ramp;
    for (std::size_t i = 0; i < tunables.size(); ++i) {
        const std::string& name = tunables[i];
        if (name == "s") {
            p.s = values[i];
        } else if (name == "tau") {
            p.tau_us = values[i];
        } else if (name == "delta_min") {
            p.delta_min_mhz = values[i];
        } else if (name == "delta_max") {
            p.delta_max_mhz = values[i];
        } else {
            throw ParameterError("unknown tunable '" + name + "'");
        }
    }
    return p;
}

EvalOutput evaluate_full(const OptProblem& prob, const RampParams& params, std::uint64_t seed) {
    params.validate();
    const double u = prob.penalty();

    EvalOutput out;
    double feasibility_penalty = 0.0;
    const BlockadeCapCheck cap = check_blockade_cap(prob.system, params.delta_max_mhz);
    out.cap_ok = cap.ok;
    if (!cap.ok) {
        // Keep the landscape box-shaped: infeasible caps cost extra instead
        // of raising.
        feasibility_penalty = 10.0 * u * prob.system.n_sites();
    }

    const Schedule sch(params);
    const EvolveResult evo = evolve(prob.system, sch, prob.evolution);
    out.norm_drift = evo.norm_drift;
    const std::vector<double> dist = probabilities(evo.state);
    out.counts = sample_counts(dist, static_cast<std::uint64_t>(prob.shots_per_eval), seed);
    const double cost = expectation_cost(out.counts, prob.cost_graph, u);

    // Multinomial standard error of the mean cost.
    double m2 = 0.0;
    for (const auto& [c, n] : out.counts) {
        const double d = mwis_cost(prob.cost_graph, c, u) - cost;
        m2 += static_cast<double>(n) * d * d;
    }
    const double shots = static_cast<double>(prob.shots_per_eval);
    out.std_err = std::sqrt(m2 / shots / shots);
    out.cost = cost + feasibility_penalty;
    return out;
}

double evaluate(const OptProblem& prob, const RampParams& params, std::uint64_t seed,
                double* std_err) {
    const EvalOutput out = evaluate_full(prob, params, seed);
    if (std_err != nullptr) *std_err = out.std_err;
    return out.cost;
}

OptResult nelder_mead(const Objective& f, const std::vector<Bounds>& box, int budget,
                      std::uint64_t master_seed, const std::vector<double>* initial) {
    const std::size_t n = box.size();
    if (budget < static_cast<int>(n) + 1) {
        throw ParameterError("budget must be at least the number of tunables + 1");
    }
    for (const Bounds& b : box) {
        if (!(b.lo < b.hi)) throw ParameterError("bounds must satisfy lo < hi");
    }

    OptResult result;
    int evals = 0;
    auto call = [&](const std::vector<double>& x) {
        const std::uint64_t seed = mix_seed(master_seed, static_cast<std::uint64_t>(evals));
        double se = 0.0;
        const double cost = f(x, seed, &se);
        result.history.push_back({x, cost, se, seed});
        ++evals;
        return std::pair<double, double>{cost, se};
    };
    auto out_of_budget = [&] { return evals >= budget; };

    // Initial simplex: start point plus one vertex per dimension nudged by a
    // quarter of the box range.
    std::vector<Vertex> simplex;
    std::vector<double> x0(n);
    for (std::size_t i = 0; i < n; ++i) {
        x0[i] = (initial != nullptr) ? clamp_to(box[i], (*initial)[i])
                                     : 0.5 * (box[i].lo + box[i].hi);
    }
    {
        const auto [c, se] = call(x0);
        simplex.push_back({x0, c, se, 0});
    }
    for (std::size_t i = 0; i < n && !out_of_budget(); ++i) {
        std::vector<double> x = x0;
        const double range = box[i].hi - box[i].lo;
        x[i] = clamp_to(box[i], x[i] + 0.25 * range);
        if (x[i] == x0[i]) x[i] = clamp_to(box[i], x0[i] - 0.25 * range);
        const auto [c, se] = call(x);
        simplex.push_back({x, c, se, static_cast<std::uint64_t>(i) + 1});
    }

    auto sort_simplex = [&] {
        std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            return a.order < b.order;
        });
    };
    std::uint64_t next_order = simplex.size();

    while (!out_of_budget() && simplex.size() == n + 1) {
        sort_simplex();
        Vertex& worst = simplex.back();

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].values[i];
        }
        for (std::size_t i = 0; i < n; ++i) centroid[i] /= static_cast<double>(n);

        auto project = [&](double scale) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = clamp_to(box[i], centroid[i] + scale * (centroid[i] - worst.values[i]));
            }
            return x;
        };

        const std::vector<double> xr = project(1.0);
        const auto [cr, ser] = call(xr);

        if (beats(cr, ser, simplex.front())) {
            // Try to expand; retain the reflected point unless the expansion
            // clearly improves on it.
            if (!out_of_budget()) {
                const std::vector<double> xe = project(2.0);
                const auto [ce, see] = call(xe);
                if (ce < cr - std::max(ser, see)) {
                    worst = {xe, ce, see, next_order++};
                } else {
                    worst = {xr, cr, ser, next_order++};
                }
            } else {
                worst = {xr, cr, ser, next_order++};
            }
        } else if (beats(cr, ser, simplex[simplex.size() - 2])) {
            worst = {xr, cr, ser, next_order++};
        } else {
            // Contract toward the centroid (outside if the reflection at
            // least beat the worst vertex).
            const bool outside = beats(cr, ser, worst);
            if (out_of_budget()) break;
            const std::vector<double> xc = project(outside ? 0.5 : -0.5);
            const auto [cc, sec] = call(xc);
            if (beats(cc, sec, worst) || (outside && cc <= cr)) {
                worst = {xc, cc, sec, next_order++};
            } else {
                // Shrink toward the best vertex.
                for (std::size_t v = 1; v < simplex.size() && !out_of_budget(); ++v) {
                    std::vector<double> x(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        x[i] = clamp_to(box[i], 0.5 * (simplex[v].values[i] +
                                                       simplex.front().values[i]));
                    }
                    const auto [c, se] = call(x);
                    simplex[v] = {x, c, se, next_order++};
                }
            }
        }
    }

    result.evaluations = evals;
    const auto best = std::min_element(
        result.history.begin(), result.history.end(),
        [](const EvalRecord& a, const EvalRecord& b) { return a.cost < b.cost; });
    result.best_values = best->values;
    result.best_cost = best->cost;
    return result;
}

OptResult optimize(const OptProblem& prob, int budget, const EvalObserver& observer) {
    std::vector<Bounds> box;
    box.reserve(prob.tunables.size());
    std::vector<double> initial;
    for (const std::string& name : prob.tunables) {
        const auto it = prob.bounds.find(name);
        if (it == prob.bounds.end()) {
            throw ParameterError("missing bounds for tunable '" + name + "'");
        }
        box.push_back(it->second);
        double base = 0.0;
        if (name == "s") base = prob.base_ramp.s;
        else if (name == "tau") base = prob.base_ramp.tau_us;
        else if (name == "delta_min") base = prob.base_ramp.delta_min_mhz;
        else base = prob.base_ramp.delta_max_mhz;
        initial.push_back(std::clamp(base, it->second.lo, it->second.hi));
    }
    int index = 0;
    const Objective f = [&prob, &observer, &index](std::span<const double> values,
                                                   std::uint64_t seed, double* se) {
        const RampParams ramp = prob.ramp_with(values);
        const EvalOutput out = evaluate_full(prob, ramp, seed);
        if (observer) observer(index, ramp, out, seed);
        ++index;
        if (se != nullptr) *se = out.std_err;
        return out.cost;
    };
    return nelder_mead(f, box, budget, prob.master_seed, &initial);
}

}  // namespace ryd
