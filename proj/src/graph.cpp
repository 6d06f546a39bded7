#include "rydanneal/graph.hpp"

#include <algorithm>
#include <cmath>

#include "rydanneal/errors.hpp"

namespace ryd {

namespace {

constexpr double kTieTolerance = 1e-9;

void check_config_size(const WeightedGraph& g, Config c) {
    if (g.n_vertices < 32 && (c >> g.n_vertices) != 0) {
        throw InstanceError("configuration has bits beyond the graph's " +
                            std::to_string(g.n_vertices) + " vertices");
    }
}

// Lexicographic order of the bitstring form (site 0 leftmost).
bool lex_less(Config a, Config b, int n) {
    for (int i = 0; i < n; ++i) {
        const int ba = (a >> i) & 1u;
        const int bb = (b >> i) & 1u;
        if (ba != bb) return ba < bb;
    }
    return false;
}

}  // namespace

std::string config_to_string(Config c, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((c >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

Config config_from_string(const std::string& s) {
    if (s.size() > 31) throw InstanceError("configuration string longer than 31 bits");
    Config c = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            c |= Config{1} << i;
        } else if (s[i] != '0') {
            throw InstanceError("configuration string must contain only '0' and '1'");
        }
    }
    return c;
}

WeightedGraph WeightedGraph::make(int n_vertices, std::vector<double> weights,
                                  std::vector<std::pair<int, int>> edges) {
    if (n_vertices < 0) throw InstanceError("n_vertices must be non-negative");
    if (static_cast<int>(weights.size()) != n_vertices) {
        throw InstanceError("weights length " + std::to_string(weights.size()) +
                            " does not match n_vertices " + std::to_string(n_vertices));
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InstanceError("all weights must be > 0");
    }
    for (auto& [i, j] : edges) {
        if (i == j) throw InstanceError("self-loop on vertex " + std::to_string(i));
        if (i < 0 || j < 0 || i >= n_vertices || j >= n_vertices) {
            throw InstanceError("edge endpoint out of range");
        }
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw InstanceError("duplicate edge (" + std::to_string(dup->first) + "," +
                            std::to_string(dup->second) + ")");
    }
    WeightedGraph g;
    g.n_vertices = n_vertices;
    g.weights = std::move(weights);
    g.edges = std::move(edges);
    return g;
}

double WeightedGraph::max_weight() const {
    double m = 0.0;
    for (double w : weights) m = std::max(m, w);
    return m;
}

bool WeightedGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

double mwis_cost(const WeightedGraph& g, Config c, double u) {
    check_config_size(g, c);
    if (!(u > g.max_weight())) {
        throw ParameterError("penalty u must exceed the maximum vertex weight");
    }
    double cost = 0.0;
    for (int i = 0; i < g.n_vertices; ++i) {
        if ((c >> i) & 1u) cost -= g.weights[static_cast<std::size_t>(i)];
    }
    for (const auto& [i, j] : g.edges) {
        if (((c >> i) & 1u) && ((c >> j) & 1u)) cost += u;
    }
    return cost;
}

bool is_independent(const WeightedGraph& g, Config c) {
    check_config_size(g, c);
    for (const auto& [i, j] : g.edges) {
        if (((c >> i) & 1u) && ((c >> j) & 1u)) return false;
    }
    return true;
}

MwisResult brute_force_mwis(const WeightedGraph& g, int max_vertices) {
    if (g.n_vertices > max_vertices) {
        throw CapacityError("brute force limited to " + std::to_string(max_vertices) +
                            " vertices, got " + std::to_string(g.n_vertices));
    }
    // Precompute per-edge masks once; the scan below is the hot loop.
    std::vector<Config> edge_masks;
    edge_masks.reserve(g.edges.size());
    for (const auto& [i, j] : g.edges) {
        edge_masks.push_back((Config{1} << i) | (Config{1} << j));
    }
    double best = 0.0;  // the empty set is always independent with weight 0
    std::vector<Config> optima;
    const std::uint64_t total = std::uint64_t{1} << g.n_vertices;
    for (std::uint64_t m = 0; m < total; ++m) {
        const Config c = static_cast<Config>(m);
        bool ok = true;
        for (const Config em : edge_masks) {
            if ((c & em) == em) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        double wsum = 0.0;
        for (int i = 0; i < g.n_vertices; ++i) {
            if ((c >> i) & 1u) wsum += g.weights[static_cast<std::size_t>(i)];
        }
        if (wsum > best + kTieTolerance) {
            best = wsum;
            optima.assign(1, c);
        } else if (std::abs(wsum - best) <= kTieTolerance) {
            optima.push_back(c);
        }
    }
    std::sort(optima.begin(), optima.end(),
              [&](Config a, Config b) { return lex_less(a, b, g.n_vertices); });
    return MwisResult{-best, std::move(optima)};
}

double expectation_cost(const std::map<Config, std::uint64_t>& counts, const WeightedGraph& g,
                        double u) {
    std::uint64_t total = 0;
    double sum = 0.0;
    for (const auto& [c, n] : counts) {
        total += n;
        sum += static_cast<double>(n) * mwis_cost(g, c, u);
    }
    if (total == 0) throw InstanceError("expectation_cost requires a non-empty counts map");
    return sum / static_cast<double>(total);
}

}  // namespace ryd
