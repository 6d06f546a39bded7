#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ryd {

// Basis configurations are bitmasks: bit i is vertex/site i, so site 0 is the
// least significant bit. String form puts site 0 leftmost ("10100" = {0, 2}).
using Config = std::uint32_t;

std::string config_to_string(Config c, int n);
Config config_from_string(const std::string& s);

// Vertex-weighted undirected graph. Edges are stored normalized (i < j),
// sorted and deduplicated.
struct WeightedGraph {
    int n_vertices = 0;
    std::vector<double> weights;
    std::vector<std::pair<int, int>> edges;

    // Validates invariants: positive weights, no self-loops, endpoints in range.
    static WeightedGraph make(int n_vertices, std::vector<double> weights,
                              std::vector<std::pair<int, int>> edges);

    double max_weight() const;
    // 2 * max weight; any u > max weight is a valid penalty, this is the default.
    double default_penalty() const { return 2.0 * max_weight(); }
    bool has_edge(int i, int j) const;
};

struct MwisResult {
    double optimal_cost = 0.0;
    std::vector<Config> optima;  // lexicographic by bitstring (site 0 first)
};

// Classical cost: -sum_i w_i n_i + sum_{(i,j) in E} u n_i n_j.
double mwis_cost(const WeightedGraph& g, Config c, double u);

bool is_independent(const WeightedGraph& g, Config c);

// Exact enumeration over all 2^N configurations restricted to independent
// sets; ties within 1e-9 are grouped. N is bounded (default 24).
MwisResult brute_force_mwis(const WeightedGraph& g, int max_vertices = 24);

// Count-weighted mean of mwis_cost over observed configurations.
double expectation_cost(const std::map<Config, std::uint64_t>& counts,
                        const WeightedGraph& g, double u);

}  // namespace ryd
