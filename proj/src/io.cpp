#include "rydanneal/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rydanneal/errors.hpp"

namespace ryd {

json graph_to_json(const WeightedGraph& g) {
    json j;
    j["n_vertices"] = g.n_vertices;
    j["weights"] = g.weights;
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

WeightedGraph graph_from_json(const json& j) {
    for (const char* field : {"n_vertices", "weights", "edges"}) {
        if (!j.contains(field)) {
            throw InstanceError(std::string("graph is missing field '") + field + "'");
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw InstanceError("graph field 'edges' must hold [i, j] pairs");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return WeightedGraph::make(j.at("n_vertices").get<int>(),
                               j.at("weights").get<std::vector<double>>(), std::move(edges));
}

json embedding_to_json(const Embedding& e) {
    json j = graph_to_json(e.logical_graph);
    json positions = json::array();
    for (const auto& p : e.layout.positions) positions.push_back({p[0], p[1]});
    j["positions"] = positions;
    json logical = json::array();
    for (int v : e.logical_of_site) {
        if (v < 0) {
            logical.push_back(nullptr);
        } else {
            logical.push_back(v);
        }
    }
    j["logical_of_site"] = logical;
    j["unit_distance"] = e.layout.unit_distance;
    j["r_edge_factor"] = e.layout.r_edge_factor;
    j["site_weights"] = e.layout.site_weights;
    return j;
}

Embedding embedding_from_json(const json& j) {
    for (const char* field : {"positions", "logical_of_site", "unit_distance", "site_weights"}) {
        if (!j.contains(field)) {
            throw InstanceError(std::string("embedding is missing field '") + field + "'");
        }
    }
    Embedding e;
    e.logical_graph = graph_from_json(j);
    std::vector<std::array<double, 2>> positions;
    for (const auto& p : j.at("positions")) {
        positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    e.layout = AtomLayout::make(std::move(positions), j.at("site_weights").get<std::vector<double>>(),
                                j.at("unit_distance").get<double>(),
                                j.value("r_edge_factor", 1.5));
    for (const auto& v : j.at("logical_of_site")) {
        e.logical_of_site.push_back(v.is_null() ? -1 : v.get<int>());
    }
    if (static_cast<int>(e.logical_of_site.size()) != e.layout.n_sites()) {
        throw InstanceError("logical_of_site length must match positions");
    }
    // Consistency: every logical vertex appears exactly once and carries the
    // logical weight at its site.
    std::vector<int> seen(static_cast<std::size_t>(e.n_logical()), 0);
    for (int s = 0; s < e.n_sites(); ++s) {
        const int v = e.logical_of_site[static_cast<std::size_t>(s)];
        if (v < 0) continue;
        if (v >= e.n_logical()) throw InstanceError("logical_of_site vertex id out of range");
        seen[static_cast<std::size_t>(v)] += 1;
    }
    for (int v = 0; v < e.n_logical(); ++v) {
        if (seen[static_cast<std::size_t>(v)] != 1) {
            throw InstanceError("logical vertex " + std::to_string(v) +
                                " must map to exactly one site");
        }
    }
    return e;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InstanceError("cannot write file '" + path + "'");
    out << content;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace ryd
