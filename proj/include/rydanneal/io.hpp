#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rydanneal/embedding.hpp"
#include "rydanneal/graph.hpp"
#include "rydanneal/layout.hpp"

namespace ryd {

using json = nlohmann::json;

// Graph interchange format: n_vertices, weights, edges (0-indexed pairs).
json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

// Embedding format: the logical graph's fields plus positions (um),
// logical_of_site (vertex id or null), unit_distance, r_edge_factor and the
// physical site_weights.
json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t value);

// Shortest round-trip formatting, used for CSV output.
std::string format_double(double value);

}  // namespace ryd
