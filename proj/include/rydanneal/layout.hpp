#pragma once

#include <array>
#include <utility>
#include <vector>

#include "rydanneal/graph.hpp"

namespace ryd {

// 2D atom arrangement with per-site weights. Geometry is in micrometers.
// Two sites share a blockade edge when their separation is at most
// r_edge = r_edge_factor * unit_distance.
struct AtomLayout {
    std::vector<std::array<double, 2>> positions;
    std::vector<double> site_weights;
    double unit_distance = 0.0;
    double r_edge_factor = 1.5;

    static AtomLayout make(std::vector<std::array<double, 2>> positions,
                           std::vector<double> site_weights, double unit_distance,
                           double r_edge_factor = 1.5);

    int n_sites() const { return static_cast<int>(positions.size()); }
    double r_edge() const { return r_edge_factor * unit_distance; }
    double distance(int i, int j) const;
    std::vector<std::pair<int, int>> blockade_edges() const;

    // Evenly spaced chain along x.
    static AtomLayout chain(int n, double spacing, std::vector<double> site_weights,
                            double r_edge_factor = 1.5);
};

// Unit-disk graph: layout weights with edges = blockade edges.
WeightedGraph udg_from_layout(const AtomLayout& layout);

}  // namespace ryd
