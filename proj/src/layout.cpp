#include "rydanneal/layout.hpp"

#include <cmath>
#include <string>

#include "rydanneal/errors.hpp"

namespace ryd {

namespace {
constexpr double kMinSeparation = 0.1;  // um
}

AtomLayout AtomLayout::make(std::vector<std::array<double, 2>> positions,
                            std::vector<double> site_weights, double unit_distance,
                            double r_edge_factor) {
    if (positions.size() != site_weights.size()) {
        throw InstanceError("positions and site_weights must have the same length");
    }
    if (!(unit_distance > 0.0)) throw ParameterError("unit_distance must be > 0");
    if (!(r_edge_factor > 0.0)) throw ParameterError("r_edge_factor must be > 0");
    for (double w : site_weights) {
        if (!(w > 0.0)) throw InstanceError("all site weights must be > 0");
    }
    AtomLayout layout;
    layout.positions = std::move(positions);
    layout.site_weights = std::move(site_weights);
    layout.unit_distance = unit_distance;
    layout.r_edge_factor = r_edge_factor;
    const int n = layout.n_sites();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (layout.distance(i, j) <= kMinSeparation) {
                throw InstanceError("degenerate positions: sites " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are closer than 0.1 um");
            }
        }
    }
    return layout;
}

double AtomLayout::distance(int i, int j) const {
    const auto& a = positions[static_cast<std::size_t>(i)];
    const auto& b = positions[static_cast<std::size_t>(j)];
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

std::vector<std::pair<int, int>> AtomLayout::blockade_edges() const {
    std::vector<std::pair<int, int>> edges;
    const double r = r_edge();
    for (int i = 0; i < n_sites(); ++i) {
        for (int j = i + 1; j < n_sites(); ++j) {
            if (distance(i, j) <= r) edges.emplace_back(i, j);
        }
    }
    return edges;
}

AtomLayout AtomLayout::chain(int n, double spacing, std::vector<double> site_weights,
                             double r_edge_factor) {
    std::vector<std::array<double, 2>> pos;
    pos.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos.push_back({spacing * i, 0.0});
    return make(std::move(pos), std::move(site_weights), spacing, r_edge_factor);
}

WeightedGraph udg_from_layout(const AtomLayout& layout) {
    return WeightedGraph::make(layout.n_sites(), layout.site_weights, layout.blockade_edges());
}

}  // namespace ryd
