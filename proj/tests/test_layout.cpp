#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "rydanneal/errors.hpp"
#include "rydanneal/layout.hpp"
#include "rydanneal/rng.hpp"

using namespace ryd;

namespace {

AtomLayout grid3x3(double a, double r_edge_factor) {
    std::vector<std::array<double, 2>> pos;
    for (int i = 0; i < 9; ++i) pos.push_back({a * (i % 3), a * (i / 3)});
    return AtomLayout::make(std::move(pos), std::vector<double>(9, 1.0), a, r_edge_factor);
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("collinear chain gives a path graph") {
    const auto layout = AtomLayout::chain(9, 7.0, std::vector<double>(9, 1.0));
    const auto g = udg_from_layout(layout);
    CHECK(g.n_vertices == 9);
    REQUIRE(g.edges.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(g.edges[i] == std::make_pair(i, i + 1));
    }
}

TEST_CASE("distant pair has no edge") {
    const auto layout = AtomLayout::make({{0, 0}, {21, 0}}, {1, 1}, 7.0);
    CHECK(udg_from_layout(layout).edges.empty());
}

TEST_CASE("3x3 grid at r_edge = 1.5a includes diagonals") {
    // a*sqrt(2) = 11.31 um < 12 um, so king-graph connectivity with 20 edges.
    const auto g = udg_from_layout(grid3x3(8.0, 1.5));
    CHECK(g.edges.size() == 20);
    CHECK(g.has_edge(0, 4));       // diagonal
    CHECK_FALSE(g.has_edge(0, 2)); // two apart
}

TEST_CASE("3x3 grid at r_edge = 1.3a excludes diagonals") {
    const auto g = udg_from_layout(grid3x3(8.0, 1.3));
    CHECK(g.edges.size() == 12);
    CHECK_FALSE(g.has_edge(0, 4));
}

TEST_CASE("degenerate positions are rejected") {
    CHECK_THROWS_AS(AtomLayout::make({{0, 0}, {0.05, 0}}, {1, 1}, 7.0), InstanceError);
    CHECK_THROWS_AS(AtomLayout::make({{0, 0}}, {0.0}, 7.0), InstanceError);
}

TEST_CASE("edge set is invariant under rigid motions") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform() * 6);
        std::vector<std::array<double, 2>> pos;
        std::vector<double> w;
        for (int i = 0; i < n; ++i) {
            pos.push_back({20.0 * rng.uniform(), 20.0 * rng.uniform()});
            w.push_back(0.5 + rng.uniform());
        }
        AtomLayout base;
        try {
            base = AtomLayout::make(pos, w, 6.0);
        } catch (const InstanceError&) {
            continue;  // rare near-coincident draw
        }
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const double dx = 40.0 * rng.uniform() - 20.0;
        const double dy = 40.0 * rng.uniform() - 20.0;
        std::vector<std::array<double, 2>> moved;
        for (const auto& p : pos) {
            moved.push_back({p[0] * std::cos(theta) - p[1] * std::sin(theta) + dx,
                             p[0] * std::sin(theta) + p[1] * std::cos(theta) + dy});
        }
        const auto g1 = udg_from_layout(base);
        const auto g2 = udg_from_layout(AtomLayout::make(moved, w, 6.0));
        CHECK(g1.edges == g2.edges);
        // recomputation is idempotent
        CHECK(udg_from_layout(base).edges == g1.edges);
    }
}

}  // TEST_SUITE
