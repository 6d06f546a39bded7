#include <doctest.h>

#include <set>

#include "rydanneal/embedding.hpp"
#include "rydanneal/errors.hpp"
#include "rydanneal/rng.hpp"

using namespace ryd;

TEST_SUITE("embedding") {

TEST_CASE("ancilla weighting rule") {
    auto [wa, wb] = ancilla_weights({2, 1, 2, 1, 1});
    CHECK(wa == doctest::Approx(2.0));
    CHECK(wb == doctest::Approx(1.5));

    // The supplement's caption quotes w_alpha = 2 for this instance; the
    // main-text rule gives (1+1)/2 = 1, and validation below confirms the
    // rule preserves the optimum.
    std::tie(wa, wb) = ancilla_weights({1, 2, 1, 2, 2});
    CHECK(wa == doctest::Approx(1.0));
    CHECK(wb == doctest::Approx(3.0));

    std::tie(wa, wb) = ancilla_weights({1, 1, 1, 1, 1});
    CHECK(wa == doctest::Approx(1.0));
    CHECK(wb == doctest::Approx(1.5));

    CHECK_THROWS_AS(ancilla_weights({1, 1, -1, 1, 1}), ParameterError);
}

TEST_CASE("logical 5-vertex graph is the complete bipartite {1,3} x {2,4,5}") {
    const auto g = logical_graph_5v({1, 1, 1, 1, 1});
    CHECK(g.edges.size() == 6);
    for (int a : {0, 2}) {
        for (int b : {1, 3, 4}) CHECK(g.has_edge(a, b));
    }
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(1, 3));
}

TEST_CASE("gadget reproduces the published instances") {
    const Embedding e1 = paper_fixture_2d({2, 1, 2, 1, 1});
    const auto phys = brute_force_mwis(udg_from_layout(e1.layout));
    CHECK(phys.optimal_cost == doctest::Approx(-8.0));
    REQUIRE(phys.optima.size() == 1);
    CHECK(config_to_string(decode(e1, phys.optima[0]), 5) == "10100");

    const Embedding e2 = paper_fixture_2d({1, 2, 1, 2, 2});
    const auto phys2 = brute_force_mwis(udg_from_layout(e2.layout));
    REQUIRE(!phys2.optima.empty());
    CHECK(config_to_string(decode(e2, phys2.optima[0]), 5) == "01011");

    const Embedding e3 = paper_fixture_2d({7.0 / 4, 5.0 / 4, 9.0 / 4, 3.0 / 2, 1.0});
    CHECK(validate_embedding(e3).ok);
}

TEST_CASE("gadget geometry") {
    const Embedding e = paper_fixture_2d({2, 1, 2, 1, 1});
    CHECK(e.n_sites() == 9);
    CHECK(e.layout.unit_distance == doctest::Approx(8.0));
    // Two ancillas at w_alpha, two at w_beta.
    int alphas = 0, betas = 0;
    for (int s = 0; s < 9; ++s) {
        if (e.logical_of_site[s] >= 0) continue;
        const double w = e.layout.site_weights[s];
        if (w == doctest::Approx(2.0)) ++alphas;
        if (w == doctest::Approx(1.5)) ++betas;
    }
    CHECK(alphas == 2);
    CHECK(betas == 2);
    // Diagonals are beyond the gadget edge radius.
    CHECK(udg_from_layout(e.layout).edges.size() == 12);
}

TEST_CASE("decode projects onto logical sites") {
    const Embedding e = paper_fixture_2d({2, 1, 2, 1, 1});
    CHECK(decode(e, 0) == 0);
    for (Config c : {Config{0b101010101}, Config{0b111}, Config{0b100000000}}) {
        CHECK(config_to_string(decode(e, c), 5).size() == 5);
    }
    CHECK_THROWS_AS(decode(e, Config{1} << 9), InstanceError);
}

TEST_CASE("zeroed ancilla weights break the wire") {
    // With near-zero ancilla weights the optimum can take v2 and v3 together,
    // which is logically forbidden.
    Embedding e = paper_fixture_2d({1, 3, 1, 0.2, 0.2});
    auto weights = e.layout.site_weights;
    for (int s = 0; s < e.n_sites(); ++s) {
        if (e.logical_of_site[s] < 0) weights[s] = 1e-3;
    }
    e.layout = AtomLayout::make(e.layout.positions, weights, e.layout.unit_distance,
                                e.layout.r_edge_factor);
    const auto report = validate_embedding(e);
    CHECK_FALSE(report.ok);
}

TEST_CASE("random weightings validate") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 5> w{};
        for (double& x : w) x = 0.5 + 2.0 * rng.uniform();
        const Embedding e = paper_fixture_2d(w);  // throws on validation failure
        const auto report = validate_embedding(e);
        CHECK(report.ok);
    }
}

TEST_CASE("embedded optima decode into the logical optima set") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        std::array<double, 5> w{};
        for (double& x : w) x = 0.5 + 2.0 * rng.uniform();
        const Embedding e = paper_fixture_2d(w);
        const auto phys = brute_force_mwis(udg_from_layout(e.layout));
        const auto logical = brute_force_mwis(e.logical_graph);
        const std::set<Config> logical_set(logical.optima.begin(), logical.optima.end());
        for (Config c : phys.optima) {
            CHECK(logical_set.count(decode(e, c)) == 1);
        }
    }
}

}  // TEST_SUITE
