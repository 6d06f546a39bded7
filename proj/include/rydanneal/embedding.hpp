#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rydanneal/graph.hpp"
#include "rydanneal/layout.hpp"

namespace ryd {

// Maps a logical weighted graph onto a physical atom layout. Each site is
// tagged with the logical vertex it carries, or -1 for an ancilla.
struct Embedding {
    AtomLayout layout;
    std::vector<int> logical_of_site;  // -1 = ancilla
    WeightedGraph logical_graph;

    int n_sites() const { return layout.n_sites(); }
    int n_logical() const { return logical_graph.n_vertices; }
    int site_of_vertex(int v) const;
};

// Ancilla weighting rule for the 9-qubit gadget:
// w_alpha = (w1 + w3) / 2, w_beta = (w2 + w4 + w5) / 2.
std::pair<double, double> ancilla_weights(const std::array<double, 5>& w);

// The 5-vertex non-UDG target: complete bipartite parts {1,3} and {2,4,5}
// (0-indexed {0,2} and {1,3,4}).
WeightedGraph logical_graph_5v(const std::array<double, 5>& w);

// 3x3 gadget at spacing 8 um embedding the 5-vertex graph with four ancillas
// (two at w_alpha, two at w_beta). Throws EmbeddingError (carrying the
// weighting) if the construction fails validation.
Embedding paper_fixture_2d(const std::array<double, 5>& w);

// Project a physical configuration onto logical vertices, discarding ancillas.
Config decode(const Embedding& e, Config physical);

struct ValidationReport {
    bool ok = false;
    std::string detail;
};

// True iff every embedded brute-force optimum decodes to a logical optimum
// and every logical optimum is reached by at least one embedded optimum.
ValidationReport validate_embedding(const Embedding& e, int max_vertices = 24);

}  // namespace ryd
