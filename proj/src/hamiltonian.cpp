#include "rydanneal/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "rydanneal/errors.hpp"

namespace ryd {

RydbergSystem::RydbergSystem(AtomLayout layout_in, double c6_magnitude_in, bool include_tails_in)
    : layout(std::move(layout_in)), c6_magnitude(c6_magnitude_in),
      include_tails(include_tails_in) {
    if (!(c6_magnitude > 0.0)) throw ParameterError("c6_magnitude must be > 0");
    n_ = layout.n_sites();
    v_matrix_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    const double r_edge = layout.r_edge();
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            const double r = layout.distance(i, j);
            double v = c6_magnitude / std::pow(r, 6.0);
            if (!include_tails && r > r_edge) v = 0.0;
            v_matrix_[static_cast<std::size_t>(i) * n_ + j] = v;
            v_matrix_[static_cast<std::size_t>(j) * n_ + i] = v;
        }
    }
}

double blockade_radius(double c6_magnitude, double omega) {
    if (!(c6_magnitude > 0.0) || !(omega > 0.0)) {
        throw ParameterError("blockade_radius requires positive |C6| and Omega");
    }
    return std::pow(c6_magnitude / omega, 1.0 / 6.0);
}

std::vector<double> local_detunings(const DriveSample& d, std::span<const double> site_weights) {
    std::vector<double> det(site_weights.size());
    for (std::size_t i = 0; i < site_weights.size(); ++i) {
        det[i] = d.delta_global + site_weights[i] * d.delta_ac_unit;
    }
    return det;
}

DenseOperator build_hamiltonian(const RydbergSystem& sys, const DriveSample& d, int max_sites) {
    const int n = sys.n_sites();
    if (n > max_sites) {
        throw CapacityError("dense Hamiltonian limited to " + std::to_string(max_sites) +
                            " sites, got " + std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    DenseOperator h;
    h.n_sites = n;
    h.elements.assign(dim * dim, {0.0, 0.0});

    const std::vector<double> det = local_detunings(d, sys.layout.site_weights);
    for (std::size_t m = 0; m < dim; ++m) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            if ((m >> i) & 1u) {
                e -= det[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < n; ++j) {
                    if ((m >> j) & 1u) e += sys.v(i, j);
                }
            }
        }
        h.elements[m * dim + m] = e;
        for (int i = 0; i < n; ++i) {
            const std::size_t flipped = m ^ (std::size_t{1} << i);
            h.elements[m * dim + flipped] += d.omega / 2.0;
        }
    }
    return h;
}

BlockadeCapCheck check_blockade_cap(const RydbergSystem& sys, double max_delta_ac_unit) {
    const auto edges = sys.layout.blockade_edges();
    if (edges.empty()) {
        return {true, std::numeric_limits<double>::infinity()};
    }
    double min_v = std::numeric_limits<double>::infinity();
    for (const auto& [i, j] : edges) min_v = std::min(min_v, sys.v(i, j));
    double max_w = 0.0;
    for (double w : sys.layout.site_weights) max_w = std::max(max_w, w);
    const double margin = min_v - max_w * max_delta_ac_unit;
    return {margin > 0.0, margin};
}

std::vector<double> interaction_diagonal(const RydbergSystem& sys, int max_sites) {
    const int n = sys.n_sites();
    if (n > max_sites) {
        throw CapacityError("diagonal limited to " + std::to_string(max_sites) + " sites");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> diag(dim, 0.0);
    // Build incrementally: energy(m) = energy(m without top bit) + interactions
    // of the top bit with the remaining set bits.
    for (std::size_t m = 1; m < dim; ++m) {
        const int top = std::bit_width(m) - 1;
        const std::size_t rest = m ^ (std::size_t{1} << top);
        double e = diag[rest];
        for (int j = 0; j < top; ++j) {
            if ((rest >> j) & 1u) e += sys.v(top, j);
        }
        diag[m] = e;
    }
    return diag;
}

}  // namespace ryd
