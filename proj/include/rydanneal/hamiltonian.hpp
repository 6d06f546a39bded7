#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rydanneal/layout.hpp"

namespace ryd {

// A single sample of the drive: all values are ordinary frequencies in MHz.
// The evolution module applies the 2*pi factor.
struct DriveSample {
    double omega = 0.0;           // two-photon Rabi frequency, >= 0
    double delta_global = 0.0;    // global laser detuning
    double delta_ac_unit = 0.0;   // unit light-shift scale (w = 1), >= 0
};

// Atom layout plus interaction strength |C6| (MHz um^6). The pairwise matrix
// V_ij = |C6| / |r_i - r_j|^6 is precomputed; when include_tails is false,
// pairs beyond the layout's r_edge are zeroed (ablation switch).
struct RydbergSystem {
    AtomLayout layout;
    double c6_magnitude = 0.0;
    bool include_tails = true;

    RydbergSystem(AtomLayout layout, double c6_magnitude, bool include_tails = true);

    int n_sites() const { return layout.n_sites(); }
    double v(int i, int j) const { return v_matrix_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& v_matrix() const { return v_matrix_; }

  private:
    int n_ = 0;
    std::vector<double> v_matrix_;
};

// (|C6| / Omega)^(1/6) in um.
double blockade_radius(double c6_magnitude, double omega);

// Delta_i = delta_global + w_i * delta_ac_unit.
std::vector<double> local_detunings(const DriveSample& d, std::span<const double> site_weights);

// Dense Hermitian operator, row-major, dimension 2^N. Basis: bit i of the
// index is n_i, site 0 least significant.
struct DenseOperator {
    int n_sites = 0;
    std::vector<std::complex<double>> elements;
    std::size_t dim() const { return std::size_t{1} << n_sites; }
    std::complex<double> at(std::size_t r, std::size_t c) const { return elements[r * dim() + c]; }
};

DenseOperator build_hamiltonian(const RydbergSystem& sys, const DriveSample& d,
                                int max_sites = 14);

struct BlockadeCapCheck {
    bool ok = false;
    double margin = 0.0;  // min-edge V minus max_i(w_i) * cap
};

// True iff max_i(w_i) * max_delta_ac_unit < min over blockade edges of V_ij.
BlockadeCapCheck check_blockade_cap(const RydbergSystem& sys, double max_delta_ac_unit);

// Interaction energy sum_{j>i} V_ij n_i n_j for every basis state; the
// time-independent part of the diagonal, shared across drive samples.
std::vector<double> interaction_diagonal(const RydbergSystem& sys, int max_sites = 24);

}  // namespace ryd
