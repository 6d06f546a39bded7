#include "rydanneal/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rydanneal/errors.hpp"
#include "rydanneal/rng.hpp"

namespace ryd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Yoshida triple-jump coefficients composing three second-order (Strang)
// substeps into a fourth-order one.
const double kYoshidaW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kYoshidaW0 = 1.0 - 2.0 * kYoshidaW1;

// Fourth-order commutator-free Magnus coefficients (two Gauss nodes).
const double kGaussShift = std::sqrt(3.0) / 6.0;       // nodes at 1/2 -+ shift
const double kCfHeavy = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
const double kCfLight = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;

struct Workspace {
    int n = 0;
    std::size_t dim = 0;
    std::vector<double> interaction;    // sum_{j>i} V_ij n_i n_j per basis state
    std::vector<double> diag;           // scratch diagonal
    std::vector<std::complex<double>> k1, k2, k3, k4, tmp;
};

// diag[m] = 0.5 * interaction[m] - sum_i det_eff_i n_i(m); the 0.5 appears
// because each commutator-free factor carries half the step.
void effective_diagonal(Workspace& ws, std::span<const double> det_eff, double inter_scale) {
    for (std::size_t m = 0; m < ws.dim; ++m) ws.diag[m] = inter_scale * ws.interaction[m];
    for (int i = 0; i < ws.n; ++i) {
        const double di = det_eff[static_cast<std::size_t>(i)];
        if (di == 0.0) continue;
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < ws.dim; base += 2 * bit) {
            for (std::size_t m = base + bit; m < base + 2 * bit; ++m) ws.diag[m] -= di;
        }
    }
}

void apply_phase(std::vector<std::complex<double>>& psi, const std::vector<double>& diag,
                 double angle_scale) {
    for (std::size_t m = 0; m < psi.size(); ++m) {
        const double phi = angle_scale * diag[m];
        psi[m] *= std::complex<double>(std::cos(phi), std::sin(phi));
    }
}

// exp(-i phi sigma_x) on every site; the single-site rotations commute.
void apply_x_rotation(std::vector<std::complex<double>>& psi, int n, double phi) {
    if (phi == 0.0) return;
    const double c = std::cos(phi);
    const std::complex<double> ms(0.0, -std::sin(phi));
    const std::size_t dim = psi.size();
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < dim; base += 2 * bit) {
            for (std::size_t m = base; m < base + bit; ++m) {
                const std::complex<double> lo = psi[m];
                const std::complex<double> hi = psi[m + bit];
                psi[m] = c * lo + ms * hi;
                psi[m + bit] = c * hi + ms * lo;
            }
        }
    }
}

// One commutator-free factor exp(-i 2 pi h (D_eff + (omega_eff/2) sum sigma_x))
// applied as a Yoshida composition of Strang splittings. Exactly unitary.
void apply_cf_factor(Workspace& ws, std::vector<std::complex<double>>& psi, double omega_eff,
                     double h) {
    const double sub[3] = {kYoshidaW1 * h, kYoshidaW0 * h, kYoshidaW1 * h};
    for (double g : sub) {
        apply_phase(psi, ws.diag, -kTwoPi * g / 2.0);
        apply_x_rotation(psi, ws.n, std::numbers::pi * omega_eff * g);
        apply_phase(psi, ws.diag, -kTwoPi * g / 2.0);
    }
}

void split4_step(Workspace& ws, const RydbergSystem& sys, const DriveFn& drive,
                 std::vector<std::complex<double>>& psi, double t, double h) {
    const DriveSample d1 = drive(t + (0.5 - kGaussShift) * h);
    const DriveSample d2 = drive(t + (0.5 + kGaussShift) * h);
    const auto det1 = local_detunings(d1, sys.layout.site_weights);
    const auto det2 = local_detunings(d2, sys.layout.site_weights);
    std::vector<double> det_eff(det1.size());

    // First factor is weighted toward the earlier Gauss node.
    for (std::size_t i = 0; i < det_eff.size(); ++i) {
        det_eff[i] = kCfHeavy * det1[i] + kCfLight * det2[i];
    }
    effective_diagonal(ws, det_eff, 0.5);
    apply_cf_factor(ws, psi, kCfHeavy * d1.omega + kCfLight * d2.omega, h);

    for (std::size_t i = 0; i < det_eff.size(); ++i) {
        det_eff[i] = kCfLight * det1[i] + kCfHeavy * det2[i];
    }
    effective_diagonal(ws, det_eff, 0.5);
    apply_cf_factor(ws, psi, kCfLight * d1.omega + kCfHeavy * d2.omega, h);
}

// y = -i 2 pi H(sample) x
void apply_rhs(Workspace& ws, const std::vector<double>& diag, double omega,
               const std::vector<std::complex<double>>& x, std::vector<std::complex<double>>& y) {
    const std::size_t dim = x.size();
    for (std::size_t m = 0; m < dim; ++m) y[m] = diag[m] * x[m];
    const double half_omega = omega / 2.0;
    if (half_omega != 0.0) {
        for (int i = 0; i < ws.n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            for (std::size_t base = 0; base < dim; base += 2 * bit) {
                for (std::size_t m = base; m < base + bit; ++m) {
                    const std::complex<double> lo = x[m];
                    y[m] += half_omega * x[m + bit];
                    y[m + bit] += half_omega * lo;
                }
            }
        }
    }
    const std::complex<double> scale(0.0, -kTwoPi);
    for (std::size_t m = 0; m < dim; ++m) y[m] *= scale;
}

void rk4_step(Workspace& ws, const RydbergSystem& sys, const DriveFn& drive,
              std::vector<std::complex<double>>& psi, double t, double h) {
    struct Stage {
        std::vector<double> diag;
        double omega;
    };
    auto make_stage = [&](double ts) {
        const DriveSample d = drive(ts);
        const auto det = local_detunings(d, sys.layout.site_weights);
        effective_diagonal(ws, det, 1.0);
        return Stage{ws.diag, d.omega};
    };
    const Stage s0 = make_stage(t);
    const Stage s1 = make_stage(t + h / 2.0);
    const Stage s2 = make_stage(t + h);

    const std::size_t dim = psi.size();
    apply_rhs(ws, s0.diag, s0.omega, psi, ws.k1);
    for (std::size_t m = 0; m < dim; ++m) ws.tmp[m] = psi[m] + 0.5 * h * ws.k1[m];
    apply_rhs(ws, s1.diag, s1.omega, ws.tmp, ws.k2);
    for (std::size_t m = 0; m < dim; ++m) ws.tmp[m] = psi[m] + 0.5 * h * ws.k2[m];
    apply_rhs(ws, s1.diag, s1.omega, ws.tmp, ws.k3);
    for (std::size_t m = 0; m < dim; ++m) ws.tmp[m] = psi[m] + h * ws.k3[m];
    apply_rhs(ws, s2.diag, s2.omega, ws.tmp, ws.k4);
    for (std::size_t m = 0; m < dim; ++m) {
        psi[m] += h / 6.0 * (ws.k1[m] + 2.0 * ws.k2[m] + 2.0 * ws.k3[m] + ws.k4[m]);
    }
}

}  // namespace

StateVector StateVector::ground(int n_sites) {
    StateVector psi;
    psi.n_sites = n_sites;
    psi.amplitudes.assign(std::size_t{1} << n_sites, {0.0, 0.0});
    psi.amplitudes[0] = 1.0;
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

EvolveResult evolve(const RydbergSystem& sys, const Schedule& sch, const EvolutionConfig& cfg,
                    const StateVector* initial) {
    return evolve_drive(sys, [&sch](double t) { return sch.sample(t); }, sch.total_duration(),
                        cfg, initial);
}

EvolveResult evolve_drive(const RydbergSystem& sys, const DriveFn& drive, double duration,
                          const EvolutionConfig& cfg, const StateVector* initial) {
    const int n = sys.n_sites();
    const double total = duration;
    if (!(cfg.dt_us > 0.0)) throw ParameterError("dt must be > 0");
    if (cfg.dt_us > total / 100.0) {
        throw ParameterError("dt must be at most total_duration / 100");
    }

    Workspace ws;
    ws.n = n;
    ws.dim = std::size_t{1} << n;
    ws.interaction = interaction_diagonal(sys);
    ws.diag.resize(ws.dim);

    EvolveResult result;
    if (initial != nullptr) {
        if (initial->dim() != ws.dim) throw InstanceError("initial state dimension mismatch");
        if (std::abs(initial->norm() - 1.0) > 1e-6) {
            throw InstanceError("initial state must be normalized");
        }
        result.state = *initial;
    } else {
        result.state = StateVector::ground(n);
    }
    auto& psi = result.state.amplitudes;

    if (cfg.method == IntegratorMethod::Rk4) {
        ws.k1.resize(ws.dim);
        ws.k2.resize(ws.dim);
        ws.k3.resize(ws.dim);
        ws.k4.resize(ws.dim);
        ws.tmp.resize(ws.dim);
    }

    std::vector<double> snaps = cfg.snapshot_times_us;
    std::sort(snaps.begin(), snaps.end());
    if (!snaps.empty() && (snaps.front() < 0.0 || snaps.back() > total + 1e-12)) {
        throw ParameterError("snapshot times must lie within [0, total_duration]");
    }
    std::size_t next_snap = 0;
    auto take_snapshots = [&](double now) {
        while (next_snap < snaps.size() && snaps[next_snap] <= now + 1e-12) {
            result.snapshots.emplace_back(now, result.state);
            ++next_snap;
        }
    };
    take_snapshots(0.0);

    const std::uint64_t n_steps =
        static_cast<std::uint64_t>(std::ceil(total / cfg.dt_us - 1e-9));
    double t = 0.0;
    for (std::uint64_t k = 0; k < n_steps; ++k) {
        const double h = std::min(cfg.dt_us, total - t);
        if (cfg.method == IntegratorMethod::Split4) {
            split4_step(ws, sys, drive, psi, t, h);
        } else {
            rk4_step(ws, sys, drive, psi, t, h);
        }
        t = (k + 1 == n_steps) ? total : std::min(total, (k + 1) * cfg.dt_us);
        take_snapshots(t);
    }

    result.norm_drift = std::abs(result.state.norm() - 1.0);
    if (!(result.norm_drift < cfg.norm_tolerance)) {
        throw DiagnosticError("norm drift " + std::to_string(result.norm_drift) +
                              " exceeds tolerance; reduce dt or switch integrators");
    }
    return result;
}

std::vector<double> probabilities(const StateVector& psi) {
    std::vector<double> p(psi.amplitudes.size());
    for (std::size_t m = 0; m < p.size(); ++m) p[m] = std::norm(psi.amplitudes[m]);
    return p;
}

std::map<Config, std::uint64_t> sample_counts(std::span<const double> dist, std::uint64_t shots,
                                              std::uint64_t seed) {
    if (shots == 0) throw InstanceError("sample requires shots > 0");
    double sum = 0.0;
    for (double p : dist) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InstanceError("distribution must sum to 1 within 1e-9");
    }
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < dist.size(); ++m) {
        acc += dist[m];
        cdf[m] = acc;
    }
    cdf.back() = 1.0;

    Rng rng(seed);
    std::map<Config, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<Config>(std::distance(cdf.begin(), it));
        counts[std::min<Config>(idx, static_cast<Config>(dist.size() - 1))] += 1;
    }
    return counts;
}

std::map<Config, std::uint64_t> apply_readout_noise(const std::map<Config, std::uint64_t>& counts,
                                                    std::span<const double> eps_per_site,
                                                    int n_sites, std::uint64_t seed) {
    if (static_cast<int>(eps_per_site.size()) != n_sites) {
        throw InstanceError("eps_per_site length must equal n_sites");
    }
    for (double e : eps_per_site) {
        if (e < 0.0 || e >= 1.0) throw ParameterError("loss probability must lie in [0, 1)");
    }
    bool all_zero = true;
    for (double e : eps_per_site) all_zero = all_zero && e == 0.0;
    if (all_zero) return counts;

    Rng rng(seed);
    std::map<Config, std::uint64_t> out;
    for (const auto& [c, n] : counts) {
        for (std::uint64_t s = 0; s < n; ++s) {
            Config corrupted = c;
            for (int i = 0; i < n_sites; ++i) {
                if (((c >> i) & 1u) == 0 && rng.uniform() < eps_per_site[static_cast<std::size_t>(i)]) {
                    corrupted |= Config{1} << i;
                }
            }
            out[corrupted] += 1;
        }
    }
    return out;
}

}  // namespace ryd
