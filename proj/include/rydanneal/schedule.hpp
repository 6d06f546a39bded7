#pragma once

#include "rydanneal/hamiltonian.hpp"

namespace ryd {

// Four-parameter cubic annealing profile plus the Omega envelope times.
struct RampParams {
    double s = 0.0;              // shape, in [0, 1]; 0 = linear
    double tau_us = 1.0;         // sweep duration, > 0
    double delta_min_mhz = -1.0; // < 0
    double delta_max_mhz = 1.0;  // > 0
    double omega_max_mhz = 1.0;  // > 0
    double t_rise_us = 0.1;      // >= 0
    double t_fall_us = 0.1;      // >= 0

    void validate() const;  // throws ParameterError
};

// delta(t) = delta_min + a t'^3 + b t' + c at centered time t' = t - tau/2,
// with c = (delta_max - delta_min)/2, a = 8 s c / tau^3, b = 2c/tau - a tau^2/4.
// Endpoints: delta(0) = delta_min, delta(tau) = delta_max. t in [0, tau].
double cubic_delta(const RampParams& p, double t);

// Dual-stage piecewise drive.
//   [0, t_rise):        Omega ramps 0 -> omega_max, Delta = delta_min, delta_AC = 0
//   [t_rise, t_rise+tau]: Delta = min(delta, 0), delta_AC = max(delta, 0)
//   (.., + t_fall]:     Omega ramps omega_max -> 0, Delta = 0, delta_AC = delta_max
class Schedule {
  public:
    explicit Schedule(RampParams params);

    const RampParams& params() const { return params_; }
    double total_duration() const;
    DriveSample sample(double t) const;  // throws DomainError outside [0, total]

    // Time within the sweep (relative to sweep start) where delta crosses zero.
    double zero_crossing() const;

  private:
    RampParams params_;
};

inline Schedule split_schedule(const RampParams& p) { return Schedule(p); }

}  // namespace ryd
