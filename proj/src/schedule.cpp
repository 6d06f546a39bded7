#include "rydanneal/schedule.hpp"

#include <cmath>
#include <string>

#include "rydanneal/errors.hpp"

namespace ryd {

void RampParams::validate() const {
    if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("shape s must lie in [0, 1]");
    if (!(tau_us > 0.0)) throw ParameterError("tau must be > 0");
    if (!(delta_min_mhz < 0.0)) throw ParameterError("delta_min must be < 0");
    if (!(delta_max_mhz > 0.0)) throw ParameterError("delta_max must be > 0");
    if (!(omega_max_mhz > 0.0)) throw ParameterError("omega_max must be > 0");
    if (t_rise_us < 0.0 || t_fall_us < 0.0) throw ParameterError("envelope times must be >= 0");
}

double cubic_delta(const RampParams& p, double t) {
    if (t < 0.0 || t > p.tau_us) {
        throw DomainError("cubic_delta sampled outside [0, tau]");
    }
    const double c = (p.delta_max_mhz - p.delta_min_mhz) / 2.0;
    const double a = 8.0 * p.s * c / (p.tau_us * p.tau_us * p.tau_us);
    const double b = 2.0 * c / p.tau_us - a * p.tau_us * p.tau_us / 4.0;
    const double tc = t - p.tau_us / 2.0;
    return p.delta_min_mhz + a * tc * tc * tc + b * tc + c;
}

Schedule::Schedule(RampParams params) : params_(params) { params_.validate(); }

double Schedule::total_duration() const {
    return params_.t_rise_us + params_.tau_us + params_.t_fall_us;
}

DriveSample Schedule::sample(double t) const {
    if (t < 0.0 || t > total_duration()) {
        throw DomainError("schedule sampled outside [0, total_duration]");
    }
    const RampParams& p = params_;
    if (t < p.t_rise_us) {
        return {p.omega_max_mhz * (t / p.t_rise_us), p.delta_min_mhz, 0.0};
    }
    if (t <= p.t_rise_us + p.tau_us) {
        const double d = cubic_delta(p, t - p.t_rise_us);
        if (d < 0.0) return {p.omega_max_mhz, d, 0.0};
        return {p.omega_max_mhz, 0.0, d};
    }
    const double u = (p.t_fall_us > 0.0) ? (t - p.t_rise_us - p.tau_us) / p.t_fall_us : 1.0;
    return {p.omega_max_mhz * (1.0 - u), 0.0, p.delta_max_mhz};
}

double Schedule::zero_crossing() const {
    // delta is continuous and nondecreasing with delta(0) < 0 < delta(tau).
    double lo = 0.0, hi = params_.tau_us;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cubic_delta(params_, mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ryd
