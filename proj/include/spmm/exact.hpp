#pragma once

#include "spmm/errors.hpp"

namespace spmm::exact {

struct PointXU {
    double x, u;
};

/// Two-soliton breather parameters.  xi < 1 selects the smooth/steep pulse,
/// xi > 1 the loop/anti-loop pair; zeta = sqrt(|1 - xi^2|).
struct BreatherParams {
    enum class Mode { pulse, loop_antiloop };

    double xi;
    Mode mode;

    /// Shape threshold: the pulse is single-valued for xi < xi_critical.
    static constexpr double xi_critical = 0.38268343236508977;  // sin(pi/8)

    explicit BreatherParams(double xi_)
        : xi(xi_), mode(xi_ < 1.0 ? Mode::pulse : Mode::loop_antiloop) {
        if (!(xi > 0.0) || xi == 1.0)
            throw Error("BreatherParams: xi must be positive and != 1");
    }

    double zeta() const;
};

/// Pulse solution (0 < xi < 1) in arc-length parametrization.
PointXU breather_pulse(const BreatherParams& p, double tau, double s);

/// Loop/anti-loop pair (xi > 1).
PointXU loop_antiloop(const BreatherParams& p, double tau, double s);

/// Dispatch on p.mode.
PointXU breather(const BreatherParams& p, double tau, double s);

enum class WaveFamily { hump, upright_loop, alternating };

/// Periodic traveling-wave parameters.  alpha is derived per family:
///   hump:          xi in (0, 1/2),  alpha = sqrt((1 - 2 xi)/v)
///   upright_loop:  xi in (0, 1),    alpha = sqrt((2 - xi)/(xi^2 v))
///   alternating:   xi in (1/2, 1),  alpha = sqrt((2 xi - 1)/v)
struct TravelingWaveParams {
    WaveFamily family;
    double v;
    double x0;
    double xi;
    int sign;  // +1 or -1; sign of the u amplitude

    TravelingWaveParams(WaveFamily f, double v_, double x0_, double xi_, int sign_ = +1);

    double alpha() const;

    /// Period of the wave in the arc-length coordinate s:
    /// 4K(xi)/alpha for hump/alternating, 2K(xi)/alpha for the upright loop.
    double period_s() const;

    /// x-advance over one s-period at fixed tau (may be negative for loops).
    double window_per_period() const;
};

PointXU periodic_hump(const TravelingWaveParams& p, double tau, double s);

/// Tangent angle of the hump solution, continuous in s with theta(tau,0) in
/// (-pi, pi].  Exact: the hump is single-valued, so no branch lifting is
/// required beyond atan2.
double periodic_hump_theta(const TravelingWaveParams& p, double tau, double s);

PointXU periodic_loop(const TravelingWaveParams& p, double tau, double s);

PointXU periodic_alternating(const TravelingWaveParams& p, double tau, double s);

/// Dispatch on p.family.
PointXU traveling_wave(const TravelingWaveParams& p, double tau, double s);

}  // namespace spmm::exact
