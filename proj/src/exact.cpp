#include "spmm/exact.hpp"

#include <cmath>
#include <limits>

#include "spmm/elliptic.hpp"

namespace spmm::exact {
namespace {

// sech with a hard underflow guard; cosh overflows past |t| ~ 710.
double sech(double t) {
    if (std::abs(t) > 700.0) return 0.0;
    return 1.0 / std::cosh(t);
}

}  // namespace

double BreatherParams::zeta() const { return std::sqrt(std::abs(1.0 - xi * xi)); }

PointXU breather_pulse(const BreatherParams& p, double tau, double s) {
    if (p.mode != BreatherParams::Mode::pulse)
        throw Error("breather_pulse: parameters are in loop/anti-loop mode");
    const double xi = p.xi;
    const double z = p.zeta();
    const double phi = xi * (s + tau);
    const double psi = z * (s - tau);
    // Scaled by cosh^2(phi) so that large |phi| stays finite.
    const double sech_phi = sech(phi);
    const double tanh_phi = std::tanh(phi);
    const double den = xi * xi * std::sin(psi) * std::sin(psi) * sech_phi * sech_phi + z * z;
    const double u =
        4.0 * xi * z * (xi * std::sin(psi) * tanh_phi * sech_phi + z * std::cos(psi) * sech_phi) /
        den;
    const double x =
        s + 2.0 * xi * z * (xi * std::sin(2.0 * psi) * sech_phi * sech_phi - 2.0 * z * tanh_phi) /
                den;
    return {x, u};
}

PointXU loop_antiloop(const BreatherParams& p, double tau, double s) {
    if (p.mode != BreatherParams::Mode::loop_antiloop)
        throw Error("loop_antiloop: parameters are in pulse mode");
    const double xi = p.xi;
    const double z = p.zeta();
    const double phi = xi * (s + tau);
    const double psi = z * (s - tau);
    const double tanh_phi = std::tanh(phi);
    // sinh(psi)/cosh(phi) and cosh(psi)/cosh(phi) via exponential ratios so
    // that large arguments stay finite (xi > zeta makes |phi| dominate |psi|
    // away from the wave core).
    const double gap = std::abs(psi) - std::abs(phi);
    const double scale = gap < 700.0 ? std::exp(gap) : std::numeric_limits<double>::infinity();
    const double em2psi = std::exp(-2.0 * std::abs(psi));
    const double em2phi = std::exp(-2.0 * std::abs(phi));
    const double r_sinh = (psi < 0 ? -1.0 : 1.0) * scale * (1.0 - em2psi) / (1.0 + em2phi);
    const double r_cosh = scale * (1.0 + em2psi) / (1.0 + em2phi);
    const double den = xi * xi * r_sinh * r_sinh + z * z;
    const double u = 4.0 * xi * z * (xi * r_sinh * tanh_phi + z * r_cosh) / den;
    const double x =
        s + 2.0 * xi * z * (2.0 * xi * r_sinh * r_cosh - 2.0 * z * tanh_phi) / den;
    return {x, u};
}

PointXU breather(const BreatherParams& p, double tau, double s) {
    return p.mode == BreatherParams::Mode::pulse ? breather_pulse(p, tau, s)
                                                 : loop_antiloop(p, tau, s);
}

TravelingWaveParams::TravelingWaveParams(WaveFamily f, double v_, double x0_, double xi_,
                                         int sign_)
    : family(f), v(v_), x0(x0_), xi(xi_), sign(sign_) {
    if (!(v > 0.0)) throw Error("TravelingWaveParams: v must be positive");
    if (sign != 1 && sign != -1) throw Error("TravelingWaveParams: sign must be +1 or -1");
    switch (family) {
        case WaveFamily::hump:
            if (!(xi > 0.0 && xi < 0.5))
                throw Error("hump family requires xi in (0, 1/2)");
            break;
        case WaveFamily::upright_loop:
            if (!(xi > 0.0 && xi < 1.0))
                throw Error("upright loop family requires xi in (0, 1)");
            break;
        case WaveFamily::alternating:
            if (!(xi > 0.5 && xi < 1.0))
                throw Error("alternating family requires xi in (1/2, 1)");
            break;
    }
}

double TravelingWaveParams::alpha() const {
    switch (family) {
        case WaveFamily::hump:
            return std::sqrt((1.0 - 2.0 * xi) / v);
        case WaveFamily::upright_loop:
            return std::sqrt((2.0 - xi) / (xi * xi * v));
        case WaveFamily::alternating:
            return std::sqrt((2.0 * xi - 1.0) / v);
    }
    return 0.0;
}

double TravelingWaveParams::period_s() const {
    const double K = elliptic::complete_K(xi);
    return (family == WaveFamily::upright_loop ? 2.0 : 4.0) * K / alpha();
}

double TravelingWaveParams::window_per_period() const {
    const double K = elliptic::complete_K(xi);
    const double E = elliptic::complete_E(xi);
    const double al = alpha();
    if (family == WaveFamily::upright_loop)
        return (2.0 / (xi * al)) * (2.0 * E - (2.0 - xi) * K);
    return (4.0 / al) * (2.0 * E - K);
}

PointXU periodic_hump(const TravelingWaveParams& p, double tau, double s) {
    if (p.family != WaveFamily::hump) throw Error("periodic_hump: wrong family");
    const double al = p.alpha();
    const double w = al * s - tau / al;
    const double x = p.v * tau + p.x0 - s + tau / (al * al) + (2.0 / al) * elliptic::incomplete_E(w, p.xi);
    const double u = p.sign * (2.0 * std::sqrt(p.xi) / al) * elliptic::jacobi_sn_cn_dn(w, p.xi).cn;
    return {x, u};
}

double periodic_hump_theta(const TravelingWaveParams& p, double tau, double s) {
    if (p.family != WaveFamily::hump) throw Error("periodic_hump_theta: wrong family");
    const double al = p.alpha();
    const double w = al * s - tau / al;
    const auto j = elliptic::jacobi_sn_cn_dn(w, p.xi);
    // cos(theta) = 2 dn^2 - 1 (> 0 for xi < 1/2), sin(theta) = -sign 2 sqrt(xi) sn dn.
    const double num = -p.sign * 2.0 * std::sqrt(p.xi) * j.sn * j.dn;
    const double den = 2.0 * j.dn * j.dn - 1.0;
    return std::atan2(num, den);
}

PointXU periodic_loop(const TravelingWaveParams& p, double tau, double s) {
    if (p.family != WaveFamily::upright_loop) throw Error("periodic_loop: wrong family");
    const double al = p.alpha();
    const double w = al * s - tau / (p.xi * al);
    const double x =
        p.x0 - ((2.0 - p.xi) / p.xi) * s + (2.0 / (p.xi * al)) * elliptic::incomplete_E(w, p.xi);
    const double u = p.sign * (2.0 / (p.xi * al)) * elliptic::jacobi_sn_cn_dn(w, p.xi).dn;
    return {x, u};
}

PointXU periodic_alternating(const TravelingWaveParams& p, double tau, double s) {
    if (p.family != WaveFamily::alternating) throw Error("periodic_alternating: wrong family");
    const double al = p.alpha();
    const double w = al * s - tau / al;
    const double x = -p.v * tau + p.x0 - s + tau / (al * al) + (2.0 / al) * elliptic::incomplete_E(w, p.xi);
    const double u = p.sign * (2.0 * std::sqrt(p.xi) / al) * elliptic::jacobi_sn_cn_dn(w, p.xi).cn;
    return {x, u};
}

PointXU traveling_wave(const TravelingWaveParams& p, double tau, double s) {
    switch (p.family) {
        case WaveFamily::hump:
            return periodic_hump(p, tau, s);
        case WaveFamily::upright_loop:
            return periodic_loop(p, tau, s);
        case WaveFamily::alternating:
            return periodic_alternating(p, tau, s);
    }
    return {0.0, 0.0};
}

}  // namespace spmm::exact
