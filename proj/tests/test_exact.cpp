#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "spmm/elliptic.hpp"
#include "spmm/exact.hpp"

using namespace spmm::exact;

namespace {

// Finite-difference arc-length residual |x_s^2 + u_s^2 - 1| at (tau, s).
template <class F>
double arc_residual(const F& f, double tau, double s, double h = 1e-5) {
    const auto p = f(tau, s + h);
    const auto m = f(tau, s - h);
    const double xs = (p.x - m.x) / (2 * h);
    const double us = (p.u - m.u) / (2 * h);
    return std::abs(xs * xs + us * us - 1.0);
}

// Base-point condition residual |x_tau(tau,0) + u(tau,0)^2/2|.
template <class F>
double base_residual(const F& f, double tau, double h = 1e-5) {
    const auto p = f(tau + h, 0.0);
    const auto m = f(tau - h, 0.0);
    const double xt = (p.x - m.x) / (2 * h);
    const double u0 = f(tau, 0.0).u;
    return std::abs(xt + 0.5 * u0 * u0);
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("breather pulse peak value u(0,0) = 4 xi") {
    for (double xi : {0.3, 0.38}) {
        BreatherParams p(xi);
        const auto pt = breather_pulse(p, 0.0, 0.0);
        CHECK(std::abs(pt.u - 4.0 * xi) <= 1e-14 * 4.0 * xi);
        CHECK(std::abs(pt.x) <= 1e-14);
    }
}

TEST_CASE("breather pulse matches frozen values") {
    BreatherParams p(0.3);
    for (const auto& r : oracle::breather_03) {
        const auto pt = breather_pulse(p, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-13));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(1e-13));
    }
    BreatherParams q(0.38);
    for (const auto& r : oracle::breather_038) {
        const auto pt = breather_pulse(q, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-13));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(1e-13));
    }
}

TEST_CASE("loop/anti-loop values and tail decay") {
    BreatherParams p(1.2);
    const auto peak = loop_antiloop(p, 0.0, 0.0);
    CHECK(peak.u == doctest::Approx(4.8).epsilon(1e-13));
    for (const auto& r : oracle::loop_antiloop_12) {
        const auto pt = loop_antiloop(p, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-12));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(5e-10));
    }
    // Tails: u decays; x - s approaches a constant on each side.
    for (double s : {40.0, -40.0}) {
        CHECK(std::abs(loop_antiloop(p, 0.0, s).u) < 1e-8);
        const double c1 = loop_antiloop(p, 0.0, s).x - s;
        const double s2 = s + (s > 0 ? -1.0 : 1.0);
        const double c2 = loop_antiloop(p, 0.0, s2).x - s2;
        CHECK(std::abs(c1 - c2) < 1e-6);
    }
    // Very large arguments stay finite.
    const auto far = loop_antiloop(p, 800.0, -40.0);
    CHECK(std::isfinite(far.x));
    CHECK(std::isfinite(far.u));
}

TEST_CASE("breather mode/params validation") {
    CHECK_THROWS_AS(BreatherParams(-0.5), spmm::Error);
    CHECK_THROWS_AS(BreatherParams(1.0), spmm::Error);
    BreatherParams pulse(0.3);
    BreatherParams loop(1.2);
    CHECK_THROWS_AS(loop_antiloop(pulse, 0, 0), spmm::Error);
    CHECK_THROWS_AS(breather_pulse(loop, 0, 0), spmm::Error);
    CHECK(BreatherParams::xi_critical == doctest::Approx(std::sin(std::numbers::pi / 8)));
}

TEST_CASE("hump algebraic anchor and frozen values") {
    TravelingWaveParams p(WaveFamily::hump, 1.0, 0.0, 0.25, +1);
    CHECK(periodic_hump(p, 0.0, 0.0).u == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (const auto& r : oracle::hump_025) {
        const auto pt = periodic_hump(p, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-13));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(1e-13));
    }
}

TEST_CASE("hump periodic closure: one period advances x by the window") {
    TravelingWaveParams p(WaveFamily::hump, 1.0, 0.0, 0.25, +1);
    const double S = p.period_s();
    const double Lx = p.window_per_period();
    const auto a = periodic_hump(p, 0.0, 0.7);
    const auto b = periodic_hump(p, 0.0, 0.7 + S);
    CHECK(b.x - a.x == doctest::Approx(Lx).epsilon(1e-12));
    CHECK(b.u == doctest::Approx(a.u).epsilon(1e-12));
}

TEST_CASE("hump theta branch and consistency with (x_s, u_s)") {
    TravelingWaveParams p(WaveFamily::hump, 1.0, 0.0, 0.25, +1);
    CHECK(periodic_hump_theta(p, 0.0, 0.0) == doctest::Approx(0.0));

    const double h = 1e-5;
    for (double s : {0.3, 1.9, 4.0, 7.7}) {
        const auto pp = periodic_hump(p, 0.0, s + h);
        const auto pm = periodic_hump(p, 0.0, s - h);
        const double xs = (pp.x - pm.x) / (2 * h);
        const double us = (pp.u - pm.u) / (2 * h);
        const double th = periodic_hump_theta(p, 0.0, s);
        CHECK(std::cos(th) == doctest::Approx(xs).epsilon(1e-6));
        CHECK(std::sin(th) == doctest::Approx(us).epsilon(1e-6));
    }
    // cn-based theta has no net winding over one period.
    const double S = p.period_s();
    CHECK(periodic_hump_theta(p, 0.0, S) == doctest::Approx(periodic_hump_theta(p, 0.0, 0.0)).epsilon(1e-12));
}

TEST_CASE("upright loop frozen values and dn periodicity") {
    TravelingWaveParams p(WaveFamily::upright_loop, 1.0, 0.0, 0.75, +1);
    const double al = p.alpha();
    CHECK(periodic_loop(p, 0.0, 0.0).u == doctest::Approx(2.0 / (0.75 * al)).epsilon(1e-14));
    for (const auto& r : oracle::uloop_075) {
        const auto pt = periodic_loop(p, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-13));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(1e-13));
    }
    const double S = p.period_s();  // 2K/alpha: dn period
    const auto a = periodic_loop(p, 0.0, 0.4);
    const auto b = periodic_loop(p, 0.0, 0.4 + S);
    CHECK(b.u == doctest::Approx(a.u).epsilon(1e-12));
}

TEST_CASE("alternating frozen values and sign alternation") {
    TravelingWaveParams p(WaveFamily::alternating, 1.0, 0.0, 0.75, +1);
    const double al = p.alpha();
    CHECK(periodic_alternating(p, 0.0, 0.0).u ==
          doctest::Approx(2.0 * std::sqrt(0.75) / al).epsilon(1e-14));
    for (const auto& r : oracle::alternating_075) {
        const auto pt = periodic_alternating(p, r.tau, r.s);
        CHECK(pt.x == doctest::Approx(r.x).epsilon(1e-13));
        CHECK(pt.u == doctest::Approx(r.u).epsilon(1e-13));
    }
    // Half a period flips the sign of u (cn structure).
    const double half = 0.5 * p.period_s();
    const auto a = periodic_alternating(p, 0.0, 0.37);
    const auto b = periodic_alternating(p, 0.0, 0.37 + half);
    CHECK(b.u == doctest::Approx(-a.u).epsilon(1e-12));
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(TravelingWaveParams(WaveFamily::hump, 1.0, 0.0, 0.6, +1), spmm::Error);
    CHECK_THROWS_AS(TravelingWaveParams(WaveFamily::alternating, 1.0, 0.0, 0.3, +1), spmm::Error);
    CHECK_THROWS_AS(TravelingWaveParams(WaveFamily::upright_loop, -1.0, 0.0, 0.5, +1), spmm::Error);
    CHECK_THROWS_AS(TravelingWaveParams(WaveFamily::hump, 1.0, 0.0, 0.25, 2), spmm::Error);
}

TEST_CASE("arc-length parametrization for every family") {
    BreatherParams b03(0.3), b12(1.2);
    TravelingWaveParams hp(WaveFamily::hump, 1.0, 0.0, 0.25, +1);
    TravelingWaveParams ul(WaveFamily::upright_loop, 1.0, 0.0, 0.75, +1);
    TravelingWaveParams at(WaveFamily::alternating, 1.0, 0.0, 0.75, -1);

    auto fb = [&](double t, double s) { return breather(b03, t, s); };
    auto fl = [&](double t, double s) { return breather(b12, t, s); };
    auto fh = [&](double t, double s) { return traveling_wave(hp, t, s); };
    auto fu = [&](double t, double s) { return traveling_wave(ul, t, s); };
    auto fa = [&](double t, double s) { return traveling_wave(at, t, s); };

    for (double tau : {0.0, 1.7}) {
        for (double s : {-3.0, 0.0, 0.9, 2.6}) {
            CHECK(arc_residual(fb, tau, s) <= 1e-6);
            CHECK(arc_residual(fl, tau, s) <= 1e-6);
            CHECK(arc_residual(fh, tau, s) <= 1e-6);
            CHECK(arc_residual(fu, tau, s) <= 1e-6);
            CHECK(arc_residual(fa, tau, s) <= 1e-6);
        }
    }
}

TEST_CASE("base-point evolution condition for every family") {
    BreatherParams b03(0.3), b12(1.2);
    TravelingWaveParams hp(WaveFamily::hump, 1.0, 0.0, 0.25, +1);
    TravelingWaveParams ul(WaveFamily::upright_loop, 1.0, 0.0, 0.75, +1);
    TravelingWaveParams at(WaveFamily::alternating, 1.0, 0.0, 0.75, +1);

    auto fb = [&](double t, double s) { return breather(b03, t, s); };
    auto fl = [&](double t, double s) { return breather(b12, t, s); };
    auto fh = [&](double t, double s) { return traveling_wave(hp, t, s); };
    auto fu = [&](double t, double s) { return traveling_wave(ul, t, s); };
    auto fa = [&](double t, double s) { return traveling_wave(at, t, s); };

    for (double tau : {0.2, 1.1, 3.4}) {
        CHECK(base_residual(fb, tau) <= 1e-6);
        CHECK(base_residual(fl, tau) <= 1e-6);
        CHECK(base_residual(fh, tau) <= 1e-6);
        CHECK(base_residual(fu, tau) <= 1e-6);
        CHECK(base_residual(fa, tau) <= 1e-6);
    }
    // u(tau,0) = theta_tau(tau,0) where the hump theta is available.
    const double h = 1e-5;
    for (double tau : {0.2, 2.3}) {
        const double tt = (periodic_hump_theta(hp, tau + h, 0.0) -
                           periodic_hump_theta(hp, tau - h, 0.0)) /
                          (2 * h);
        CHECK(std::abs(tt - periodic_hump(hp, tau, 0.0).u) <= 1e-6);
    }
}

TEST_CASE("single-valued breather below the critical shape parameter") {
    BreatherParams p(0.3);
    const double h = 1e-5;
    for (double s = -20.0; s <= 20.0; s += 0.25) {
        const double xs = (breather_pulse(p, 0.0, s + h).x - breather_pulse(p, 0.0, s - h).x) / (2 * h);
        CHECK(xs > 0.0);
    }
}

}  // TEST_SUITE
