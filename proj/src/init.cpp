#include "spmm/init.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spmm/quadrature.hpp"

namespace spmm::init {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_pi(double a) {
    double r = std::remainder(a, kTwoPi);
    return r;
}

/// Lift raw principal angles onto the continuous branch anchored at `anchor`.
std::vector<double> lift_branch(std::span<const double> raw, double anchor) {
    std::vector<double> out(raw.size());
    double prev = anchor;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double step = wrap_to_pi(raw[i] - prev);
        if (std::abs(step) >= std::numbers::pi - 1e-3)
            throw AmbiguousBranch("branch lift step within 1e-3 of pi; grid too coarse");
        out[i] = prev + step;
        prev = out[i];
    }
    return out;
}

}  // namespace

ThetaSamples theta_from_samples(std::span<const double> x, std::span<const double> u) {
    if (x.size() != u.size() || x.size() < 4)
        throw Error("theta_from_samples: need K+1 matching samples with K >= 3");
    const std::size_t K = x.size() - 1;

    std::vector<double> raw(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double dx = x[k] - x[k - 1];
        const double du = u[k] - u[k - 1];
        if (dx == 0.0 && du == 0.0)
            throw CoincidentPoints("zero chord at k=" + std::to_string(k));
        raw[k - 1] = std::atan2(du, dx);
    }
    // The wrap-around chord (k=0) coincides with chord K under periodicity.
    const double theta0 = raw[K - 1];
    std::vector<double> theta = lift_branch(raw, theta0);

    const double turns = (theta[K - 1] - theta0) / kTwoPi;
    const long n = std::lround(turns);
    if (std::abs(turns - static_cast<double>(n)) > 1e-6)
        throw Error("theta_from_samples: winding is not an integer (input curve may not close)");
    return {std::move(theta), n};
}

ThetaField theta_from_analytic(const InitialCurve& curve, const GridSpec& grid) {
    const int K = grid.K;
    std::vector<double> raw(static_cast<std::size_t>(K) + 1);
    if (curve.theta_exact) {
        for (int k = 0; k <= K; ++k) raw[static_cast<std::size_t>(k)] = curve.theta_exact(k * grid.delta_s);
        // Already a continuous branch; winding read off directly.
        const double turns = (raw[static_cast<std::size_t>(K)] - raw[0]) / kTwoPi;
        const long n = std::lround(turns);
        if (std::abs(turns - static_cast<double>(n)) > 1e-6)
            throw Error("theta_from_analytic: non-integer winding from exact theta");
        return ThetaField(grid, std::vector<double>(raw.begin() + 1, raw.end()), n);
    }

    const double h = 1e-6;
    for (int k = 0; k <= K; ++k) {
        const double s = k * grid.delta_s;
        const auto p = curve.sampler(s + h);
        const auto m = curve.sampler(s - h);
        raw[static_cast<std::size_t>(k)] = std::atan2(p.u - m.u, p.x - m.x);
    }
    std::vector<double> lifted = lift_branch(raw, raw[0]);
    const double turns = (lifted[static_cast<std::size_t>(K)] - lifted[0]) / kTwoPi;
    const long n = std::lround(turns);
    if (std::abs(turns - static_cast<double>(n)) > 1e-6)
        throw Error("theta_from_analytic: winding is not an integer");
    return ThetaField(grid, std::vector<double>(lifted.begin() + 1, lifted.end()), n);
}

double arclength_total(const Profile& u0, double L) {
    auto integrand = [&](double x) {
        const double d = u0.df(x);
        return std::sqrt(1.0 + d * d);
    };
    return integrate(integrand, 0.0, L, 1e-12 * std::max(1.0, L));
}

Equidistributed equidistribute(const Profile& u0, double L, int K) {
    if (K < 3) throw Error("equidistribute: K must be >= 3");
    auto integrand = [&](double x) {
        const double d = u0.df(x);
        return std::sqrt(1.0 + d * d);
    };
    const double S = arclength_total(u0, L);
    const double ds = S / K;
    const double qtol = 1e-13 * std::max(1.0, S);

    Equidistributed out;
    out.x.resize(static_cast<std::size_t>(K) + 1);
    out.u.resize(static_cast<std::size_t>(K) + 1);
    out.x[0] = 0.0;
    double acc = 0.0;  // arc length accumulated up to out.x[k-1]
    for (int k = 1; k < K; ++k) {
        const double target = k * ds;
        double lo = out.x[static_cast<std::size_t>(k) - 1];
        double hi = L;
        double acc_lo = acc;
        // Newton on A(x) - target with bisection safeguard; A tracked
        // incrementally from the bracket's low end.
        double xk = std::clamp(lo + (target - acc_lo) / integrand(lo), lo, hi);
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const double q = integrate(integrand, lo, xk, qtol);
            const double res = acc_lo + q - target;
            if (std::abs(res) <= 1e-12 * S) {
                converged = true;
                break;
            }
            if (res > 0.0) {
                hi = xk;
            } else {
                acc_lo += q;
                lo = xk;
            }
            double next = xk - res / integrand(xk);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            xk = next;
        }
        if (!converged) throw Error("equidistribute: Newton/bisection failed to converge");
        out.x[static_cast<std::size_t>(k)] = xk;
        acc = target;
    }
    out.x[static_cast<std::size_t>(K)] = L;
    for (int k = 0; k <= K; ++k) out.u[static_cast<std::size_t>(k)] = u0.f(out.x[static_cast<std::size_t>(k)]);
    return out;
}

SampledCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open CSV file: " + path);
    SampledCurve out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                cols.push_back(std::stod(cell, &pos));
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw Error("malformed CSV row: " + line);
        }
        first = false;
        if (cols.size() == 2) {
            out.x.push_back(cols[0]);
            out.u.push_back(cols[1]);
        } else if (cols.size() == 3) {
            out.x.push_back(cols[1]);
            out.u.push_back(cols[2]);
        } else {
            throw Error("CSV rows must have 2 (x,u) or 3 (s,x,u) columns");
        }
    }
    return out;
}

SampledCurve sample_curve(const InitialCurve& curve, int K) {
    const double ds = curve.S / K;
    SampledCurve out;
    out.x.resize(static_cast<std::size_t>(K) + 1);
    out.u.resize(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const auto p = curve.sampler(k * ds);
        out.x[static_cast<std::size_t>(k)] = p.x;
        out.u[static_cast<std::size_t>(k)] = p.u;
    }
    return out;
}

}  // namespace spmm::init
