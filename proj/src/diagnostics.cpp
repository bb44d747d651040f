#include "spmm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spmm/baselines.hpp"

namespace spmm::diag {

double implicit_constraint_residual(const CurveState& curve) {
    const int K = curve.K();
    double s = 0.0;
    for (int k = 1; k <= K; ++k)
        s += curve.u[static_cast<std::size_t>(k)] *
             (curve.x[static_cast<std::size_t>(k)] - curve.x[static_cast<std::size_t>(k) - 1]);
    return s;
}

double norm_on_curve(const CurveState& curve) {
    const int K = curve.K();
    double s = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double um =
            0.5 * (curve.u[static_cast<std::size_t>(k)] + curve.u[static_cast<std::size_t>(k) - 1]);
        s += um * um *
             (curve.x[static_cast<std::size_t>(k)] - curve.x[static_cast<std::size_t>(k) - 1]);
    }
    return 0.5 * s;
}

std::optional<double> energy_on_curve(const CurveState& curve) {
    const int K = curve.K();
    for (int k = 1; k <= K; ++k)
        if (!(curve.x[static_cast<std::size_t>(k)] > curve.x[static_cast<std::size_t>(k) - 1]))
            return std::nullopt;

    // Linear resampling onto N = K uniform cells over [x_0, x_K); the last
    // exact sample closes the period.
    const double L = curve.x[static_cast<std::size_t>(K)] - curve.x[0];
    const double dx = L / K;
    UniformField f;
    f.delta_x = dx;
    f.u.resize(static_cast<std::size_t>(K));
    int seg = 1;
    for (int k = 0; k < K; ++k) {
        const double xq = curve.x[0] + k * dx;
        while (seg < K && curve.x[static_cast<std::size_t>(seg)] < xq) ++seg;
        const double xa = curve.x[static_cast<std::size_t>(seg) - 1];
        const double xb = curve.x[static_cast<std::size_t>(seg)];
        const double t = (xq - xa) / (xb - xa);
        f.u[static_cast<std::size_t>(k)] =
            (1.0 - t) * curve.u[static_cast<std::size_t>(seg) - 1] +
            t * curve.u[static_cast<std::size_t>(seg)];
    }
    double mean = 0.0;
    for (double v : f.u) mean += v;
    mean /= K;
    for (double& v : f.u) v -= mean;
    return baselines::energy_d(f);
}

double roughness_indicator(std::span<const double> values) {
    if (values.size() < 3) throw Error("roughness_indicator: need at least 3 values");
    double num = 0.0;
    for (std::size_t k = 1; k + 1 < values.size(); ++k)
        num += std::abs(values[k + 1] - 2.0 * values[k] + values[k - 1]);
    double den = 0.0;
    for (double v : values) den += std::abs(v) + 1e-300;
    return num / den;
}

double theta_roughness(const ThetaField& theta) {
    const int K = theta.grid.K;
    std::vector<double> ext(static_cast<std::size_t>(K) + 2);
    for (int k = 0; k <= K + 1; ++k) ext[static_cast<std::size_t>(k)] = theta.at(k);
    return roughness_indicator(ext);
}

double theta_branch_offset(const ThetaField& theta0,
                           const std::function<double(double, double)>& exact_theta,
                           double s_offset) {
    const double s1 = s_offset + theta0.grid.delta_s;
    const double gap = theta0.theta[0] - exact_theta(0.0, s1);
    return 2.0 * std::numbers::pi * std::round(gap / (2.0 * std::numbers::pi));
}

double error_vs_exact_theta(const ThetaField& theta,
                            const std::function<double(double, double)>& exact_theta, double t,
                            double s_offset, double branch_offset) {
    const int K = theta.grid.K;
    double err = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double s = s_offset + k * theta.grid.delta_s;
        const double e = exact_theta(t, s) + branch_offset;
        err = std::max(err, std::abs(theta.theta[static_cast<std::size_t>(k - 1)] - e));
    }
    return err;
}

}  // namespace spmm::diag
