#include "spmm/hodograph.hpp"

#include <cmath>

#include "spmm/sg_dvdm.hpp"

namespace spmm::hodograph {
namespace {

void check_pair(const ThetaField& curr, const ThetaField& next) {
    if (curr.grid.K != next.grid.K || curr.winding != next.winding)
        throw Error("hodograph: theta levels must share grid and winding");
}

}  // namespace

double base_u(const ThetaField& theta_curr, const ThetaField& theta_next) {
    check_pair(theta_curr, theta_next);
    const int K = theta_curr.grid.K;
    const double ds = theta_curr.grid.delta_s;
    const double dt = theta_curr.grid.delta_tau;

    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < K; ++k) {
        const double c = std::cos(theta_curr.theta[static_cast<std::size_t>(k)]);
        const double dtheta =
            (theta_next.theta[static_cast<std::size_t>(k)] - theta_curr.theta[static_cast<std::size_t>(k)]) / dt;
        num += dtheta * c * ds;
        den += c * ds;
    }
    if (std::abs(den) < 1e-12 * theta_curr.grid.S)
        throw ZeroWindow("base_u: window length below 1e-12 * S");
    // theta_0 extends from theta_K; the winding shift cancels in the
    // difference quotient.
    const double dtheta0 =
        (theta_next.theta[static_cast<std::size_t>(K - 1)] - theta_curr.theta[static_cast<std::size_t>(K - 1)]) / dt;
    return dtheta0 - num / den;
}

double base_u_naive(const ThetaField& theta_curr, const ThetaField& theta_next) {
    check_pair(theta_curr, theta_next);
    const int K = theta_curr.grid.K;
    const double dt = theta_curr.grid.delta_tau;
    return (theta_next.theta[static_cast<std::size_t>(K - 1)] -
            theta_curr.theta[static_cast<std::size_t>(K - 1)]) /
           dt;
}

double advance_base_x(const BasePoint& base, double delta_tau) {
    return base.x0 - 0.5 * delta_tau * base.u0 * base.u0;
}

CurveState reconstruct_curve(const ThetaField& theta_curr, const ThetaField& theta_next,
                             const BasePoint& base) {
    check_pair(theta_curr, theta_next);
    const int K = theta_curr.grid.K;
    const double ds = theta_curr.grid.delta_s;
    const std::vector<double> a = sg::discrete_variational_derivative(theta_next, theta_curr);

    CurveState out;
    out.base_x = base.x0;
    out.base_u = base.u0;
    out.time_index = base.time_index;
    out.x.resize(static_cast<std::size_t>(K) + 1);
    out.u.resize(static_cast<std::size_t>(K) + 1);
    out.x[0] = base.x0;
    out.u[0] = base.u0;
    for (int k = 1; k <= K; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);  // a_k
        const std::size_t im = k == 1 ? static_cast<std::size_t>(K - 1) : i - 1;  // a_{k-1}
        out.x[static_cast<std::size_t>(k)] =
            out.x[static_cast<std::size_t>(k) - 1] + std::cos(theta_curr.theta[i]) * ds;
        out.u[static_cast<std::size_t>(k)] =
            out.u[static_cast<std::size_t>(k) - 1] + 0.5 * (a[i] + a[im]) * ds;
    }
    return out;
}

CurveState reconstruct_curve_naive(const ThetaField& theta_curr, const BasePoint& base) {
    const int K = theta_curr.grid.K;
    const double ds = theta_curr.grid.delta_s;
    CurveState out;
    out.base_x = base.x0;
    out.base_u = base.u0;
    out.time_index = base.time_index;
    out.x.resize(static_cast<std::size_t>(K) + 1);
    out.u.resize(static_cast<std::size_t>(K) + 1);
    out.x[0] = base.x0;
    out.u[0] = base.u0;
    for (int k = 1; k <= K; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        out.x[static_cast<std::size_t>(k)] =
            out.x[static_cast<std::size_t>(k) - 1] + std::cos(theta_curr.theta[i]) * ds;
        out.u[static_cast<std::size_t>(k)] =
            out.u[static_cast<std::size_t>(k) - 1] + std::sin(theta_curr.theta[i]) * ds;
    }
    return out;
}

}  // namespace spmm::hodograph
