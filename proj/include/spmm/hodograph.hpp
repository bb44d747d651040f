#pragma once

#include "spmm/fields.hpp"

namespace spmm::hodograph {

/// Moving base point anchoring the discrete hodograph transformation.
struct BasePoint {
    double x0 = 0.0;
    double u0 = 0.0;
    int time_index = 0;
};

/// Base-point u at level m from two consecutive theta levels:
/// u0 = d+_tau theta_0 - [sum (d+_tau theta_k) cos(theta_k) ds] / [sum cos(theta_k) ds].
/// Throws ZeroWindow when the window length sum is below 1e-12 * S.
double base_u(const ThetaField& theta_curr, const ThetaField& theta_next);

/// Ablation variant: u0 = d+_tau theta_0 without the constraint correction.
double base_u_naive(const ThetaField& theta_curr, const ThetaField& theta_next);

/// Base-point x advance: x0^{m+1} = x0^m - (dt/2) (u0^m)^2.
double advance_base_x(const BasePoint& base, double delta_tau);

/// Discrete hodograph reconstruction at level m: x-increments cos(theta_k),
/// u-increments are backward averages of the discrete variational derivative
/// between levels m and m+1.  Sums run left to right.
CurveState reconstruct_curve(const ThetaField& theta_curr, const ThetaField& theta_next,
                             const BasePoint& base);

/// Natural (naive) discretization with sin(theta_k) u-increments; kept for
/// the closure-gap comparison.
CurveState reconstruct_curve_naive(const ThetaField& theta_curr, const BasePoint& base);

}  // namespace spmm::hodograph
