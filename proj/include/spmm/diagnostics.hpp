#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>

#include "spmm/fields.hpp"

namespace spmm::diag {

/// Per-level invariants; NaN marks quantities that are undefined for the
/// method or curve (e.g. energy of a multi-valued curve).
struct InvariantRecord {
    double time = 0.0;
    double H_d = std::numeric_limits<double>::quiet_NaN();
    double window_L = std::numeric_limits<double>::quiet_NaN();
    double constraint_residual = std::numeric_limits<double>::quiet_NaN();
    double norm_I = std::numeric_limits<double>::quiet_NaN();
    double energy_E = std::numeric_limits<double>::quiet_NaN();
    long winding = 0;
    double roughness = std::numeric_limits<double>::quiet_NaN();
};

/// Discrete implicit constraint sum_k u_k (x_k - x_{k-1}); vanishes (to
/// solver tolerance) for curves reconstructed with the corrected base u.
double implicit_constraint_residual(const CurveState& curve);

/// Moving-mesh norm (1/2) sum (midpoint u)^2 (x_k - x_{k-1}).
double norm_on_curve(const CurveState& curve);

/// Energy via linear resampling onto a uniform grid over [x_0, x_K] followed
/// by the fixed-mesh energy (mean removed before the antiderivative).
/// Empty for multi-valued curves (x not strictly increasing).
std::optional<double> energy_on_curve(const CurveState& curve);

/// Normalized absolute second-difference sum: grid-scale oscillation gauge.
/// Interior points only; the caller appends wrap values for periodic data.
double roughness_indicator(std::span<const double> values);

/// Roughness of a theta level including the periodic wrap (winding-extended
/// neighbours at both ends).
double theta_roughness(const ThetaField& theta);

/// Sup-norm distance between a computed theta level and an exact continuous
/// branch at time t, after removing the fixed 2 pi branch offset.
/// exact_theta(t, s) must be continuous in s; s_offset maps grid index k to
/// s = s_offset + k ds.
double error_vs_exact_theta(const ThetaField& theta,
                            const std::function<double(double, double)>& exact_theta, double t,
                            double s_offset, double branch_offset);

/// 2 pi multiple separating the computed branch from the exact one at t = 0.
double theta_branch_offset(const ThetaField& theta0,
                           const std::function<double(double, double)>& exact_theta,
                           double s_offset);

}  // namespace spmm::diag
