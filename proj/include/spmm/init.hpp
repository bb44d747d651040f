#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spmm/exact.hpp"
#include "spmm/fields.hpp"

namespace spmm::init {

/// Arc-length parametrized initial curve at tau = 0.  theta_exact is optional
/// (empty when the family has no closed-form tangent angle); when present it
/// must already be a continuous branch in s.
struct InitialCurve {
    std::function<exact::PointXU(double)> sampler;
    double S = 0.0;
    std::function<double(double)> theta_exact;
};

struct ThetaSamples {
    std::vector<double> theta;  // k = 1..K
    long winding = 0;
};

/// Chord-angle discretization of theta from K+1 curve samples (index 0..K).
/// Angles are lifted to a continuous branch; theta_0 (the wrap-around chord)
/// anchors the branch and the winding n = round((theta_K - theta_0)/2pi).
/// Throws CoincidentPoints on a zero chord, AmbiguousBranch when a lift step
/// approaches pi, and Error when the winding misses an integer by > 1e-6.
ThetaSamples theta_from_samples(std::span<const double> x, std::span<const double> u);

/// theta(0, k ds) on the grid from an analytic curve: central differences at
/// step 1e-6 on the sampler (or curve.theta_exact when provided), lifted to a
/// continuous branch.
ThetaField theta_from_analytic(const InitialCurve& curve, const GridSpec& grid);

/// Single-valued periodic profile u0(x) with analytic slope.
struct Profile {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

/// Total arc length of the graph of u0 over one period [0, L] by adaptive
/// quadrature (relative accuracy ~1e-12).
double arclength_total(const Profile& u0, double L);

struct Equidistributed {
    std::vector<double> x;  // k = 0..K, x_0 = 0, x_K = L
    std::vector<double> u;
};

/// Arc-length equidistribution: x_k solves int_0^{x_k} sqrt(1+u0'^2) = k ds
/// with ds = S(u0)/K, by safeguarded Newton (bisection fallback) to residual
/// <= 1e-12 * S.
Equidistributed equidistribute(const Profile& u0, double L, int K);

/// Curve samples read from CSV: columns (x,u) or (s,x,u); an optional header
/// row is skipped.
struct SampledCurve {
    std::vector<double> x, u;
};
SampledCurve read_curve_csv(const std::string& path);

/// Sample an analytic curve at s = k ds, k = 0..K (ds = S/K).
SampledCurve sample_curve(const InitialCurve& curve, int K);

}  // namespace spmm::init
