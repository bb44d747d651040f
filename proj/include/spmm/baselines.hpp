#pragma once

#include <span>
#include <vector>

#include "spmm/fields.hpp"
#include "spmm/nonlinear_solver.hpp"

namespace spmm::baselines {

/// Discrete antiderivative on a zero-mean N-periodic sequence: trapezoidal
/// partial sums anchored at the N..1 wrap cell, with the mean removed.
/// Satisfies fwd_diff(output)_k = fwd_avg(v)_k exactly and is skew-symmetric
/// as a bilinear form on zero-mean sequences.
/// Throws NonZeroMean when |sum v| > 1e-10 * N * max|v|.
std::vector<double> discrete_antiderivative(std::span<const double> v, double delta_x);

/// Discrete norm I_d = (1/2) sum u_k^2 dx.
double norm_d(const UniformField& u);

/// Discrete energy sum [(1/24) u^4 - (1/2) (antiderivative u)^2] dx.
/// Requires zero-mean u (same gate as discrete_antiderivative).
double energy_d(const UniformField& u);

enum class UniformScheme {
    norm_preserving,
    multisymplectic,
};

/// One implicit step of a fixed-mesh scheme.  `guess` seeds Newton.
UniformField step_uniform(UniformScheme scheme, const UniformField& u_curr, double delta_t,
                          const std::vector<double>& guess, const solver::SolverConfig& cfg);

UniformField step_norm_preserving(const UniformField& u_curr, double delta_t,
                                  const solver::SolverConfig& cfg);

UniformField step_multisymplectic(const UniformField& u_curr, double delta_t,
                                  const solver::SolverConfig& cfg);

/// Stateful stepper with linear-extrapolation Newton seeding.
class UniformStepper {
public:
    UniformStepper(UniformScheme scheme, double delta_t, solver::SolverConfig cfg)
        : scheme_(scheme), delta_t_(delta_t), cfg_(cfg) {}

    UniformField step(const UniformField& u_curr);
    void reset() { prev_.clear(); }

private:
    UniformScheme scheme_;
    double delta_t_;
    solver::SolverConfig cfg_;
    std::vector<double> prev_;
};

}  // namespace spmm::baselines
