#pragma once

#include <vector>

#include "spmm/fields.hpp"
#include "spmm/nonlinear_solver.hpp"

namespace spmm::sg {

/// Discrete Hamiltonian H_d(theta) = -sum_k cos(theta_k) ds.
double hamiltonian_d(const ThetaField& theta);

/// Discrete variational derivative of -cos between a value pair:
/// -(cos p - cos q)/(p - q), evaluated in the product form
/// sin((p+q)/2) * sinc((p-q)/2) which is regular at p = q.
double dvd_pair(double p, double q);

/// d/dp of dvd_pair.
double dvd_pair_dp(double p, double q);

/// Per-point discrete variational derivative sequence a_k between two
/// consecutive levels (k = 1..K).  The sequence is exactly K-periodic.
std::vector<double> discrete_variational_derivative(const ThetaField& theta_next,
                                                    const ThetaField& theta_curr);

enum class Scheme {
    average_difference,  // forward difference left side, forward average right side
    central_difference,  // skew-symmetric central difference left side
};

/// One implicit step of the conservative SG integrator.  delta_tau may be
/// negative (time-reversed step, used by the adjoint symmetry tests).
/// `guess` seeds the Newton iteration; pass theta_curr.theta for a cold start.
ThetaField step_scheme(Scheme scheme, const ThetaField& theta_curr, double delta_tau,
                       const std::vector<double>& guess, const solver::SolverConfig& cfg);

/// Average-difference scheme step (the proposed integrator).
ThetaField step_average_difference(const ThetaField& theta_curr, const solver::SolverConfig& cfg);

/// Central-difference comparison scheme step.
ThetaField step_central_difference(const ThetaField& theta_curr, const solver::SolverConfig& cfg);

/// Stateful stepper: keeps the previous level so Newton starts from the
/// linear extrapolation 2 theta^m - theta^{m-1}.
class Stepper {
public:
    Stepper(Scheme scheme, solver::SolverConfig cfg) : scheme_(scheme), cfg_(cfg) {}

    ThetaField step(const ThetaField& theta_curr);
    void reset() { prev_.clear(); }

private:
    Scheme scheme_;
    solver::SolverConfig cfg_;
    std::vector<double> prev_;
};

}  // namespace spmm::sg
