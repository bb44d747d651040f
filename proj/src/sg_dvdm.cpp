#include "spmm/sg_dvdm.hpp"

#include <cmath>

namespace spmm::sg {
namespace {

// sin(h)/h and its derivative, stable through h = 0.
double sinc(double h) {
    if (std::abs(h) < 1e-4) {
        const double h2 = h * h;
        return 1.0 - h2 / 6.0 * (1.0 - h2 / 20.0);
    }
    return std::sin(h) / h;
}

double dsinc(double h) {
    if (std::abs(h) < 1e-4) {
        const double h2 = h * h;
        return h * (-1.0 / 3.0 + h2 / 30.0);
    }
    return (std::cos(h) - std::sin(h) / h) / h;
}

struct SchemeSystem {
    Scheme scheme;
    const ThetaField& curr;
    double delta_tau;

    // Unknown z = theta^{m+1} (K entries).  a_k = dvd(z_k, theta_k) is
    // K-periodic because the 2 pi n winding shift cancels in both slots.
    std::vector<double> residual(const std::vector<double>& z) const {
        const int K = curr.grid.K;
        const double ds = curr.grid.delta_s;
        const double dsdt = ds * delta_tau;
        std::vector<double> a(static_cast<std::size_t>(K));
        std::vector<double> d(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) {
            d[static_cast<std::size_t>(k)] = z[static_cast<std::size_t>(k)] - curr.theta[static_cast<std::size_t>(k)];
            a[static_cast<std::size_t>(k)] =
                dvd_pair(z[static_cast<std::size_t>(k)], curr.theta[static_cast<std::size_t>(k)]);
        }
        std::vector<double> F(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) {
            const int kp = (k + 1) % K;
            if (scheme == Scheme::average_difference) {
                F[static_cast<std::size_t>(k)] =
                    (d[static_cast<std::size_t>(kp)] - d[static_cast<std::size_t>(k)]) / dsdt -
                    0.5 * (a[static_cast<std::size_t>(kp)] + a[static_cast<std::size_t>(k)]);
            } else {
                const int km = (k + K - 1) % K;
                F[static_cast<std::size_t>(k)] =
                    (d[static_cast<std::size_t>(kp)] - d[static_cast<std::size_t>(km)]) / (2.0 * dsdt) -
                    a[static_cast<std::size_t>(k)];
            }
        }
        return F;
    }

    solver::CyclicBandMatrix jacobian(const std::vector<double>& z) const {
        const int K = curr.grid.K;
        const double inv = 1.0 / (curr.grid.delta_s * delta_tau);
        std::vector<double> ap(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k)
            ap[static_cast<std::size_t>(k)] =
                dvd_pair_dp(z[static_cast<std::size_t>(k)], curr.theta[static_cast<std::size_t>(k)]);
        if (scheme == Scheme::average_difference) {
            solver::CyclicBandMatrix J(K, 0, 1);
            for (int k = 0; k < K; ++k) {
                const int kp = (k + 1) % K;
                J.at(k, 0) = -inv - 0.5 * ap[static_cast<std::size_t>(k)];
                J.at(k, 1) = inv - 0.5 * ap[static_cast<std::size_t>(kp)];
            }
            return J;
        }
        solver::CyclicBandMatrix J(K, 1, 1);
        for (int k = 0; k < K; ++k) {
            J.at(k, -1) = -0.5 * inv;
            J.at(k, 0) = -ap[static_cast<std::size_t>(k)];
            J.at(k, 1) = 0.5 * inv;
        }
        return J;
    }
};

}  // namespace

double hamiltonian_d(const ThetaField& theta) {
    double s = 0.0;
    for (double t : theta.theta) s -= std::cos(t);
    return s * theta.grid.delta_s;
}

double dvd_pair(double p, double q) {
    return std::sin(0.5 * (p + q)) * sinc(0.5 * (p - q));
}

double dvd_pair_dp(double p, double q) {
    const double mid = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    return 0.5 * std::cos(mid) * sinc(half) + 0.5 * std::sin(mid) * dsinc(half);
}

std::vector<double> discrete_variational_derivative(const ThetaField& theta_next,
                                                    const ThetaField& theta_curr) {
    if (theta_next.grid.K != theta_curr.grid.K || theta_next.winding != theta_curr.winding)
        throw Error("discrete_variational_derivative: fields must share grid and winding");
    const int K = theta_curr.grid.K;
    std::vector<double> a(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        a[static_cast<std::size_t>(k)] = dvd_pair(theta_next.theta[static_cast<std::size_t>(k)],
                                                  theta_curr.theta[static_cast<std::size_t>(k)]);
    return a;
}

ThetaField step_scheme(Scheme scheme, const ThetaField& theta_curr, double delta_tau,
                       const std::vector<double>& guess, const solver::SolverConfig& cfg) {
    SchemeSystem sys{scheme, theta_curr, delta_tau};
    auto res = solver::solve([&sys](const std::vector<double>& z) { return sys.residual(z); },
                             [&sys](const std::vector<double>& z) { return sys.jacobian(z); },
                             guess, cfg);
    return ThetaField(theta_curr.grid, std::move(res.solution), theta_curr.winding,
                      theta_curr.time_index + (delta_tau > 0 ? 1 : -1));
}

ThetaField step_average_difference(const ThetaField& theta_curr, const solver::SolverConfig& cfg) {
    return step_scheme(Scheme::average_difference, theta_curr, theta_curr.grid.delta_tau,
                       theta_curr.theta, cfg);
}

ThetaField step_central_difference(const ThetaField& theta_curr, const solver::SolverConfig& cfg) {
    return step_scheme(Scheme::central_difference, theta_curr, theta_curr.grid.delta_tau,
                       theta_curr.theta, cfg);
}

ThetaField Stepper::step(const ThetaField& theta_curr) {
    std::vector<double> guess;
    if (prev_.size() == theta_curr.theta.size()) {
        guess.resize(prev_.size());
        for (std::size_t i = 0; i < prev_.size(); ++i)
            guess[i] = 2.0 * theta_curr.theta[i] - prev_[i];
    } else {
        guess = theta_curr.theta;
    }
    ThetaField next =
        step_scheme(scheme_, theta_curr, theta_curr.grid.delta_tau, guess, cfg_);
    prev_ = theta_curr.theta;
    return next;
}

}  // namespace spmm::sg
