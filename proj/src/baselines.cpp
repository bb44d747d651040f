#include "spmm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace spmm::baselines {
namespace {

void check_zero_mean(std::span<const double> v, const char* who) {
    double sum = 0.0, amax = 0.0;
    for (double x : v) {
        sum += x;
        amax = std::max(amax, std::abs(x));
    }
    if (std::abs(sum) > 1e-10 * static_cast<double>(v.size()) * std::max(amax, 1e-300))
        throw NonZeroMean(std::string(who) + ": input sequence has nonzero mean");
}

struct UniformSystem {
    UniformScheme scheme;
    const UniformField& curr;
    double delta_t;

    std::vector<double> residual(const std::vector<double>& z) const {
        const int N = curr.N();
        const double dx = curr.delta_x;
        const double dt = delta_t;
        std::vector<double> w(static_cast<std::size_t>(N)), D(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) {
            w[static_cast<std::size_t>(k)] =
                0.5 * (z[static_cast<std::size_t>(k)] + curr.u[static_cast<std::size_t>(k)]);
            D[static_cast<std::size_t>(k)] =
                (z[static_cast<std::size_t>(k)] - curr.u[static_cast<std::size_t>(k)]) / dt;
        }
        auto at = [N](const std::vector<double>& v, int k) {
            return v[static_cast<std::size_t>(((k % N) + N) % N)];
        };
        std::vector<double> F(static_cast<std::size_t>(N));
        if (scheme == UniformScheme::norm_preserving) {
            auto G = [&](int k) {
                const double wm = at(w, k - 1), wk = at(w, k), wp = at(w, k + 1);
                return wk * (wp * wp - wm * wm) / (8.0 * dx);
            };
            for (int k = 0; k < N; ++k)
                F[static_cast<std::size_t>(k)] =
                    (at(D, k + 1) - at(D, k)) / dx - 0.5 * (at(w, k + 1) + at(w, k)) -
                    (G(k + 1) - G(k)) / dx;
        } else {
            for (int k = 0; k < N; ++k) {
                const double wm = at(w, k - 1), wk = at(w, k), wp = at(w, k + 1);
                F[static_cast<std::size_t>(k)] =
                    (at(D, k + 1) - at(D, k - 1)) / (2.0 * dx) - 0.25 * (wp + 2.0 * wk + wm) -
                    (wp * wp * wp - 2.0 * wk * wk * wk + wm * wm * wm) / (6.0 * dx * dx);
            }
        }
        return F;
    }

    solver::CyclicBandMatrix jacobian(const std::vector<double>& z) const {
        const int N = curr.N();
        const double dx = curr.delta_x;
        const double dt = delta_t;
        std::vector<double> w(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k)
            w[static_cast<std::size_t>(k)] =
                0.5 * (z[static_cast<std::size_t>(k)] + curr.u[static_cast<std::size_t>(k)]);
        auto at = [N](const std::vector<double>& v, int k) {
            return v[static_cast<std::size_t>(((k % N) + N) % N)];
        };
        if (scheme == UniformScheme::norm_preserving) {
            solver::CyclicBandMatrix J(N, 1, 2);
            const double dx2 = dx * dx;
            for (int k = 0; k < N; ++k) {
                const double wm = at(w, k - 1), wk = at(w, k), wp = at(w, k + 1),
                             wpp = at(w, k + 2);
                J.at(k, -1) = -wk * wm / (8.0 * dx2);
                J.at(k, 0) = -1.0 / (dx * dt) - 0.25 + wk * wp / (8.0 * dx2) +
                             (wp * wp - wm * wm) / (16.0 * dx2);
                J.at(k, 1) = 1.0 / (dx * dt) - 0.25 + wk * wp / (8.0 * dx2) -
                             (wpp * wpp - wk * wk) / (16.0 * dx2);
                J.at(k, 2) = -wp * wpp / (8.0 * dx2);
            }
            return J;
        }
        solver::CyclicBandMatrix J(N, 1, 1);
        const double dx2 = dx * dx;
        for (int k = 0; k < N; ++k) {
            const double wm = at(w, k - 1), wk = at(w, k), wp = at(w, k + 1);
            J.at(k, -1) = -0.5 / (dx * dt) - 0.125 - wm * wm / (4.0 * dx2);
            J.at(k, 0) = -0.25 + wk * wk / (2.0 * dx2);
            J.at(k, 1) = 0.5 / (dx * dt) - 0.125 - wp * wp / (4.0 * dx2);
        }
        return J;
    }
};

}  // namespace

std::vector<double> discrete_antiderivative(std::span<const double> v, double delta_x) {
    check_zero_mean(v, "discrete_antiderivative");
    const std::size_t N = v.size();
    std::vector<double> tilde(N);
    tilde[0] = delta_x * 0.5 * (v[N - 1] + v[0]);
    double run = 0.0;  // sum of v_1 .. v_{k-1}
    for (std::size_t k = 1; k < N; ++k) {
        run += v[k - 1];
        tilde[k] = delta_x * (0.5 * v[N - 1] + run + 0.5 * v[k]);
    }
    double mean = 0.0;
    for (double t : tilde) mean += t;
    mean /= static_cast<double>(N);
    for (double& t : tilde) t -= mean;
    return tilde;
}

double norm_d(const UniformField& u) {
    double s = 0.0;
    for (double x : u.u) s += x * x;
    return 0.5 * s * u.delta_x;
}

double energy_d(const UniformField& u) {
    const std::vector<double> anti = discrete_antiderivative(u.u, u.delta_x);
    double s = 0.0;
    for (std::size_t k = 0; k < u.u.size(); ++k) {
        const double uk = u.u[k];
        s += (uk * uk * uk * uk) / 24.0 - 0.5 * anti[k] * anti[k];
    }
    return s * u.delta_x;
}

UniformField step_uniform(UniformScheme scheme, const UniformField& u_curr, double delta_t,
                          const std::vector<double>& guess, const solver::SolverConfig& cfg) {
    UniformSystem sys{scheme, u_curr, delta_t};
    auto res = solver::solve([&sys](const std::vector<double>& z) { return sys.residual(z); },
                             [&sys](const std::vector<double>& z) { return sys.jacobian(z); },
                             guess, cfg);
    UniformField next;
    next.u = std::move(res.solution);
    next.delta_x = u_curr.delta_x;
    next.time_index = u_curr.time_index + 1;
    return next;
}

UniformField step_norm_preserving(const UniformField& u_curr, double delta_t,
                                  const solver::SolverConfig& cfg) {
    return step_uniform(UniformScheme::norm_preserving, u_curr, delta_t, u_curr.u, cfg);
}

UniformField step_multisymplectic(const UniformField& u_curr, double delta_t,
                                  const solver::SolverConfig& cfg) {
    return step_uniform(UniformScheme::multisymplectic, u_curr, delta_t, u_curr.u, cfg);
}

UniformField UniformStepper::step(const UniformField& u_curr) {
    std::vector<double> guess;
    if (prev_.size() == u_curr.u.size()) {
        guess.resize(prev_.size());
        for (std::size_t i = 0; i < prev_.size(); ++i)
            guess[i] = 2.0 * u_curr.u[i] - prev_[i];
    } else {
        guess = u_curr.u;
    }
    UniformField next = step_uniform(scheme_, u_curr, delta_t_, guess, cfg_);
    prev_ = u_curr.u;
    return next;
}

}  // namespace spmm::baselines
