#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "spmm/errors.hpp"

namespace spmm {

/// Uniform computational grid: K points per period, mesh width delta_s,
/// time step delta_tau, M stored output levels.  S is the stored product
/// K * delta_s (the computational period length).
struct GridSpec {
    int K;
    double delta_s;
    double delta_tau;
    int M;
    double S;

    GridSpec(int K_, double delta_s_, double delta_tau_, int M_)
        : K(K_), delta_s(delta_s_), delta_tau(delta_tau_), M(M_), S(K_ * delta_s_) {
        if (K < 3) throw Error("GridSpec: K must be >= 3");
        if (!(delta_s > 0.0)) throw Error("GridSpec: delta_s must be positive");
        if (!(delta_tau > 0.0)) throw Error("GridSpec: delta_tau must be positive");
        if (M < 0) throw Error("GridSpec: M must be nonnegative");
    }
};

/// View of a K-periodic sequence with an additive shift per period:
/// a_{k+K} = a_k + period_shift.  Indices are 1-based (k = 1..K maps onto
/// the stored values); any integer k is valid.
class PeriodicView {
public:
    PeriodicView(std::span<const double> values, double period_shift = 0.0)
        : v_(values), shift_(period_shift) {}

    double operator()(long k) const {
        const long K = static_cast<long>(v_.size());
        long q = (k - 1) / K;
        long r = (k - 1) % K;
        if (r < 0) {
            r += K;
            q -= 1;
        }
        return v_[static_cast<std::size_t>(r)] + static_cast<double>(q) * shift_;
    }

    long size() const { return static_cast<long>(v_.size()); }
    double period_shift() const { return shift_; }

private:
    std::span<const double> v_;
    double shift_;
};

/// One time level of the sine-Gordon angle on the computational grid.
/// theta holds values for k = 1..K; out-of-range access goes through the
/// extension rule theta_{k+K} = theta_k + 2 pi n.
struct ThetaField {
    std::vector<double> theta;  // theta[k-1] = theta_k, k = 1..K
    long winding = 0;
    GridSpec grid;
    int time_index = 0;

    ThetaField(GridSpec g, std::vector<double> values, long n, int m = 0)
        : theta(std::move(values)), winding(n), grid(g), time_index(m) {
        if (static_cast<int>(theta.size()) != grid.K)
            throw Error("ThetaField: value count does not match grid K");
    }

    PeriodicView view() const {
        return PeriodicView(theta, 2.0 * std::numbers::pi * static_cast<double>(winding));
    }

    /// theta_k for any integer k via the winding extension.
    double at(long k) const { return view()(k); }
};

/// Winding-extended evaluation of a ThetaField at arbitrary integer index.
inline double extend_periodic(const ThetaField& field, long k) { return field.at(k); }

/// Physical-plane samples (x_k, u_k), k = 0..K, for one time level,
/// anchored at the moving base point (x_0, u_0).
struct CurveState {
    std::vector<double> x;  // size K+1
    std::vector<double> u;  // size K+1
    double base_x = 0.0;
    double base_u = 0.0;
    int time_index = 0;

    int K() const { return static_cast<int>(x.size()) - 1; }
};

/// Fixed-mesh physical solution u_k (k = 1..N) with uniform spacing delta_x.
struct UniformField {
    std::vector<double> u;  // u[k-1] = u_k, k = 1..N
    double delta_x = 0.0;
    int time_index = 0;

    int N() const { return static_cast<int>(u.size()); }
    double L() const { return N() * delta_x; }
    PeriodicView view() const { return PeriodicView(u, 0.0); }
};

enum class Stencil {
    fwd_diff,
    bwd_diff,
    fwd_avg,
    bwd_avg,
    central_diff,
    second_diff,
    wide_avg,
};

/// Finite-difference / average operator applied to a periodic sequence at
/// index k.  h is the mesh width (ignored by the pure averages).
inline double stencil(Stencil op, const PeriodicView& a, long k, double h) {
    switch (op) {
        case Stencil::fwd_diff:
            return (a(k + 1) - a(k)) / h;
        case Stencil::bwd_diff:
            return (a(k) - a(k - 1)) / h;
        case Stencil::fwd_avg:
            return 0.5 * (a(k + 1) + a(k));
        case Stencil::bwd_avg:
            return 0.5 * (a(k) + a(k - 1));
        case Stencil::central_diff:
            return (a(k + 1) - a(k - 1)) / (2.0 * h);
        case Stencil::second_diff:
            return (a(k + 1) - 2.0 * a(k) + a(k - 1)) / (h * h);
        case Stencil::wide_avg:
            return 0.25 * (a(k + 1) + 2.0 * a(k) + a(k - 1));
    }
    return 0.0;  // unreachable
}

}  // namespace spmm
