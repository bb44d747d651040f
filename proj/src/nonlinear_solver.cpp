#include "spmm/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace spmm::solver {
namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Banded LU with partial pivoting on the acyclic band part.
/// Row i stores columns [i-kl, i+kl+ku]; pivoting fills kl extra
/// superdiagonals.
class BandLU {
public:
    BandLU(const CyclicBandMatrix& A)
        : n_(A.n()), kl_(A.lower()), ku_(A.upper()), width_(2 * A.lower() + A.upper() + 1),
          w_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(width_), 0.0),
          piv_(static_cast<std::size_t>(n_)) {
        for (int i = 0; i < n_; ++i)
            for (int o = -kl_; o <= ku_; ++o) {
                const int j = i + o;
                if (j >= 0 && j < n_) ref(i, j) = A.at(i, o);
            }
        factor();
    }

    void solve_in_place(std::vector<double>& b) const {
        for (int k = 0; k < n_; ++k) {
            const int r = piv_[static_cast<std::size_t>(k)];
            if (r != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(r)]);
            const int iend = std::min(n_ - 1, k + kl_);
            for (int i = k + 1; i <= iend; ++i)
                b[static_cast<std::size_t>(i)] -= ref(i, k) * b[static_cast<std::size_t>(k)];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            const int jend = std::min(n_ - 1, i + kl_ + ku_);
            double s = b[static_cast<std::size_t>(i)];
            for (int j = i + 1; j <= jend; ++j) s -= ref(i, j) * b[static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] = s / ref(i, i);
        }
    }

    double pivot_ratio() const { return pivot_ratio_; }

private:
    double& ref(int i, int j) {
        return w_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                  static_cast<std::size_t>(j - i + kl_)];
    }
    double ref(int i, int j) const {
        return w_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                  static_cast<std::size_t>(j - i + kl_)];
    }

    void factor() {
        double pmin = std::numeric_limits<double>::infinity();
        double pmax = 0.0;
        for (int k = 0; k < n_; ++k) {
            int r = k;
            double best = std::abs(ref(k, k));
            const int rend = std::min(n_ - 1, k + kl_);
            for (int i = k + 1; i <= rend; ++i)
                if (std::abs(ref(i, k)) > best) {
                    best = std::abs(ref(i, k));
                    r = i;
                }
            piv_[static_cast<std::size_t>(k)] = r;
            if (r != k) {
                const int jend = std::min(n_ - 1, k + kl_ + ku_);
                for (int j = k; j <= jend; ++j) std::swap(ref(k, j), ref(r, j));
            }
            const double p = ref(k, k);
            if (std::abs(p) < 1e-300) throw SingularJacobian(0.0);
            pmin = std::min(pmin, std::abs(p));
            pmax = std::max(pmax, std::abs(p));
            const int iend = std::min(n_ - 1, k + kl_);
            const int jend = std::min(n_ - 1, k + kl_ + ku_);
            for (int i = k + 1; i <= iend; ++i) {
                const double m = ref(i, k) / p;
                ref(i, k) = m;
                for (int j = k + 1; j <= jend; ++j) ref(i, j) -= m * ref(k, j);
            }
        }
        pivot_ratio_ = pmin / pmax;
    }

    int n_, kl_, ku_, width_;
    std::vector<double> w_;
    std::vector<int> piv_;
    double pivot_ratio_ = 0.0;
};

}  // namespace

std::vector<double> CyclicBandMatrix::multiply(const std::vector<double>& v) const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int o = -lower_; o <= upper_; ++o)
            s += at(i, o) * v[static_cast<std::size_t>(col(i, o))];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

std::vector<std::vector<double>> CyclicBandMatrix::dense() const {
    std::vector<std::vector<double>> D(static_cast<std::size_t>(n_),
                                       std::vector<double>(static_cast<std::size_t>(n_), 0.0));
    for (int i = 0; i < n_; ++i)
        for (int o = -lower_; o <= upper_; ++o)
            D[static_cast<std::size_t>(i)][static_cast<std::size_t>(col(i, o))] += at(i, o);
    return D;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    std::vector<int> piv(static_cast<std::size_t>(n));
    double pmin = std::numeric_limits<double>::infinity();
    double pmax = 0.0;
    for (int k = 0; k < n; ++k) {
        int r = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) >
                std::abs(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]))
                r = i;
        piv[static_cast<std::size_t>(k)] = r;
        if (r != k) std::swap(A[static_cast<std::size_t>(k)], A[static_cast<std::size_t>(r)]);
        const double p = A[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (std::abs(p) < 1e-300) throw SingularJacobian(0.0);
        pmin = std::min(pmin, std::abs(p));
        pmax = std::max(pmax, std::abs(p));
        if (r != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(r)]);
        for (int i = k + 1; i < n; ++i) {
            const double m = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / p;
            if (m == 0.0) continue;
            for (int j = k; j < n; ++j)
                A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    m * A[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] -= m * b[static_cast<std::size_t>(k)];
        }
    }
    (void)pmin;
    (void)pmax;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            s -= A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    return x;
}

std::vector<double> solve_cyclic_banded(const CyclicBandMatrix& A, std::vector<double> rhs) {
    const int n = A.n();
    if (static_cast<int>(rhs.size()) != n) throw Error("solve_cyclic_banded: size mismatch");

    if (n <= 64) return solve_dense(A.dense(), std::move(rhs));

    // Wrap-around entries grouped by column.
    std::vector<int> cols;
    std::vector<std::vector<std::pair<int, double>>> wrap_by_col;
    for (int i = 0; i < n; ++i)
        for (int o = -A.lower(); o <= A.upper(); ++o) {
            const int j = i + o;
            if (j >= 0 && j < n) continue;
            const double val = A.at(i, o);
            if (val == 0.0) continue;
            const int jc = A.col(i, o);
            auto it = std::find(cols.begin(), cols.end(), jc);
            std::size_t idx;
            if (it == cols.end()) {
                cols.push_back(jc);
                wrap_by_col.emplace_back();
                idx = cols.size() - 1;
            } else {
                idx = static_cast<std::size_t>(it - cols.begin());
            }
            wrap_by_col[idx].emplace_back(i, val);
        }
    const int r = static_cast<int>(cols.size());

    BandLU lu(A);
    std::vector<double> y0 = rhs;
    lu.solve_in_place(y0);
    if (r == 0) return y0;

    // Woodbury: A = B + U V^T with V = unit columns at `cols`.
    std::vector<std::vector<double>> Y(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) {
        std::vector<double> uc(static_cast<std::size_t>(n), 0.0);
        for (const auto& [row, val] : wrap_by_col[static_cast<std::size_t>(c)])
            uc[static_cast<std::size_t>(row)] = val;
        lu.solve_in_place(uc);
        Y[static_cast<std::size_t>(c)] = std::move(uc);
    }
    std::vector<std::vector<double>> C(static_cast<std::size_t>(r),
                                       std::vector<double>(static_cast<std::size_t>(r), 0.0));
    std::vector<double> g(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) {
        const int ja = cols[static_cast<std::size_t>(a)];
        for (int b = 0; b < r; ++b)
            C[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                (a == b ? 1.0 : 0.0) + Y[static_cast<std::size_t>(b)][static_cast<std::size_t>(ja)];
        g[static_cast<std::size_t>(a)] = y0[static_cast<std::size_t>(ja)];
    }
    const std::vector<double> alpha = solve_dense(std::move(C), std::move(g));
    for (int c = 0; c < r; ++c)
        for (int i = 0; i < n; ++i)
            y0[static_cast<std::size_t>(i)] -=
                alpha[static_cast<std::size_t>(c)] * Y[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];

    // Sanity: the correction must reproduce the cyclic system.
    const std::vector<double> Ax = A.multiply(y0);
    double resid = 0.0, scale = sup_norm(rhs) + 1e-300;
    for (int i = 0; i < n; ++i)
        resid = std::max(resid, std::abs(Ax[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]));
    if (!(resid <= 1e-8 * std::max(scale, sup_norm(y0)))) throw SingularJacobian(lu.pivot_ratio());
    return y0;
}

SolveResult solve(const ResidualFn& residual, const BandJacobianFn& jacobian,
                  std::vector<double> guess, const SolverConfig& cfg) {
    const int n = static_cast<int>(guess.size());
    std::vector<double> z = std::move(guess);
    std::vector<double> F = residual(z);
    double r = sup_norm(F);

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (r <= cfg.tol_residual) return {std::move(z), iter, r};

        std::vector<double> dz;
        const bool use_analytic =
            jacobian && cfg.jacobian_mode == SolverConfig::Jacobian::analytic;
        std::vector<double> negF(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) negF[i] = -F[i];
        if (use_analytic) {
            dz = solve_cyclic_banded(jacobian(z), std::move(negF));
        } else {
            std::vector<std::vector<double>> J(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(n)));
            for (int j = 0; j < n; ++j) {
                const double eps = cfg.fd_epsilon * (1.0 + std::abs(z[static_cast<std::size_t>(j)]));
                std::vector<double> zp = z;
                zp[static_cast<std::size_t>(j)] += eps;
                const std::vector<double> Fp = residual(zp);
                for (int i = 0; i < n; ++i)
                    J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        (Fp[static_cast<std::size_t>(i)] - F[static_cast<std::size_t>(i)]) / eps;
            }
            dz = solve_dense(std::move(J), std::move(negF));
        }

        double lambda = 1.0;
        std::vector<double> z_try(z.size());
        std::vector<double> F_try;
        double r_try = 0.0;
        const int max_halvings = cfg.damping == SolverConfig::Damping::backtracking ? 8 : 0;
        for (int h = 0;; ++h) {
            for (std::size_t i = 0; i < z.size(); ++i)
                z_try[i] = z[i] + lambda * dz[i];
            F_try = residual(z_try);
            r_try = sup_norm(F_try);
            if (r_try < (1.0 - 0.25 * lambda) * r || h >= max_halvings) break;
            lambda *= 0.5;
        }
        z = std::move(z_try);
        F = std::move(F_try);
        r = r_try;
    }
    if (r <= cfg.tol_residual) return {std::move(z), cfg.max_iter, r};
    throw NewtonDivergence(cfg.max_iter, r);
}

}  // namespace spmm::solver
