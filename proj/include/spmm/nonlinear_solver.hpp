#pragma once

#include <functional>
#include <vector>

#include "spmm/errors.hpp"

namespace spmm::solver {

struct SolverConfig {
    double tol_residual = 1e-12;  // sup-norm
    int max_iter = 50;
    enum class Jacobian { analytic, finite_difference } jacobian_mode = Jacobian::analytic;
    double fd_epsilon = 1e-7;
    enum class Damping { none, backtracking } damping = Damping::backtracking;
};

/// Square cyclic band matrix: nonzero entries A(i, (i+o) mod n) for offsets
/// o in [-lower, upper].  Rows are 0-based here.
class CyclicBandMatrix {
public:
    CyclicBandMatrix(int n, int lower, int upper)
        : n_(n), lower_(lower), upper_(upper),
          data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(lower + upper + 1), 0.0) {
        if (n < 3 || lower < 0 || upper < 0 || lower + upper + 1 > n)
            throw Error("CyclicBandMatrix: bad shape");
    }

    double& at(int i, int offset) { return data_[index(i, offset)]; }
    double at(int i, int offset) const { return data_[index(i, offset)]; }

    int n() const { return n_; }
    int lower() const { return lower_; }
    int upper() const { return upper_; }

    /// Column index of (row i, offset o) in the cyclic matrix.
    int col(int i, int offset) const {
        int j = i + offset;
        if (j < 0) j += n_;
        if (j >= n_) j -= n_;
        return j;
    }

    std::vector<double> multiply(const std::vector<double>& v) const;
    std::vector<std::vector<double>> dense() const;

private:
    std::size_t index(int i, int offset) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(lower_ + upper_ + 1) +
               static_cast<std::size_t>(offset + lower_);
    }

    int n_, lower_, upper_;
    std::vector<double> data_;
};

/// Solve the cyclic banded system A x = rhs.  Small systems (n <= 64) go
/// through a dense factorization; large ones use banded LU with partial
/// pivoting on the acyclic part plus a low-rank Woodbury correction for the
/// wrap-around entries.  Throws SingularJacobian on breakdown.
std::vector<double> solve_cyclic_banded(const CyclicBandMatrix& A, std::vector<double> rhs);

/// Dense LU solve with partial pivoting (used by tests and as the fallback).
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b);

struct SolveResult {
    std::vector<double> solution;
    int iterations = 0;
    double final_residual = 0.0;
};

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;
using BandJacobianFn = std::function<CyclicBandMatrix(const std::vector<double>&)>;

/// Damped Newton iteration on residual(z) = 0 with sup-norm termination.
/// jacobian may be empty, in which case (or when cfg.jacobian_mode is
/// finite_difference) a dense finite-difference Jacobian is built.
SolveResult solve(const ResidualFn& residual, const BandJacobianFn& jacobian,
                  std::vector<double> guess, const SolverConfig& cfg);

}  // namespace spmm::solver
