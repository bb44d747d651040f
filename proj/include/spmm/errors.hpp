#pragma once

#include <stdexcept>
#include <string>

namespace spmm {

/// Base class for all solver-pipeline errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration hit the iteration cap before reaching tolerance.
struct NewtonDivergence : Error {
    NewtonDivergence(int iterations, double final_residual)
        : Error("Newton did not converge after " + std::to_string(iterations) +
                " iterations (residual " + std::to_string(final_residual) + ")"),
          iterations(iterations),
          final_residual(final_residual) {}
    int iterations;
    double final_residual;
};

/// Linear solve failed; carries a crude conditioning estimate (min/max pivot).
struct SingularJacobian : Error {
    explicit SingularJacobian(double condition_estimate)
        : Error("singular or near-singular Jacobian (pivot ratio " +
                std::to_string(condition_estimate) + ")"),
          condition_estimate(condition_estimate) {}
    double condition_estimate;
};

/// Window length sum(cos theta) ds vanished; base-point u is undefined.
struct ZeroWindow : Error {
    using Error::Error;
};

/// Two consecutive curve samples coincide; chord angle undefined.
struct CoincidentPoints : Error {
    using Error::Error;
};

/// Consecutive chord angles differ by nearly pi; branch tracking unsafe.
struct AmbiguousBranch : Error {
    using Error::Error;
};

/// Operation requires a zero-mean periodic sequence.
struct NonZeroMean : Error {
    using Error::Error;
};

/// Bad or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

}  // namespace spmm
