#pragma once

#include <functional>

namespace spmm {

/// Adaptive Simpson integration of f over [a, b] to the given absolute
/// tolerance (plus a matching relative term).  Throws QuadratureError if the
/// recursion depth limit is hit before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

}  // namespace spmm
