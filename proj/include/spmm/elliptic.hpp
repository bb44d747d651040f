#pragma once

namespace spmm::elliptic {

/// Parameter wrapper for Jacobi functions / elliptic integrals, parameter
/// convention (m, not the modulus k): valid range [0, 1].
struct EllipticParam {
    double m;
    explicit EllipticParam(double m_);
};

/// Complete elliptic integral of the first kind K(m), AGM iteration.
/// Domain: 0 <= m < 1 (throws std::domain_error otherwise).
double complete_K(double m);

/// Complete elliptic integral of the second kind E(m).  Domain: 0 <= m <= 1.
double complete_E(double m);

struct JacobiTriple {
    double sn, cn, dn;
};

/// Jacobi elliptic functions sn, cn, dn at elliptic argument w, parameter m,
/// by descending Landen / AGM recursion.  Domain: 0 <= m <= 1.
JacobiTriple jacobi_sn_cn_dn(double w, double m);

/// Incomplete elliptic integral of the second kind in the *argument*
/// convention: E(w|m) = int_0^w dn^2(t|m) dt.  In particular E(w|m) is smooth
/// in w across the quarter-period, and E(w + 2K(m)|m) = E(w|m) + 2 E(m).
double incomplete_E(double w, double m);

}  // namespace spmm::elliptic
