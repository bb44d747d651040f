#include "spmm/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace spmm::elliptic {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAgm = 32;

/// AGM chain a_n, b_n, c_n for parameter m.  Returns the number of stages N
/// (c_N negligible) and fills the per-stage arrays.
int agm_chain(double m, std::vector<double>& a, std::vector<double>& c) {
    a.assign(1, 1.0);
    c.assign(1, std::sqrt(m));
    double an = 1.0;
    double bn = std::sqrt(1.0 - m);
    int n = 0;
    while (n < kMaxAgm) {
        const double cn = 0.5 * (an - bn);
        if (std::abs(cn) <= 1e-17 * an) break;
        const double a_next = 0.5 * (an + bn);
        bn = std::sqrt(an * bn);
        an = a_next;
        ++n;
        a.push_back(an);
        c.push_back(cn);
    }
    return n;
}

/// Amplitudes phi_N .. phi_0 along the chain, descending from
/// phi_N = 2^N a_N w.  phi[n] corresponds to stage n.
std::vector<double> amplitude_chain(double w, const std::vector<double>& a,
                                    const std::vector<double>& c, int n) {
    std::vector<double> phi(static_cast<std::size_t>(n) + 1);
    phi[static_cast<std::size_t>(n)] = std::ldexp(a[static_cast<std::size_t>(n)] * w, n);
    for (int j = n; j >= 1; --j) {
        const auto ju = static_cast<std::size_t>(j);
        double t = c[ju] / a[ju] * std::sin(phi[ju]);
        t = std::clamp(t, -1.0, 1.0);
        phi[ju - 1] = 0.5 * (phi[ju] + std::asin(t));
    }
    return phi;
}

double sum_c_squared(const std::vector<double>& c, int n) {
    // sum_{j=0}^{N} 2^{j-1} c_j^2
    double s = 0.0;
    for (int j = n; j >= 0; --j)
        s += std::ldexp(c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)], j - 1);
    return s;
}

void check_param(double m) {
    if (!(m >= 0.0) || !(m <= 1.0))
        throw std::domain_error("elliptic parameter m must lie in [0, 1]");
}

}  // namespace

EllipticParam::EllipticParam(double m_) : m(m_) { check_param(m); }

double complete_K(double m) {
    if (!(m >= 0.0) || !(m < 1.0))
        throw std::domain_error("complete_K requires 0 <= m < 1");
    double an = 1.0;
    double bn = std::sqrt(1.0 - m);
    for (int i = 0; i < kMaxAgm && std::abs(an - bn) > 1e-17 * an; ++i) {
        const double a_next = 0.5 * (an + bn);
        bn = std::sqrt(an * bn);
        an = a_next;
    }
    return kPi / (2.0 * an);
}

double complete_E(double m) {
    check_param(m);
    if (m == 1.0) return 1.0;
    std::vector<double> a, c;
    const int n = agm_chain(m, a, c);
    return complete_K(m) * (1.0 - sum_c_squared(c, n));
}

JacobiTriple jacobi_sn_cn_dn(double w, double m) {
    check_param(m);
    if (m == 0.0) return {std::sin(w), std::cos(w), 1.0};
    if (m == 1.0) {
        const double t = std::tanh(w);
        const double sech = 1.0 / std::cosh(w);
        return {t, sech, sech};
    }
    // Reduce by the half period 2K: sn, cn flip sign, dn is invariant.
    const double K = complete_K(m);
    const double j = std::round(w / (2.0 * K));
    const double wr = w - 2.0 * K * j;
    const double flip = (std::fmod(std::abs(j), 2.0) == 0.0) ? 1.0 : -1.0;

    std::vector<double> a, c;
    const int n = agm_chain(m, a, c);
    const std::vector<double> phi = amplitude_chain(wr, a, c, n);
    const double sn = std::sin(phi[0]);
    const double cn = std::cos(phi[0]);
    const double dn = std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
    return {flip * sn, flip * cn, dn};
}

double incomplete_E(double w, double m) {
    check_param(m);
    if (m == 0.0) return w;
    if (m == 1.0) return std::tanh(w);
    const double K = complete_K(m);
    const double j = std::round(w / (2.0 * K));
    const double wr = w - 2.0 * K * j;

    std::vector<double> a, c;
    const int n = agm_chain(m, a, c);
    const std::vector<double> phi = amplitude_chain(wr, a, c, n);
    const double csum = sum_c_squared(c, n);
    double e = wr * (1.0 - csum);
    for (int i = 1; i <= n; ++i)
        e += c[static_cast<std::size_t>(i)] * std::sin(phi[static_cast<std::size_t>(i)]);
    // Quasi-periodic continuation over half periods.
    return e + 2.0 * j * K * (1.0 - csum);
}

}  // namespace spmm::elliptic
