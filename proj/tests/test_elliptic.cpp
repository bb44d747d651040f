#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracle_values.hpp"
#include "spmm/elliptic.hpp"
#include "spmm/quadrature.hpp"

using namespace spmm::elliptic;

namespace {
constexpr double pi = std::numbers::pi;

// Independent quadrature oracles over the defining integrals.
double K_quad(double m) {
    return spmm::integrate([m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                           0.0, pi / 2, 1e-14);
}
double E_quad(double m) {
    return spmm::integrate([m](double t) { return std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); },
                           0.0, pi / 2, 1e-14);
}
}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("complete_K degenerate and domain") {
    CHECK(complete_K(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
    CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
    CHECK_THROWS_AS(complete_K(1.5), std::domain_error);
}

TEST_CASE("complete_K matches quadrature oracle") {
    CHECK(std::abs(complete_K(0.25) - K_quad(0.25)) <= 1e-12);
    CHECK(std::abs(complete_K(0.25) - oracle::K_025) <= 1e-14);
    CHECK(std::abs(complete_K(0.5) - oracle::K_05) <= 1e-14);
    CHECK(std::abs(complete_K(0.75) - oracle::K_075) <= 1e-14);
    CHECK(std::abs(complete_K(0.9) - oracle::K_09) <= 1e-14);
}

TEST_CASE("complete_E matches oracle") {
    CHECK(std::abs(complete_E(0.25) - oracle::E_025) <= 1e-14);
    CHECK(std::abs(complete_E(0.9) - oracle::E_09) <= 1e-14);
    CHECK(std::abs(complete_E(0.5) - E_quad(0.5)) <= 1e-12);
    CHECK(complete_E(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(complete_E(1.0) == doctest::Approx(1.0));
}

TEST_CASE("jacobi degenerate cases") {
    auto j0 = jacobi_sn_cn_dn(0.0, 0.37);
    CHECK(j0.sn == doctest::Approx(0.0));
    CHECK(j0.cn == doctest::Approx(1.0));
    CHECK(j0.dn == doctest::Approx(1.0));

    for (double w : {-1.3, 0.2, 2.9}) {
        auto jm0 = jacobi_sn_cn_dn(w, 0.0);
        CHECK(jm0.sn == doctest::Approx(std::sin(w)).epsilon(1e-14));
        CHECK(jm0.cn == doctest::Approx(std::cos(w)).epsilon(1e-14));
        CHECK(jm0.dn == doctest::Approx(1.0));

        auto jm1 = jacobi_sn_cn_dn(w, 1.0);
        CHECK(jm1.sn == doctest::Approx(std::tanh(w)).epsilon(1e-14));
        CHECK(jm1.cn == doctest::Approx(1.0 / std::cosh(w)).epsilon(1e-14));
        CHECK(jm1.dn == doctest::Approx(1.0 / std::cosh(w)).epsilon(1e-14));
    }
}

TEST_CASE("jacobi matches frozen high-precision values") {
    for (const auto& r : oracle::jacobi_refs) {
        const auto j = jacobi_sn_cn_dn(r.w, r.m);
        CHECK(std::abs(j.sn - r.sn) <= 1e-13);
        CHECK(std::abs(j.cn - r.cn) <= 1e-13);
        CHECK(std::abs(j.dn - r.dn) <= 1e-13);
        CHECK(std::abs(incomplete_E(r.w, r.m) - r.Earg) <= 1e-13);
    }
}

TEST_CASE("pythagorean identities on a (w,m) grid") {
    for (int i = 0; i < 100; ++i) {
        const double w = -10.0 + 20.0 * i / 99.0;
        for (int jm = 0; jm <= 8; ++jm) {
            const double m = 0.9 * jm / 8.0;
            const auto j = jacobi_sn_cn_dn(w, m);
            CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-12);
            CHECK(std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("periodicity sn(w + 4K) = sn(w)") {
    for (double m : {0.1, 0.5, 0.9}) {
        const double K = complete_K(m);
        for (double w : {-2.0, 0.3, 1.7}) {
            const auto a = jacobi_sn_cn_dn(w, m);
            const auto b = jacobi_sn_cn_dn(w + 4.0 * K, m);
            CHECK(std::abs(a.sn - b.sn) <= 1e-10);
            CHECK(std::abs(a.cn - b.cn) <= 1e-10);
            CHECK(std::abs(a.dn - b.dn) <= 1e-10);
        }
    }
}

TEST_CASE("incomplete_E degenerate and anchor values") {
    CHECK(incomplete_E(0.0, 0.6) == doctest::Approx(0.0));
    CHECK(incomplete_E(1.234, 0.0) == doctest::Approx(1.234).epsilon(1e-15));
    CHECK(incomplete_E(0.8, 1.0) == doctest::Approx(std::tanh(0.8)).epsilon(1e-14));
}

TEST_CASE("E(K(m)|m) equals the complete integral by quadrature") {
    for (int jm = 0; jm <= 8; ++jm) {
        const double m = 0.9 * jm / 8.0;
        const double Km = complete_K(m);
        CHECK(std::abs(incomplete_E(Km, m) - E_quad(m)) <= 1e-11);
    }
}

TEST_CASE("quasi-periodic continuation of E is smooth") {
    const double m = 0.75;
    const double K = complete_K(m);
    const double Ec = complete_E(m);
    // Crossing the reduction boundary w = K keeps E continuous.
    CHECK(std::abs(incomplete_E(K + 1e-9, m) - incomplete_E(K - 1e-9, m)) <= 1e-8);
    CHECK(std::abs(incomplete_E(1.1 + 2.0 * K, m) - incomplete_E(1.1, m) - 2.0 * Ec) <= 1e-12);
    CHECK(std::abs(incomplete_E(-0.4 - 4.0 * K, m) - incomplete_E(-0.4, m) + 4.0 * Ec) <= 1e-12);
}

TEST_CASE("dE/dw = dn^2 by finite differences") {
    const double h = 1e-5;
    for (double m : {0.25, 0.75, 0.9}) {
        for (double w : {-2.2, 0.4, 1.9, 3.3}) {
            const double fd = (incomplete_E(w + h, m) - incomplete_E(w - h, m)) / (2.0 * h);
            const double dn = jacobi_sn_cn_dn(w, m).dn;
            CHECK(std::abs(fd - dn * dn) / (dn * dn) <= 1e-6);
        }
    }
}

TEST_CASE("EllipticParam validates its range") {
    CHECK_THROWS_AS(EllipticParam(-0.2), std::domain_error);
    CHECK_THROWS_AS(EllipticParam(1.0001), std::domain_error);
    CHECK(EllipticParam(0.5).m == doctest::Approx(0.5));
}

}  // TEST_SUITE
