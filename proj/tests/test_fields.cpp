#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spmm/fields.hpp"

using namespace spmm;

namespace {
constexpr double pi = std::numbers::pi;

GridSpec grid_of(int K, double ds = 1.0, double dt = 0.1) { return GridSpec(K, ds, dt, 1); }
}  // namespace

TEST_SUITE("fields") {

TEST_CASE("extend_periodic shifts by full periods") {
    ThetaField f(grid_of(2), {0.0, pi}, 1);
    CHECK(extend_periodic(f, 3) == doctest::Approx(0.0 + 2 * pi));
    CHECK(extend_periodic(f, 1) == doctest::Approx(0.0));
    CHECK(extend_periodic(f, 4) == doctest::Approx(pi + 2 * pi));
    CHECK(extend_periodic(f, 0) == doctest::Approx(pi - 2 * pi));

    ThetaField g(grid_of(3), {0.1, 0.2, 0.3}, 0);
    CHECK(extend_periodic(g, -2) == doctest::Approx(0.1));
}

TEST_CASE("grid invariants enforced") {
    CHECK_THROWS_AS(GridSpec(2, 1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(GridSpec(4, -1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(GridSpec(4, 1.0, 0.0, 1), Error);
    const GridSpec g(5, 0.25, 0.1, 3);
    CHECK(g.S == doctest::Approx(1.25));
}

TEST_CASE("stencils on simple sequences") {
    std::vector<double> c = {2.0, 2.0, 2.0, 2.0};
    PeriodicView cv(c);
    CHECK(stencil(Stencil::fwd_diff, cv, 2, 0.5) == doctest::Approx(0.0));

    // Linear winding extension: a_k = k*h is annihilated by second_diff.
    const double h = 0.3;
    std::vector<double> lin = {h, 2 * h, 3 * h, 4 * h};
    PeriodicView lv(lin, 4 * h);
    for (long k = -1; k <= 6; ++k)
        CHECK(stencil(Stencil::second_diff, lv, k, h) == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> alt = {1.0, 0.0, -1.0, 0.0};
    PeriodicView av(alt);
    CHECK(stencil(Stencil::central_diff, av, 1, 1.0) == doctest::Approx(0.0));
    CHECK(stencil(Stencil::wide_avg, av, 1, 1.0) == doctest::Approx(0.5));
    CHECK(stencil(Stencil::fwd_avg, av, 1, 1.0) == doctest::Approx(0.5));
    CHECK(stencil(Stencil::bwd_avg, av, 1, 1.0) == doctest::Approx(0.5));
    CHECK(stencil(Stencil::bwd_diff, av, 1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("telescoping forward differences recover the winding") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int K = 17;
    const double h = 0.37;
    std::vector<double> v(K);
    for (double& x : v) x = dist(rng);
    ThetaField f(grid_of(K, h), v, 2);
    const auto view = f.view();
    double sum = 0.0;
    for (int k = 1; k <= K; ++k) sum += stencil(Stencil::fwd_diff, view, k, h) * h;
    CHECK(sum == doctest::Approx(4 * pi).epsilon(1e-12));
}

TEST_CASE("fwd o bwd difference equals second difference") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const int K = 11;
    const double h = 0.21;
    std::vector<double> v(K);
    for (double& x : v) x = dist(rng);
    PeriodicView view(v);
    for (long k = 1; k <= K; ++k) {
        // delta+ applied to (delta- a) via a one-element shift identity
        const double dpdm = (stencil(Stencil::bwd_diff, view, k + 1, h) -
                             stencil(Stencil::bwd_diff, view, k, h)) /
                            h;
        CHECK(dpdm == doctest::Approx(stencil(Stencil::second_diff, view, k, h)).epsilon(1e-11));
    }
}

TEST_CASE("central difference skew symmetry") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int K = 16;
    const double h = 0.5;
    std::vector<double> a(K), b(K);
    for (double& x : a) x = dist(rng);
    for (double& x : b) x = dist(rng);
    PeriodicView av(a), bv(b);
    double s = 0.0;
    for (long k = 1; k <= K; ++k)
        s += a[static_cast<std::size_t>(k - 1)] * stencil(Stencil::central_diff, bv, k, h) +
             b[static_cast<std::size_t>(k - 1)] * stencil(Stencil::central_diff, av, k, h);
    CHECK(std::abs(s) <= 1e-12 * K);
}

}  // TEST_SUITE
