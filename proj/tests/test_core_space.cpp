#include <doctest.h>

#include <cmath>

#include "monokit/gauge.hpp"
#include "monokit/pvector.hpp"
#include "monokit/rng.hpp"

using namespace monokit;

TEST_CASE("gauge construction and conjugacy") {
    for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
        const Gauge g(p);
        CHECK(g.p == p);
        CHECK(std::fabs(1.0 / g.p + 1.0 / g.q - 1.0) <= 1e-14);
        CHECK(g.gamma == p - 1.0);
    }
    CHECK_THROWS_AS(Gauge(1.0), ValidationError);
    CHECK_THROWS_AS(Gauge(0.5), ValidationError);
    CHECK_THROWS_AS(Gauge(-2.0), ValidationError);
}

TEST_CASE("gauge evaluation oracles") {
    CHECK(gauge_eval(Gauge(2.0), 5.0) == doctest::Approx(5.0));
    CHECK(gauge_eval(Gauge(3.0), 2.0) == doctest::Approx(4.0));
    CHECK(gauge_eval(Gauge(1.5), 4.0) == doctest::Approx(2.0));
    CHECK(gauge_eval(Gauge(3.0), 0.0) == 0.0);
    CHECK_THROWS_AS(gauge_eval(Gauge(2.0), -1.0), OutOfDomainError);

    CHECK(gauge_inverse(Gauge(3.0), 4.0) == doctest::Approx(2.0));
    CHECK(gauge_inverse(Gauge(2.0), 7.0) == doctest::Approx(7.0));
    CHECK(gauge_inverse(Gauge(4.0), 8.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(gauge_inverse(Gauge(2.0), -1.0), OutOfDomainError);

    // phi(phi^{-1}(r)) = r to relative 1e-12 across exponents.
    Rng rng(7);
    for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
        const Gauge g(p);
        for (int k = 0; k < 50; ++k) {
            const double r = rng.log_uniform(1e-3, 1e3);
            CHECK(gauge_eval(g, gauge_inverse(g, r)) == doctest::Approx(r).epsilon(1e-12));
        }
    }
}

TEST_CASE("p-norm oracles and PVector sides") {
    CHECK(pnorm(PVector({3.0, 4.0}, Side::primal, 2.0)) == doctest::Approx(5.0));
    CHECK(pnorm(PVector({1.0, 2.0}, Side::primal, 3.0)) ==
          doctest::Approx(std::cbrt(9.0)));
    CHECK(pnorm(PVector({0.0, 0.0, 0.0}, Side::primal, 1.5)) == 0.0);
    // Dual side uses the conjugate exponent: p=3 dual of (1,1) has q=1.5.
    CHECK(pnorm(PVector({1.0, 1.0}, Side::dual, 3.0)) ==
          doctest::Approx(std::pow(2.0, 1.0 / 1.5)));
    CHECK_THROWS_AS(PVector({1.0}, Side::primal, 1.0), ValidationError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PVector({inf}, Side::primal, 2.0), ValidationError);
}

TEST_CASE("duality map oracles") {
    const Gauge g2(2.0);
    const auto y2 = duality_map(PVector({2.0, -1.0}, Side::primal, 2.0), g2);
    CHECK(y2.coords[0] == doctest::Approx(2.0));
    CHECK(y2.coords[1] == doctest::Approx(-1.0));
    CHECK(y2.side == Side::dual);

    const Gauge g3(3.0);
    const auto y3 = duality_map(PVector({1.0, 2.0}, Side::primal, 3.0), g3);
    CHECK(y3.coords[0] == doctest::Approx(1.0));
    CHECK(y3.coords[1] == doctest::Approx(4.0));
    // Defining conditions: <y,x> = phi(||x||)*||x|| and ||y||_q = phi(||x||).
    const double nx = pnorm_raw({1.0, 2.0}, 3.0);
    CHECK(dot(y3.coords, {1.0, 2.0}) == doctest::Approx(gauge_eval(g3, nx) * nx).epsilon(1e-10));
    CHECK(pnorm_raw(y3.coords, g3.q) == doctest::Approx(gauge_eval(g3, nx)).epsilon(1e-10));

    const Gauge g15(1.5);
    const auto y15 = duality_map(PVector({4.0, 0.0}, Side::primal, 1.5), g15);
    CHECK(y15.coords[0] == doctest::Approx(2.0));
    CHECK(y15.coords[1] == 0.0);

    CHECK_THROWS_AS(duality_map(PVector({1.0}, Side::dual, 2.0), g2), ValidationError);
}

TEST_CASE("duality map inverse oracles") {
    const Gauge g3(3.0);
    const auto x = duality_map_inverse(PVector({1.0, 4.0}, Side::dual, 3.0), g3);
    CHECK(x.coords[0] == doctest::Approx(1.0));
    CHECK(x.coords[1] == doctest::Approx(2.0));
    CHECK(x.side == Side::primal);

    const Gauge g4(4.0);
    const auto x4 = duality_map_inverse(PVector({8.0, 0.0}, Side::dual, 4.0), g4);
    CHECK(x4.coords[0] == doctest::Approx(2.0));

    CHECK_THROWS_AS(duality_map_inverse(PVector({1.0}, Side::primal, 2.0), g3), ValidationError);
}

TEST_CASE("duality round trip: 1000 random x per exponent") {
    Rng rng(42);
    for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
        const Gauge g(p);
        for (int k = 0; k < 1000; ++k) {
            const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
            const Vec x = rng.uniform_vec(n, -5.0, 5.0);
            const Vec back = duality_map_inverse_raw(duality_map_raw(x, p), p);
            CHECK(linf_norm(sub(back, x)) <= 1e-9 * (1.0 + pnorm_raw(x, p)));
        }
    }
}

TEST_CASE("inverse scaling law J^{-1}(s y) = s^{q-1} J^{-1}(y)") {
    Rng rng(43);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const Gauge g(p);
        for (int k = 0; k < 200; ++k) {
            const double s = rng.uniform(0.0, 10.0);
            const Vec y = rng.uniform_vec(3, -4.0, 4.0);
            const Vec lhs = duality_map_inverse_raw(scale(s, y), p);
            const Vec rhs = scale(std::pow(s, g.q - 1.0), duality_map_inverse_raw(y, p));
            CHECK(linf_norm(sub(lhs, rhs)) <= 1e-9);
        }
    }
}

TEST_CASE("duality map monotonicity and homogeneity") {
    Rng rng(44);
    for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
        for (int k = 0; k < 200; ++k) {
            const Vec x = rng.uniform_vec(4, -3.0, 3.0);
            const Vec y = rng.uniform_vec(4, -3.0, 3.0);
            const double pairing =
                dot(sub(duality_map_raw(x, p), duality_map_raw(y, p)), sub(x, y));
            CHECK(pairing >= -1e-12);

            const double s = rng.uniform(0.0, 5.0);
            const Vec jl = duality_map_raw(scale(s, x), p);
            const Vec jr = scale(std::pow(s, p - 1.0), duality_map_raw(x, p));
            CHECK(linf_norm(sub(jl, jr)) <= 1e-10 * (1.0 + linf_norm(jr)));
        }
    }
}

TEST_CASE("duality maps vanish at zero") {
    for (double p : {1.2, 2.0, 4.0}) {
        CHECK(linf_norm(duality_map_raw(Vec{0.0, 0.0}, p)) == 0.0);
        CHECK(linf_norm(normalized_duality_raw(Vec{0.0, 0.0}, p)) == 0.0);
    }
}

TEST_CASE("normalized duality map defining conditions") {
    Rng rng(45);
    for (double p : {1.5, 2.0, 3.0}) {
        for (int k = 0; k < 100; ++k) {
            Vec x = rng.uniform_vec(3, -2.0, 2.0);
            const Vec j = normalized_duality_raw(x, p);
            const double nx = pnorm_raw(x, p);
            CHECK(dot(j, x) == doctest::Approx(nx * nx).epsilon(1e-10));
            CHECK(pnorm_raw(j, p / (p - 1.0)) == doctest::Approx(nx).epsilon(1e-10));
        }
    }
}

TEST_CASE("signed power and smoothed derivative") {
    CHECK(signed_power(3.0, -2.0) == doctest::Approx(-4.0));
    CHECK(signed_power(2.0, -7.5) == doctest::Approx(-7.5));
    CHECK(signed_power(1.5, 4.0) == doctest::Approx(2.0));
    CHECK(signed_power(4.0, 0.0) == 0.0);
    // Smoothed derivative approaches the exact one away from the kink.
    const double exact = 3.0 * 4.0;  // d/ds s^3 at s=2
    CHECK(signed_power_deriv_smoothed(4.0, 2.0, 1e-16) == doctest::Approx(exact).epsilon(1e-8));
}
