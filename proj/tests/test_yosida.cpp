#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "monokit/operators.hpp"
#include "monokit/rng.hpp"
#include "monokit/yosida.hpp"

using namespace monokit;

namespace {
const double kLambdas[] = {1e-4, 1e-2, 1.0, 10.0};
}

TEST_CASE("soft-threshold resolvent oracle (A = subdifferential of |.|, p = 2)") {
    const auto a = make_abs_subdiff(1);
    const Gauge g(2.0);
    // prox_{lambda |.|}(x) = sign(x) max(|x| - lambda, 0)
    for (double lam : kLambdas) {
        for (double x : {-3.0, -0.4, 0.0, 0.7, 3.0}) {
            const auto r = resolvent(*a, g, lam, Vec{x});
            const double prox = std::copysign(std::max(std::fabs(x) - lam, 0.0), x);
            CHECK(std::fabs(r.x_lambda[0] - prox) <= 1e-9);
            CHECK(std::fabs(r.a_lambda[0] - (x - prox) / lam) <= 1e-9);
        }
    }
    // Named example: lambda = 1, x = 3 -> x_lambda = 2, A_lambda = 1.
    const auto r = resolvent(*a, g, 1.0, Vec{3.0});
    CHECK(r.x_lambda[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.a_lambda[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cube resolvent oracle (A = x^3, p = 4): x_lambda = x / (1 + lambda^{1/3})") {
    const auto a = make_power_graph(1, 3.0);
    const Gauge g(4.0);
    for (double lam : kLambdas) {
        for (double x : {-2.0, -0.3, 0.0, 1.0, 5.0}) {
            const auto r = resolvent(*a, g, lam, Vec{x});
            const double xl = x / (1.0 + std::cbrt(lam));
            CHECK(std::fabs(r.x_lambda[0] - xl) <= 1e-9);
            CHECK(std::fabs(r.a_lambda[0] - xl * xl * xl) <= 1e-9);
        }
    }
    const auto r = resolvent(*a, g, 1.0, Vec{1.0});
    CHECK(r.x_lambda[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.a_lambda[0] == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("linear resolvent oracle (A = aI, p = 2): A_lambda x = a x / (1 + a lambda)") {
    const double aa = 1.0;
    const auto a = make_scaled_identity(2, aa);
    const Gauge g(2.0);
    for (double lam : kLambdas) {
        const Vec x = {2.0, 0.0};
        const auto r = resolvent(*a, g, lam, x);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::fabs(r.a_lambda[i] - aa * x[i] / (1.0 + aa * lam)) <= 1e-9);
            CHECK(std::fabs(r.x_lambda[i] - x[i] / (1.0 + aa * lam)) <= 1e-9);
        }
    }
}

TEST_CASE("normal-cone resolvent oracle (A = N_{[-1,1]}, p = 2)") {
    const auto a = make_box_normal_cone(1, -1.0, 1.0);
    const Gauge g(2.0);
    // Projection onto [-1,1]; A_lambda = (x - proj) / lambda.
    for (double lam : kLambdas) {
        for (double x : {-2.5, -0.5, 0.0, 0.5, 3.0}) {
            const auto r = resolvent(*a, g, lam, Vec{x});
            const double proj = std::clamp(x, -1.0, 1.0);
            CHECK(std::fabs(r.x_lambda[0] - proj) <= 1e-9);
            CHECK(std::fabs(r.a_lambda[0] - (x - proj) / lam) <= 1e-9);
        }
    }
    const auto r = resolvent(*a, g, 0.25, Vec{2.0});
    CHECK(r.x_lambda[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.a_lambda[0] == doctest::Approx(4.0).epsilon(1e-12));
    // Blow-up off the domain: A_lambda(3) = 2/lambda >= 1e6 at lambda = 1e-6.
    const auto rb = resolvent(*a, g, 1e-6, Vec{3.0});
    CHECK(rb.a_lambda[0] >= 1e6);
}

TEST_CASE("zero operator: J_lambda = I, A_lambda = 0") {
    const auto a = make_zero(3);
    const Gauge g(3.0);
    const Vec x = {1.0, -2.0, 0.5};
    const auto r = resolvent(*a, g, 0.37, x);
    CHECK(linf_norm(sub(r.x_lambda, x)) <= 1e-12);
    CHECK(linf_norm(r.a_lambda) <= 1e-12);
}

TEST_CASE("A_lambda(0) = 0 whenever 0 in A(0)") {
    const Gauge g(3.0);
    for (const auto& a : {make_power_graph(2, 2.0), make_abs_subdiff(2),
                          make_box_normal_cone(2, -1.0, 1.0)}) {
        const auto r = resolvent(*a, g, 0.5, Vec{0.0, 0.0});
        CHECK(linf_norm(r.a_lambda) <= 1e-12);
    }
}

TEST_CASE("closed-form consistency: LinearPSD at p=2 matches M (I + lambda M)^{-1} x") {
    Eigen::MatrixXd m(2, 2);
    m << 2.0, -1.0, -1.0, 2.0;
    const auto a = make_linear(m);
    const Gauge g(2.0);
    Rng rng(42);
    for (int k = 0; k < 50; ++k) {
        const double lam = rng.log_uniform(1e-4, 10.0);
        const Vec x = rng.uniform_vec(2, -3.0, 3.0);
        const auto r = resolvent(*a, g, lam, x);
        Eigen::Vector2d xv(x[0], x[1]);
        Eigen::Vector2d ref =
            m * (Eigen::MatrixXd::Identity(2, 2) + lam * m).partialPivLu().solve(xv);
        CHECK(std::fabs(r.a_lambda[0] - ref(0)) <= 1e-9);
        CHECK(std::fabs(r.a_lambda[1] - ref(1)) <= 1e-9);
    }
}

TEST_CASE("splitting identity on 1e4 random draws") {
    const std::vector<std::pair<OpPtr, double>> cases = {
        {make_power_graph(2, 3.0), 4.0},  // gauge-locked cube
        {make_power_graph(3, 2.0), 3.0},
        {make_abs_subdiff(2), 2.0},
        {make_box_normal_cone(2, -1.0, 1.0), 2.0},
        {make_scaled_identity(2, 2.0), 2.0},
        {make_plaplacian_1d(3, 0.5, 3.0), 3.0},
        {make_power_graph(1, 2.0), 1.5},  // mismatched gauge exercises q > 2
        {make_remark12(2.0), 3.0},
    };
    Rng rng(42);
    int draws = 0;
    int failures = 0;
    while (draws < 10000) {
        for (const auto& [op, p] : cases) {
            const Gauge g(p);
            const double lam = rng.log_uniform(1e-4, 10.0);
            Vec x = rng.uniform_vec(static_cast<std::size_t>(op->dim()), -3.0, 3.0);
            const auto r = resolvent(*op, g, lam, x);
            if (splitting_defect(g, x, r) > 1e-9 * (1.0 + pnorm_raw(x, p))) ++failures;
            ++draws;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("a_lambda lies on the graph of A") {
    Rng rng(43);
    const std::vector<std::pair<OpPtr, double>> cases = {
        {make_power_graph(2, 2.0), 3.0},
        {make_abs_subdiff(2), 2.0},
        {make_plaplacian_1d(3, 0.5, 3.0), 3.0},
    };
    for (const auto& [op, p] : cases) {
        const Gauge g(p);
        for (int k = 0; k < 100; ++k) {
            const double lam = rng.log_uniform(1e-3, 10.0);
            Vec x = rng.uniform_vec(static_cast<std::size_t>(op->dim()), -2.0, 2.0);
            const auto r = resolvent(*op, g, lam, x);
            CHECK(op->graph_distance(r.x_lambda, r.a_lambda) <= 1e-8);
        }
    }
}

TEST_CASE("monotonicity of the Yosida approximant") {
    const auto a = make_power_graph(2, 3.0);
    const Gauge g(4.0);
    Rng rng(44);
    for (int k = 0; k < 200; ++k) {
        const double lam = rng.log_uniform(1e-2, 10.0);
        const Vec x = rng.uniform_vec(2, -2.0, 2.0);
        const Vec y = rng.uniform_vec(2, -2.0, 2.0);
        const auto rx = resolvent(*a, g, lam, x);
        const auto ry = resolvent(*a, g, lam, y);
        CHECK(dot(sub(rx.a_lambda, ry.a_lambda), sub(x, y)) >= -1e-12);
    }
}

TEST_CASE("A equals its Yosida approximant only for A = 0") {
    const Gauge g(2.0);
    const double lam = 0.5;
    // Zero operator: A_lambda = A = 0 everywhere.
    const auto z = make_zero(1);
    CHECK(std::fabs(resolvent(*z, g, lam, Vec{1.3}).a_lambda[0]) <= 1e-12);
    // Nonzero catalog members differ from their approximants somewhere:
    // A_lambda(2) = 2/(1+lambda) != 2 for the identity, and the soft
    // threshold flattens |x| <= lambda to x/lambda != sign(x).
    const auto id = resolvent(*make_scaled_identity(1, 1.0), g, lam, Vec{2.0});
    CHECK(std::fabs(id.a_lambda[0] - 2.0) > 1e-6);
    const auto ab = resolvent(*make_abs_subdiff(1), g, lam, Vec{0.2});
    CHECK(std::fabs(ab.a_lambda[0] - 1.0) > 1e-6);
}

TEST_CASE("validation errors") {
    const auto a = make_power_graph(1, 2.0);
    const Gauge g(3.0);
    CHECK_THROWS_AS(resolvent(*a, g, 0.0, Vec{1.0}), ValidationError);
    CHECK_THROWS_AS(resolvent(*a, g, -1.0, Vec{1.0}), ValidationError);
    CHECK_THROWS_AS(resolvent(*a, g, 1.0, Vec{1.0, 2.0}), ValidationError);
    SolveOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(resolvent(*a, g, 1.0, Vec{1.0}, bad), ValidationError);
}

TEST_CASE("parallel batch matches the serial reference bitwise") {
    const auto a = make_power_graph(4, 2.0);
    const Gauge g(3.0);
    Rng rng(42);
    std::vector<double> lambdas;
    std::vector<Vec> points;
    for (int k = 0; k < 200; ++k) {
        lambdas.push_back(rng.log_uniform(1e-3, 10.0));
        points.push_back(rng.uniform_vec(4, -3.0, 3.0));
    }
    const auto par = batch_resolvent(*a, g, lambdas, points);
    const auto ser = batch_resolvent_serial(*a, g, lambdas, points);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(par[k].x_lambda[i] == ser[k].x_lambda[i]);
            CHECK(par[k].a_lambda[i] == ser[k].a_lambda[i]);
        }
    }
}

TEST_CASE("smooth-path resolvent stays accurate at small lambda") {
    // The Newton path must resolve a_lambda = phi(x - x_lambda)/lambda even
    // when lambda is tiny; closed form for A = c|u|u (p = 3):
    // x_lambda = x / (1 + sqrt(c lambda)).
    const auto a = make_plaplacian_1d(1, 0.5, 3.0);  // A u = 16 |u| u
    const Gauge g(3.0);
    for (double lam : {1e-2, 1e-6, 1e-10, 1e-14}) {
        const double x = 0.0625;
        const auto r = resolvent(*a, g, lam, Vec{x});
        const double xl = x / (1.0 + std::sqrt(16.0 * lam));
        const double al = 16.0 * xl * xl;
        CHECK(std::fabs(r.x_lambda[0] - xl) <= 1e-12 * (1.0 + std::fabs(xl)));
        CHECK(std::fabs(r.a_lambda[0] - al) <= 1e-8 * (1.0 + std::fabs(al)));
    }
}
