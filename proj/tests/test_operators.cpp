#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "monokit/operators.hpp"
#include "monokit/rng.hpp"

using namespace monokit;

TEST_CASE("scalar graphs: images and normal-cone endpoint extension") {
    const ScalarGraph box = box_normal_cone_rule(-1.0, 1.0);
    CHECK(box.image(0.0).lo == 0.0);
    CHECK(box.image(0.0).hi == 0.0);
    CHECK(box.image(1.0).lo == 0.0);
    CHECK(box.image(1.0).hi == kInf);
    CHECK(box.image(-1.0).lo == -kInf);
    CHECK(box.image(-1.0).hi == 0.0);
    CHECK(box.min_section(1.0) == 0.0);

    const ScalarGraph abs = abs_subdiff_rule(1.0);
    CHECK(abs.image(0.0).lo == doctest::Approx(-1.0));
    CHECK(abs.image(0.0).hi == doctest::Approx(1.0));
    CHECK(abs.min_section(0.0) == 0.0);
    CHECK(abs.image(2.0).lo == doctest::Approx(1.0));

    const ScalarGraph r12 = remark12_rule(2.0);
    CHECK(r12.dmin() == 0.0);
    CHECK(r12.image(0.0).lo == -kInf);  // A(0) = (-inf, 0]
    CHECK(r12.image(0.0).hi == 0.0);
    CHECK(r12.min_section(0.0) == 0.0);
    CHECK(r12.image(3.0).lo == doctest::Approx(9.0));
}

TEST_CASE("min-section oracles") {
    const auto abs = make_abs_subdiff(1);
    CHECK(abs->min_section(Vec{0.0})[0] == 0.0);
    const auto box = make_box_normal_cone(1, -1.0, 1.0);
    CHECK(box->min_section(Vec{1.0})[0] == 0.0);
    const auto r12 = make_remark12(2.0);
    CHECK(r12->min_section(Vec{0.0})[0] == 0.0);
    CHECK_THROWS_AS(r12->min_section(Vec{-1.0}), OutOfDomainError);
}

TEST_CASE("catalog monotonicity") {
    std::vector<OpPtr> ops = {
        make_power_graph(2, 3.0),
        make_power_graph(1, 2.0),
        make_abs_subdiff(3),
        make_box_normal_cone(2, -1.0, 1.0),
        make_ball_normal_cone(2, 1.5),
        make_remark12(2.0),
        make_scaled_identity(3, 2.0),
        make_plaplacian_1d(4, 0.25, 3.0),
        make_plaplacian_2d(3, 3, 0.25, 3.0),
        make_sum({make_power_graph(2, 3.0), make_abs_subdiff(2)}),
        make_scaled(0.5, make_power_graph(2, 2.0)),
        make_zero(2),
    };
    for (const auto& op : ops) {
        const auto rep = check_monotone(*op, 500, 42);
        CHECK_MESSAGE(rep.pass(), op->name(), " violation ", rep.max_violation());
    }
}

TEST_CASE("anti-monotone linear map fails check_monotone with witness") {
    Eigen::MatrixXd m = -Eigen::MatrixXd::Identity(2, 2);
    const auto rep = check_monotone(*make_linear(m), 100, 42);
    CHECK_FALSE(rep.pass());
    bool has_witness = false;
    for (const auto& e : rep.entries)
        if (!e.pass && !e.witness.empty()) has_witness = true;
    CHECK(has_witness);
}

TEST_CASE("declared homogeneity degrees") {
    CHECK(check_homogeneous(*make_power_graph(2, 2.0), 2.0, 300, 42).pass());
    CHECK(check_homogeneous(*make_power_graph(1, 3.0), 3.0, 300, 42).pass());
    CHECK(check_homogeneous(*make_plaplacian_1d(4, 0.25, 3.0), 2.0, 300, 42).pass());
    CHECK(check_homogeneous(*make_plaplacian_2d(3, 3, 0.25, 3.0), 2.0, 300, 42).pass());
    CHECK(check_homogeneous(*make_remark12(2.0), 2.0, 300, 42).pass());
    CHECK(check_homogeneous(*make_scaled_identity(2, 3.0), 1.0, 300, 42).pass());
    // Linear maps are 1-homogeneous, not 2-homogeneous.
    CHECK_FALSE(check_homogeneous(*make_scaled_identity(2, 3.0), 2.0, 300, 42).pass());
}

TEST_CASE("single-node p-Laplacian stencil: A u = 16 |u| u") {
    const auto a = make_plaplacian_1d(1, 0.5, 3.0);
    for (double u : {-2.0, -0.0625, 0.0, 0.1, 1.0}) {
        CHECK(a->value(Vec{u})[0] == doctest::Approx(16.0 * std::fabs(u) * u).epsilon(1e-12));
    }
}

TEST_CASE("p=2 stencil is the tridiagonal Laplacian / h^2") {
    const double h = 0.2;
    const auto a = make_plaplacian_1d(3, h, 2.0);
    const Vec u = {1.0, -2.0, 0.5};
    const Vec v = a->value(u);
    CHECK(v[0] == doctest::Approx((2.0 * u[0] - u[1]) / (h * h)));
    CHECK(v[1] == doctest::Approx((2.0 * u[1] - u[0] - u[2]) / (h * h)));
    CHECK(v[2] == doctest::Approx((2.0 * u[2] - u[1]) / (h * h)));
}

TEST_CASE("p-Laplacian is the exact gradient of the discrete energy") {
    Rng rng(42);
    const std::vector<OpPtr> ops = {make_plaplacian_1d(5, 0.2, 3.0),
                                    make_plaplacian_1d(4, 0.3, 2.0),
                                    make_plaplacian_2d(3, 2, 0.25, 3.0)};
    for (const auto& op : ops) {
        const auto n = static_cast<std::size_t>(op->dim());
        for (int rep = 0; rep < 5; ++rep) {
            Vec u = rng.uniform_vec(n, -1.0, 1.0);
            const Vec g = op->value(u);
            for (std::size_t i = 0; i < n; ++i) {
                const double h = 1e-6 * (1.0 + std::fabs(u[i]));
                Vec up = u, um = u;
                up[i] += h;
                um[i] -= h;
                const double fd =
                    (plaplacian_energy(*op, up) - plaplacian_energy(*op, um)) / (2.0 * h);
                CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("graph distance") {
    const auto pg = make_power_graph(1, 2.0);
    CHECK(pg->graph_distance(Vec{2.0}, Vec{4.0}) <= 1e-12);
    // l_inf distance from (2, 5) to {(u, u^2)}: equalize u - 2 = 5 - u^2.
    CHECK(pg->graph_distance(Vec{2.0}, Vec{5.0}) ==
          doctest::Approx((std::sqrt(29.0) - 5.0) / 2.0));
    // Continuity across the kink: a point just left of the corner of |.|.
    const auto abs = make_abs_subdiff(1);
    CHECK(abs->graph_distance(Vec{-1e-15}, Vec{0.5}) <= 1e-12);
    const auto box = make_box_normal_cone(1, -1.0, 1.0);
    CHECK(box->graph_distance(Vec{1.0}, Vec{100.0}) <= 1e-12);  // normal cone at endpoint
    CHECK(box->graph_distance(Vec{0.0}, Vec{1.0}) == doctest::Approx(1.0));
    CHECK(box->graph_distance(Vec{2.0}, Vec{0.0}) == kInf);  // off the domain
}

TEST_CASE("sum and scaled wrappers") {
    const auto sum = make_sum({make_scaled_identity(2, 2.0), make_scaled_identity(2, 3.0)});
    CHECK(sum->min_section(Vec{1.0, -1.0})[0] == doctest::Approx(5.0));
    const auto half = make_scaled(0.5, make_power_graph(1, 2.0));
    CHECK(half->min_section(Vec{2.0})[0] == doctest::Approx(2.0));
    // Scaling by zero yields the zero operator.
    const auto zero = make_scaled(0.0, make_power_graph(1, 2.0));
    CHECK(zero->min_section(Vec{3.0})[0] == 0.0);
}

TEST_CASE("domain bookkeeping") {
    const auto box = make_box_normal_cone(2, -1.0, 1.0);
    CHECK(box->in_domain(Vec{0.5, -1.0}));
    CHECK_FALSE(box->in_domain(Vec{1.5, 0.0}));
    CHECK_FALSE(box->domain_is_everything());
    const auto pg = make_power_graph(2, 2.0);
    CHECK(pg->domain_is_everything());
    Vec lo, hi;
    box->domain_bounds(lo, hi);
    CHECK(lo[0] == -1.0);
    CHECK(hi[1] == 1.0);
}
