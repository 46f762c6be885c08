#include <doctest.h>

#include <cmath>

#include "monokit/operators.hpp"
#include "monokit/rng.hpp"
#include "monokit/verify.hpp"

using namespace monokit;

namespace {

std::vector<double> decreasing_schedule() {
    // Deep enough that even the slowest gauge rate lambda^{q-1} (q - 1 = 1/3
    // at p = 4) pushes the convergence gaps below 1e-4.
    std::vector<double> s;
    for (double l = 1.0; l >= 1e-18; l /= 10.0) s.push_back(l);
    return s;
}

std::vector<Vec> samples_in_ball(int dim, int count, double radius, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec> xs;
    for (int k = 0; k < count; ++k)
        xs.push_back(rng.sphere_point(static_cast<std::size_t>(dim),
                                      radius * rng.uniform(0.1, 1.0), 2.0));
    return xs;
}

}  // namespace

TEST_CASE("resolvent structure suite passes across the catalog") {
    const std::vector<std::pair<OpPtr, double>> cases = {
        {make_power_graph(2, 3.0), 4.0},
        {make_abs_subdiff(2), 2.0},
        {make_box_normal_cone(2, -1.0, 1.0), 2.0},
        {make_scaled_identity(2, 2.0), 2.0},
        {make_plaplacian_1d(3, 0.5, 3.0), 3.0},
        {make_remark12(2.0), 3.0},
    };
    for (const auto& [op, p] : cases) {
        const auto rep = verify_prop21(*op, Gauge(p), samples_in_ball(op->dim(), 12, 2.0, 42),
                                       decreasing_schedule(), 42);
        CHECK_MESSAGE(rep.pass(), rep.summary());
    }
}

TEST_CASE("blow-up detection off the domain closure") {
    const auto box = make_box_normal_cone(1, -1.0, 1.0);
    const auto rep = verify_prop21(*box, Gauge(2.0), samples_in_ball(1, 8, 0.9, 42),
                                   decreasing_schedule(), 42);
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name.find("blow-up") != std::string::npos) {
            found = true;
            CHECK(c.pass);
        }
    CHECK(found);
}

TEST_CASE("uniform bound: finite and dominated by the min-section sup") {
    const std::vector<std::pair<OpPtr, double>> cases = {
        {make_power_graph(2, 3.0), 4.0},
        {make_scaled_identity(2, 1.0), 2.0},
        {make_plaplacian_1d(4, 0.25, 3.0), 3.0},
        {make_zero(2), 2.0},
    };
    for (const auto& [op, p] : cases) {
        const auto rep = verify_uniform_bound(*op, Gauge(p), 2.0, 1e-3, 10.0, 200, 42);
        CHECK_MESSAGE(rep.pass(), rep.summary());
    }
    // Oracle bounds: |A_lambda x| <= |x|^3 <= 8 for the cube on a 2-ball;
    // K_emp <= a R for A = aI.
    {
        const auto rep = verify_uniform_bound(*make_power_graph(1, 3.0), Gauge(4.0), 2.0, 0.1,
                                              10.0, 400, 42);
        CHECK(rep.pass());
    }
}

TEST_CASE("strong quasiboundedness probe") {
    const std::vector<std::pair<OpPtr, double>> cases = {
        {make_power_graph(2, 3.0), 4.0},
        {make_scaled_identity(2, 2.0), 2.0},
        {make_box_normal_cone(2, -1.0, 1.0), 2.0},
        {make_zero(2), 2.0},
    };
    // The doubling-stability check needs enough draws for the sampled max to
    // saturate; the box normal cone's pairing filter is the slowest to settle.
    for (const auto& [op, p] : cases) {
        const auto rep = quasibound_probe(*op, Gauge(p), 2.0, 10.0, 4000, 42);
        CHECK_MESSAGE(rep.pass(), rep.summary());
    }
}

TEST_CASE("joint continuity along converging paths") {
    // Path (lambda_k, x_k) -> (1, 1) for the cube with p = 4; closed form
    // A_lambda x = (x/(1+lambda^{1/3}))^3 is continuous.
    const auto cube = make_power_graph(1, 3.0);
    std::vector<std::pair<double, Vec>> path;
    for (int k = 1; k <= 30; ++k) {
        const double d = std::pow(2.0, -k);
        path.push_back({1.0 + d, Vec{1.0 + d}});
    }
    path.push_back({1.0, Vec{1.0}});
    CHECK(verify_joint_continuity(*cube, Gauge(4.0), path).pass());

    // Soft threshold: A_lambda(3) = 1 for all lambda < 3, constant path.
    const auto abs = make_abs_subdiff(1);
    std::vector<std::pair<double, Vec>> path2;
    for (int k = 1; k <= 20; ++k) path2.push_back({0.5 + 0.3 / k, Vec{3.0}});
    path2.push_back({0.5, Vec{3.0}});
    CHECK(verify_joint_continuity(*abs, Gauge(2.0), path2).pass());

    // Zero operator: identically zero along any path.
    const auto z = make_zero(2);
    std::vector<std::pair<double, Vec>> path3 = {{2.0, Vec{1.0, 1.0}}, {1.0, Vec{0.5, 0.5}}};
    CHECK(verify_joint_continuity(*z, Gauge(2.0), path3).pass());
}

TEST_CASE("homogeneity transmission: gauge-locked and mismatched exponents") {
    // gamma in {0.5, 1, 2, 3} with p = gamma + 1 (lock) and one mismatch.
    for (double gamma : {0.5, 1.0, 2.0, 3.0}) {
        const auto op = make_power_graph(2, gamma);
        const auto locked = verify_homogeneity_transmission(*op, gamma, Gauge(gamma + 1.0), 60, 42);
        CHECK_MESSAGE(locked.pass(), locked.summary());
        const double mismatched_p = gamma + 1.0 == 2.0 ? 3.0 : 2.0;
        const auto mis = verify_homogeneity_transmission(*op, gamma, Gauge(mismatched_p), 60, 42);
        CHECK_MESSAGE(mis.pass(), mis.summary());
    }
    // Discrete p-Laplacian carries gamma = p - 1.
    const auto plap = make_plaplacian_1d(3, 0.5, 3.0);
    CHECK(verify_homogeneity_transmission(*plap, 2.0, Gauge(3.0), 40, 42).pass());
}

TEST_CASE("homogeneity transmission closed-form spot check") {
    // Cube, p = 4, t = 1: A_1(2) = 2^3 A_1(1), both from x_l = x/(1+t^{1/3}).
    const auto cube = make_power_graph(1, 3.0);
    const double res = homogeneity_transmission_residual(*cube, 3.0, Gauge(4.0), 1.0, 2.0,
                                                         Vec{1.0});
    CHECK(res <= 1e-8);
    // s = 1 is exact by construction.
    CHECK(homogeneity_transmission_residual(*cube, 3.0, Gauge(4.0), 0.37, 1.0, Vec{1.3}) <=
          1e-12);
    // s = 0 checks A_t(0) = 0.
    CHECK(homogeneity_transmission_residual(*cube, 3.0, Gauge(4.0), 0.5, 0.0, Vec{1.0}) <=
          1e-12);
}
