#include <doctest.h>

#include <cmath>

#include "monokit/errors.hpp"
#include "monokit/specfile.hpp"

using namespace monokit;

namespace {

const char* kSample = R"(# top comment
[problem]
kind = inclusion   # trailing comment

[A]
type = "power_graph"
n = 2
gamma = 2.5

[regions]
g1_radius = 2
v0_star = 1.0, -0.5
)";

}  // namespace

TEST_CASE("parsing: sections, comments, quotes, numbers, lists") {
    const auto f = SpecFile::parse(kSample);
    CHECK(f.get_string("problem", "kind") == "inclusion");
    CHECK(f.get_string("A", "type") == "power_graph");  // quotes stripped
    CHECK(f.get_int("A", "n") == 2);
    CHECK(f.get_double("A", "gamma") == doctest::Approx(2.5));
    CHECK(f.get_double("regions", "g1_radius") == doctest::Approx(2.0));
    const auto v0 = f.get_list("regions", "v0_star");
    REQUIRE(v0.size() == 2);
    CHECK(v0[0] == doctest::Approx(1.0));
    CHECK(v0[1] == doctest::Approx(-0.5));
}

TEST_CASE("parsing: fallbacks and presence checks") {
    const auto f = SpecFile::parse(kSample);
    CHECK(f.has("A", "gamma"));
    CHECK_FALSE(f.has("A", "missing"));
    CHECK_FALSE(f.has("nosuch", "key"));
    CHECK(f.get_string("A", "missing", "dflt") == "dflt");
    CHECK(f.get_double("A", "missing", 7.25) == doctest::Approx(7.25));
    CHECK(f.get_int("A", "missing", 3) == 3);
}

TEST_CASE("parsing errors") {
    const auto f = SpecFile::parse(kSample);
    CHECK_THROWS_AS(f.get_string("A", "missing"), ValidationError);
    CHECK_THROWS_AS(f.get_double("A", "type"), ValidationError);  // not a number
    CHECK_THROWS_AS(f.get_int("A", "gamma"), ValidationError);    // 2.5 not integral
    CHECK_THROWS_AS(SpecFile::parse("[unterminated\n"), ValidationError);
    CHECK_THROWS_AS(SpecFile::parse("[s]\nno_equals_here\n"), ValidationError);
    CHECK_THROWS_AS(SpecFile::parse("[s]\n= value\n"), ValidationError);
    CHECK_THROWS_AS(SpecFile::load("/nonexistent/path.toml"), ValidationError);
}

TEST_CASE("inclusion round trip from the shipped benchmark spec") {
    const auto f = SpecFile::load("specs/scalar_benchmark.toml");
    const auto p = load_inclusion(f);
    CHECK(p.dim() == 1);
    CHECK(p.gamma == doctest::Approx(2.0));
    CHECK(p.gauge.p == doctest::Approx(3.0));
    CHECK(p.g1_radius == doctest::Approx(2.0));
    CHECK(p.g2_radius == doctest::Approx(0.5));
    CHECK(p.a->min_section(Vec{2.0})[0] == doctest::Approx(4.0));  // |x|x
    CHECK(p.c(Vec{2.0})[0] == doctest::Approx(-2.0));              // C x = -x
    CHECK(p.t.is_singleton());
    CHECK(p.t.lower(Vec{2.0})[0] == 0.0);
}

TEST_CASE("inclusion loader validates its pieces") {
    CHECK_THROWS_AS(load_inclusion(SpecFile::parse("[A]\ntype = nosuch\n")), ValidationError);
    CHECK_THROWS_AS(load_inclusion(SpecFile::parse(
                        "[A]\ntype = power_graph\nn = 2\ngamma = 2\n"
                        "[T]\ntype = nosuch\n"
                        "[regions]\ng1_radius = 2\ng2_radius = 0.5\n")),
                    ValidationError);
    // v0_star length must match the dimension.
    CHECK_THROWS_AS(load_inclusion(SpecFile::parse(
                        "[A]\ntype = power_graph\nn = 2\ngamma = 2\n"
                        "[regions]\ng1_radius = 2\ng2_radius = 0.5\nv0_star = 1\n")),
                    ValidationError);
}

TEST_CASE("elliptic spec round trip") {
    const auto f = SpecFile::load("specs/elliptic_single_node.toml");
    const auto s = load_elliptic_spec(f);
    CHECK(s.nx == 1);
    CHECK(s.ny == 0);
    CHECK(s.h == doctest::Approx(0.5));
    CHECK(s.p == doctest::Approx(3.0));
    CHECK(s.c_lin == doctest::Approx(-1.0));
    CHECK_FALSE(s.has_reaction);
    CHECK(s.delta1 == doctest::Approx(1.0));
    CHECK(s.delta2 == doctest::Approx(0.01));
    const auto prob = build_elliptic(s);
    CHECK(prob.a->value(Vec{1.0})[0] == doctest::Approx(16.0));
}

TEST_CASE("elliptic spec: interval reaction and constant forcing") {
    const auto f = SpecFile::parse(
        "[grid]\nnx = 2\nh = 0.5\np = 3\n"
        "[C]\ng_const = 0.25\n"
        "[reaction]\ntype = interval\nlo_const = -1\nhi_const = 1\nhi_lin = 0.5\n");
    const auto s = load_elliptic_spec(f);
    CHECK(s.has_reaction);
    CHECK(s.react_lo_const == doctest::Approx(-1.0));
    CHECK(s.react_hi_lin == doctest::Approx(0.5));
    REQUIRE(s.g.size() == 2);
    CHECK(s.g[0] == doctest::Approx(0.25));
    CHECK_THROWS_AS(load_elliptic_spec(SpecFile::parse(
                        "[grid]\nnx = 1\nh = 0.5\np = 3\n[reaction]\ntype = nosuch\n")),
                    ValidationError);
}

TEST_CASE("parabolic round trip matches the linear recurrence") {
    const auto f = SpecFile::load("specs/parabolic_linear.toml");
    const auto p = load_parabolic(f);
    CHECK(p.dt == doctest::Approx(0.1));
    CHECK(p.horizon == doctest::Approx(1.0));
    CHECK(p.forcing(0, 0.3) == doctest::Approx(1.0));
    const auto traj = step_parabolic(p, 5);
    double u = 0.0;
    for (int k = 0; k < 5; ++k) u = (u + p.dt) / (1.0 + p.dt);
    CHECK(std::fabs(traj.states.back()[0] - u) <= 1e-12);
}

TEST_CASE("shipped spec files parse and build") {
    const auto n16 = load_elliptic_spec(SpecFile::load("specs/elliptic_n16.toml"));
    CHECK(n16.nx == 16);
    CHECK(build_elliptic(n16).n_nodes == 16);
    const auto p3 = load_parabolic(SpecFile::load("specs/parabolic_p3_node.toml"));
    CHECK(p3.spatial.n_nodes == 1);
    CHECK(p3.dt == doctest::Approx(1.0));
}
