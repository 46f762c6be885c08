#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monokit/pvector.hpp"

namespace monokit {

using MapFn = std::function<Vec(const Vec&)>;
using ScalarFn = std::function<double(double)>;

/// Below this boundary margin a degree is never reported as certified.
constexpr double kBoundaryMarginThreshold = 1e-6;

struct DegreeReport {
    std::optional<int> value;  // empty means "uncertified, no value"
    std::string method;        // endpoint-sign | winding | regular-sum
    double boundary_margin = 0.0;
    int refinement = 0;
    bool certified = false;
    std::string note;
};

/// Open l^p ball region {x : ||x - center||_p < radius}.
struct Region {
    Vec center;
    double radius = 1.0;
    double p = 2.0;
};

struct MultistartConfig {
    int starts_per_dim = 8;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int max_iter = 200;
};

/// 1-D Brouwer degree by endpoint signs: (sign f(b) - sign f(a)) / 2.
DegreeReport degree_1d(const ScalarFn& f, double a, double b);

/// Planar degree as the winding number of f along a closed boundary
/// polyline, with adaptive bisection until every angle increment is < pi/2.
DegreeReport winding_2d(const MapFn& f, const std::vector<std::array<double, 2>>& polyline,
                        int max_refine = 40);

/// Vertices of the l^p circle ||x - center||_p = radius (closed loop,
/// first vertex not repeated).
std::vector<std::array<double, 2>> pcircle_polyline(const std::array<double, 2>& center,
                                                    double radius, double p, int segments = 64);

/// Heuristic degree for n >= 3: multistart Newton zero-finding plus
/// sum of Jacobian determinant signs. Always flagged uncertified.
DegreeReport degree_regular_nd(const MapFn& f, const Region& region,
                               const MultistartConfig& cfg = {});

/// Dimension dispatch: 1 -> endpoint-sign, 2 -> winding on the p-circle,
/// n >= 3 -> regular-value sum.
DegreeReport degree_ball(const MapFn& f, const Region& region, const MultistartConfig& cfg = {});

struct ExcisionReport {
    DegreeReport d1;
    DegreeReport d2;
    bool guaranteed = false;
    std::string conclusion;
};

/// Excision certificate: d1 = d(f, G1, 0), d2 = d(f, G2, 0);
/// a solution in G1 \ closure(G2) is guaranteed iff both are certified and differ.
ExcisionReport excision_report(const MapFn& f, const Region& g1, const Region& g2,
                               const MultistartConfig& cfg = {});

}  // namespace monokit
