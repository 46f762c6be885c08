#include "monokit/degree.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "monokit/errors.hpp"
#include "monokit/newton.hpp"
#include "monokit/operators.hpp"
#include "monokit/parallel.hpp"
#include "monokit/rng.hpp"

namespace monokit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm2(double x, double y) { return std::hypot(x, y); }

// Signed angle from (x0,y0) to (x1,y1), in (-pi, pi].
double turn(double x0, double y0, double x1, double y1) {
    return std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
}

struct WindingState {
    const MapFn* f;
    double margin = kInf;
    int refinement = 0;
    int max_refine = 40;
    bool overflow = false;
};

// Accumulated turn of f along the straight segment a -> b, bisecting until
// each increment is below pi/2.
double accumulate(WindingState& st, const std::array<double, 2>& a, const std::array<double, 2>& b,
                  const Vec& fa, const Vec& fb, int depth) {
    const double inc = turn(fa[0], fa[1], fb[0], fb[1]);
    if (std::fabs(inc) < kPi / 2.0 && depth > 0) return inc;
    if (depth >= st.max_refine) {
        st.overflow = true;
        return inc;
    }
    const std::array<double, 2> mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    const Vec fm = (*st.f)(Vec{mid[0], mid[1]});
    st.margin = std::min(st.margin, norm2(fm[0], fm[1]));
    st.refinement = std::max(st.refinement, depth + 1);
    return accumulate(st, a, mid, fa, fm, depth + 1) + accumulate(st, mid, b, fm, fb, depth + 1);
}

Vec to_local(const Region& g, const Vec& x) { return sub(x, g.center); }

}  // namespace

DegreeReport degree_1d(const ScalarFn& f, double a, double b) {
    if (!(a < b)) throw ValidationError("degree_1d: need a < b");
    const double fa = f(a);
    const double fb = f(b);
    const double margin = std::min(std::fabs(fa), std::fabs(fb));
    if (margin < kBoundaryMarginThreshold)
        throw BoundaryDegeneracyError("degree_1d: zero at an interval endpoint (margin " +
                                      std::to_string(margin) + ")");
    DegreeReport r;
    r.method = "endpoint-sign";
    r.boundary_margin = margin;
    r.value = static_cast<int>(((fb > 0.0) - (fb < 0.0)) - ((fa > 0.0) - (fa < 0.0))) / 2;
    r.certified = true;
    return r;
}

DegreeReport winding_2d(const MapFn& f, const std::vector<std::array<double, 2>>& polyline,
                        int max_refine) {
    if (polyline.size() < 3) throw ValidationError("winding_2d: boundary polyline needs >= 3 vertices");

    WindingState st;
    st.f = &f;
    st.max_refine = max_refine;

    std::vector<Vec> fv(polyline.size());
    for (std::size_t k = 0; k < polyline.size(); ++k) {
        fv[k] = f(Vec{polyline[k][0], polyline[k][1]});
        st.margin = std::min(st.margin, norm2(fv[k][0], fv[k][1]));
    }

    double total = 0.0;
    for (std::size_t k = 0; k < polyline.size(); ++k) {
        const std::size_t k1 = (k + 1) % polyline.size();
        total += accumulate(st, polyline[k], polyline[k1], fv[k], fv[k1], 0);
    }

    DegreeReport r;
    r.method = "winding";
    r.boundary_margin = st.margin;
    r.refinement = st.refinement;
    const double w = total / (2.0 * kPi);
    const double rounded = std::round(w);
    const bool integer_ok = std::fabs(w - rounded) <= 1e-6;
    if (st.margin >= kBoundaryMarginThreshold && integer_ok && !st.overflow) {
        r.value = static_cast<int>(rounded);
        r.certified = true;
    } else {
        r.certified = false;
        if (integer_ok) r.value = static_cast<int>(rounded);
        r.note = st.overflow ? "refinement limit reached"
                 : integer_ok ? "boundary margin below threshold"
                              : "winding not integral: " + std::to_string(w);
    }
    return r;
}

std::vector<std::array<double, 2>> pcircle_polyline(const std::array<double, 2>& center,
                                                    double radius, double p, int segments) {
    if (!(radius > 0.0) || !(p > 1.0) || segments < 3)
        throw ValidationError("pcircle_polyline: bad parameters");
    std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(segments));
    for (int k = 0; k < segments; ++k) {
        const double th = 2.0 * kPi * k / segments;
        const double c = std::cos(th);
        const double s = std::sin(th);
        // (sign(c)|c|^{2/p}, sign(s)|s|^{2/p}) lies on the unit p-circle.
        pts[static_cast<std::size_t>(k)] = {
            center[0] + radius * std::copysign(std::pow(std::fabs(c), 2.0 / p), c),
            center[1] + radius * std::copysign(std::pow(std::fabs(s), 2.0 / p), s)};
    }
    return pts;
}

DegreeReport degree_regular_nd(const MapFn& f, const Region& region, const MultistartConfig& cfg) {
    const auto n = region.center.size();
    if (n == 0) throw ValidationError("degree_regular_nd: empty region center");
    if (!(region.radius > 0.0)) throw ValidationError("degree_regular_nd: radius must be positive");

    // Deterministic multistart points in the open ball, solved in parallel.
    const int starts = cfg.starts_per_dim * static_cast<int>(n);
    std::vector<Vec> x0(static_cast<std::size_t>(starts));
    Rng rng(cfg.seed);
    for (auto& x : x0) {
        x = rng.sphere_point(n, region.radius * rng.uniform(0.05, 0.95), region.p);
        for (std::size_t i = 0; i < n; ++i) x[i] += region.center[i];
    }
    std::vector<NewtonOutcome> found(x0.size());
    par_for(x0.size(), [&](std::size_t k) {
        found[k] = newton_solve(f, x0[k], cfg.tol, cfg.max_iter);
    });

    std::vector<Vec> zeros;
    for (const auto& z : found) {
        if (!z.converged) continue;
        if (pnorm_raw(to_local(region, z.x), region.p) >= region.radius - kBoundaryMarginThreshold)
            continue;  // outside or boundary-suspect
        bool dup = false;
        for (const auto& u : zeros)
            if (linf_norm(sub(z.x, u)) < 1e-6) {
                dup = true;
                break;
            }
        if (!dup) zeros.push_back(z.x);
    }

    int deg = 0;
    for (const auto& z : zeros) {
        const Eigen::MatrixXd j = fd_jacobian(f, z);
        const double det = j.partialPivLu().determinant();
        const double scale = std::max(1e-300, std::pow(j.norm() / std::sqrt(double(n)), double(n)));
        if (std::fabs(det) <= 1e-10 * scale)
            throw DegenerateZeroError("degree_regular_nd: singular Jacobian at a located zero");
        deg += det > 0.0 ? 1 : -1;
    }

    // Boundary margin from a deterministic sphere sample.
    double margin = kInf;
    Rng brng(cfg.seed + 1);
    for (int k = 0; k < 16 * static_cast<int>(n); ++k) {
        Vec x = brng.sphere_point(n, region.radius, region.p);
        for (std::size_t i = 0; i < n; ++i) x[i] += region.center[i];
        margin = std::min(margin, l2_norm(f(x)));
    }

    DegreeReport r;
    r.method = "regular-sum";
    r.boundary_margin = margin;
    r.value = deg;
    r.certified = false;  // zero-finding completeness is heuristic
    r.note = "heuristic regular-value sum over " + std::to_string(zeros.size()) + " zeros";
    return r;
}

DegreeReport degree_ball(const MapFn& f, const Region& region, const MultistartConfig& cfg) {
    const auto n = region.center.size();
    if (n == 1) {
        const double c = region.center[0];
        auto f1 = [&f](double x) { return f(Vec{x})[0]; };
        return degree_1d(f1, c - region.radius, c + region.radius);
    }
    if (n == 2) {
        const auto loop = pcircle_polyline({region.center[0], region.center[1]}, region.radius,
                                           region.p, 64);
        return winding_2d(f, loop);
    }
    return degree_regular_nd(f, region, cfg);
}

ExcisionReport excision_report(const MapFn& f, const Region& g1, const Region& g2,
                               const MultistartConfig& cfg) {
    if (g1.center.size() != g2.center.size())
        throw ValidationError("excision_report: dimension mismatch between regions");
    if (!(pnorm_raw(sub(g2.center, g1.center), g1.p) + g2.radius < g1.radius))
        throw ValidationError("excision_report: G2 must be strictly inside G1");

    ExcisionReport rep;
    rep.d1 = degree_ball(f, g1, cfg);
    rep.d2 = degree_ball(f, g2, cfg);
    const bool differ = rep.d1.value && rep.d2.value && *rep.d1.value != *rep.d2.value;
    rep.guaranteed = differ && rep.d1.certified && rep.d2.certified;
    if (rep.guaranteed)
        rep.conclusion = "solution in G1\\G2 guaranteed";
    else if (differ)
        rep.conclusion = "degrees differ but uncertified; annulus solution plausible";
    else if (rep.d1.value && rep.d2.value)
        rep.conclusion = "excision inconclusive (equal degrees)";
    else
        rep.conclusion = "uncertified degrees; no conclusion";
    return rep;
}

}  // namespace monokit
