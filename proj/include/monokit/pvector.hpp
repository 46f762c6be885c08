#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "monokit/errors.hpp"
#include "monokit/gauge.hpp"

namespace monokit {

using Vec = std::vector<double>;

enum class Side { primal, dual };

/// A point of (R^n, ||.||_p) or of its dual; dual-side vectors are measured
/// in the conjugate l^q norm.
struct PVector {
    Vec coords;
    Side side = Side::primal;
    double p = 2.0;

    PVector() = default;
    PVector(Vec c, Side s, double p_exponent) : coords(std::move(c)), side(s), p(p_exponent) {
        if (!(p > 1.0)) throw ValidationError("PVector: exponent must satisfy p > 1");
        for (double v : coords)
            if (!std::isfinite(v)) throw ValidationError("PVector: non-finite coordinate");
    }
    std::size_t size() const { return coords.size(); }
};

/// l^r norm of a raw coordinate array.
inline double pnorm_raw(const Vec& x, double r) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::fabs(v), r);
    return std::pow(s, 1.0 / r);
}

inline double linf_norm(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

inline double l2_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// Norm of a PVector in its own space: l^p on the primal side, l^q dual.
inline double pnorm(const PVector& x) {
    const double r = (x.side == Side::primal) ? x.p : Gauge(x.p).q;
    return pnorm_raw(x.coords, r);
}

/// Componentwise duality map of l^p with the power gauge:
/// (J_phi x)_i = |x_i|^{p-2} x_i. Maps primal to dual; J_phi(0) = 0.
inline PVector duality_map(const PVector& x, const Gauge& g) {
    if (x.side != Side::primal) throw ValidationError("duality_map expects a primal-side vector");
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = signed_power(g.p, x.coords[i]);
    return PVector(std::move(y), Side::dual, g.p);
}

/// Inverse duality map: the duality map of the dual space with gauge
/// phi^{-1}(r) = r^{q-1}, componentwise |y_i|^{q-2} y_i.
inline PVector duality_map_inverse(const PVector& y, const Gauge& g) {
    if (y.side != Side::dual) throw ValidationError("duality_map_inverse expects a dual-side vector");
    Vec x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = signed_power(g.q, y.coords[i]);
    return PVector(std::move(x), Side::primal, g.p);
}

/// Raw-array versions used by the solvers (no side bookkeeping).
inline Vec duality_map_raw(const Vec& x, double p) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = signed_power(p, x[i]);
    return y;
}

inline Vec duality_map_inverse_raw(const Vec& y, double p) {
    const double q = p / (p - 1.0);
    Vec x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = signed_power(q, y[i]);
    return x;
}

/// Normalized duality map (gauge phi(r) = r) of l^p:
/// J x = ||x||_p^{2-p} |x_i|^{p-2} x_i, with J(0) = 0.
inline Vec normalized_duality_raw(const Vec& x, double p) {
    const double nx = pnorm_raw(x, p);
    Vec y(x.size(), 0.0);
    if (nx == 0.0) return y;
    const double c = std::pow(nx, 2.0 - p);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * signed_power(p, x[i]);
    return y;
}

}  // namespace monokit
