#pragma once

#include <cmath>
#include <limits>

#include "monokit/errors.hpp"

namespace monokit {

/// Power gauge phi(r) = r^{p-1} on [0, inf), together with its conjugate
/// exponent q (1/p + 1/q = 1) and homogeneity degree gamma = p - 1.
struct Gauge {
    double p;
    double q;
    double gamma;

    explicit Gauge(double p_exponent)
        : p(p_exponent), q(p_exponent / (p_exponent - 1.0)), gamma(p_exponent - 1.0) {
        if (!(p_exponent > 1.0) || !std::isfinite(p_exponent))
            throw ValidationError("gauge exponent must satisfy 1 < p < inf");
    }
};

inline double gauge_eval(const Gauge& g, double r) {
    if (r < 0.0) throw OutOfDomainError("gauge_eval: negative argument");
    return std::pow(r, g.p - 1.0);
}

/// Inverse gauge phi^{-1}(r) = r^{q-1}.
inline double gauge_inverse(const Gauge& g, double r) {
    if (r < 0.0) throw OutOfDomainError("gauge_inverse: negative argument");
    return std::pow(r, g.q - 1.0);
}

/// Signed power |s|^{p-2} s = sign(s) |s|^{p-1}; the scalar duality map of
/// the exponent-p gauge. Returns 0 at s = 0 for every p > 1.
inline double signed_power(double p, double s) {
    if (s == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(s), p - 1.0), s);
}

/// Derivative of signed_power smoothed near the kink: (s^2 + mu)^{(p-2)/2}
/// scaled by (p-1). Used only to assemble Newton linearizations; residuals
/// are always evaluated with the exact signed_power.
inline double signed_power_deriv_smoothed(double p, double s, double mu) {
    return (p - 1.0) * std::pow(s * s + mu, (p - 2.0) / 2.0);
}

}  // namespace monokit
