#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monokit/gauge.hpp"
#include "monokit/operators.hpp"
#include "monokit/pvector.hpp"

namespace monokit {

/// One resolvent solve: x_lambda = J_lambda^phi x and the Yosida value
/// a_lambda = A_lambda^phi x = (1/lambda) J_phi(x - x_lambda).
struct YosidaResult {
    Vec x_lambda;
    Vec a_lambda;
    double residual = 0.0;  // l^inf violation of 0 in J_phi(x_l - x) + lambda A x_l
    int iterations = 0;
    double lambda = 0.0;
};

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 200;
};

/// Solves the defining inclusion 0 in J_phi(x_lambda - x) + lambda A x_lambda.
/// Separable operators go through safeguarded per-coordinate bisection,
/// smooth ones through damped semismooth Newton, and closed-form Euclidean
/// resolvents are used directly when the gauge is p = 2.
YosidaResult resolvent(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                       const SolveOptions& opts = {});

/// Same solve; named for call sites that want A_lambda^phi x.
YosidaResult yosida_apply(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                          const SolveOptions& opts = {});

/// Splitting-identity defect || x - x_lambda - lambda^{q-1} J_phi^{-1}(a_lambda) ||_inf.
double splitting_defect(const Gauge& g, const Vec& x, const YosidaResult& r);

/// OpenMP batch kernel: one resolvent solve per (lambda, x) pair, plus the
/// serial reference it is tested and benchmarked against.
std::vector<YosidaResult> batch_resolvent(const MonotoneOp& a, const Gauge& g,
                                          std::span<const double> lambdas,
                                          std::span<const Vec> points,
                                          const SolveOptions& opts = {});
std::vector<YosidaResult> batch_resolvent_serial(const MonotoneOp& a, const Gauge& g,
                                                 std::span<const double> lambdas,
                                                 std::span<const Vec> points,
                                                 const SolveOptions& opts = {});

}  // namespace monokit
