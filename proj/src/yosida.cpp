#include "monokit/yosida.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "monokit/parallel.hpp"

namespace monokit {

namespace {

// Sign classification of the monotone scalar map
// g(y) = phi_p(y - x) + lambda * A_i(y) as an interval:
//   -1: entire image below 0 (solution lies right of y)
//    0: 0 is in the image (y solves the inclusion)
//   +1: entire image above 0 (solution lies left of y)
int classify(const ScalarGraph& rule, double p, double lambda, double x, double y) {
    const Interval im = rule.image(y);
    const double base = signed_power(p, y - x);
    if (base + lambda * im.hi < 0.0) return -1;
    if (base + lambda * im.lo > 0.0) return +1;
    return 0;
}

double inclusion_defect(const ScalarGraph& rule, double p, double lambda, double x, double y) {
    const Interval im = rule.image(y);
    const double base = signed_power(p, y - x);
    return Interval{base + lambda * im.lo, base + lambda * im.hi}.dist(0.0);
}

// Safeguarded bisection on one coordinate. The map y -> g(y) is strictly
// increasing (the gauge term is), so the solution is unique.
std::pair<double, int> solve_scalar(const ScalarGraph& rule, double p, double lambda, double x,
                                    const SolveOptions& opts) {
    double w = 1.0 + std::fabs(x);
    double lo = std::max(rule.dmin(), x - w);
    double hi = std::min(rule.dmax(), x + w);
    int iters = 0;
    while (classify(rule, p, lambda, x, lo) > 0 && lo > rule.dmin()) {
        w *= 4.0;
        lo = std::max(rule.dmin(), x - w);
        if (++iters > 200) break;
    }
    while (classify(rule, p, lambda, x, hi) < 0 && hi < rule.dmax()) {
        w *= 4.0;
        hi = std::min(rule.dmax(), x + w);
        if (++iters > 200) break;
    }
    const int clo = classify(rule, p, lambda, x, lo);
    const int chi = classify(rule, p, lambda, x, hi);
    if (clo == 0) return {lo, iters};
    if (chi == 0) return {hi, iters};
    if (clo > 0 || chi < 0)
        throw NonconvergenceError("scalar resolvent bracketing failed",
                                  inclusion_defect(rule, p, lambda, x, lo), iters);

    const double width_tol = 1e-17 * (1.0 + std::fabs(x) + std::fabs(lo) + std::fabs(hi));
    for (int k = 0; k < 220 && hi - lo > width_tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        const int c = classify(rule, p, lambda, x, mid);
        ++iters;
        if (c == 0) return {mid, iters};
        (c < 0 ? lo : hi) = mid;
    }
    // The bracket is at terminal width: the better endpoint is the best
    // double-precision answer; its defect is reported as the residual.
    (void)opts;
    const double y = inclusion_defect(rule, p, lambda, x, lo) <=
                             inclusion_defect(rule, p, lambda, x, hi)
                         ? lo
                         : hi;
    return {y, iters};
}

YosidaResult finish(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                    Vec x_lambda, int iters, double residual) {
    YosidaResult r;
    r.x_lambda = std::move(x_lambda);
    r.a_lambda.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r.a_lambda[i] = signed_power(g.p, x[i] - r.x_lambda[i]) / lambda;
    r.iterations = iters;
    r.lambda = lambda;
    r.residual = residual >= 0.0 ? residual : lambda * a.graph_distance(r.x_lambda, r.a_lambda);
    return r;
}

YosidaResult solve_separable(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                             const SolveOptions& opts) {
    Vec xl(x.size());
    int iters = 0;
    double res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const ScalarGraph& rule = a.coord_graph(static_cast<int>(i));
        auto [y, it] = solve_scalar(rule, g.p, lambda, x[i], opts);
        xl[i] = y;
        iters = std::max(iters, it);
        res = std::max(res, inclusion_defect(rule, g.p, lambda, x[i], y));
    }
    YosidaResult r = finish(a, g, lambda, x, std::move(xl), iters, res);
    // The ratio phi(x - x_lambda)/lambda amplifies the rounding of x_lambda
    // by 1/lambda. Snap it into the image of the graph over the terminal
    // bracket (x_lambda widened by its rounding granularity): exact ratios
    // and kink selections are untouched, while pure rounding noise collapses
    // back onto the graph, restoring ||A_lambda x|| <= ||A0 x|| at tiny
    // lambda.
    for (std::size_t i = 0; i < x.size(); ++i) {
        const ScalarGraph& rule = a.coord_graph(static_cast<int>(i));
        const double w = 1e-16 * (1.0 + std::fabs(x[i]) + std::fabs(r.x_lambda[i]));
        const Interval widened{rule.image(std::max(rule.dmin(), r.x_lambda[i] - w)).lo,
                               rule.image(std::min(rule.dmax(), r.x_lambda[i] + w)).hi};
        r.a_lambda[i] = widened.clamp(r.a_lambda[i]);
    }
    return r;
}

YosidaResult solve_newton(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                          const SolveOptions& opts) {
    const auto n = static_cast<Eigen::Index>(x.size());
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // Small-lambda asymptotics give the start d0 = -phi_q(lambda A x),
    // i.e. the leading balance phi_p(y - x) = -lambda A(x).
    const Vec ax = a.value(x);
    Vec y0(x.size());
    double dscale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d0 = -signed_power(g.q, lambda * ax[i]);
        y0[i] = x[i] + d0;
        dscale = std::max(dscale, std::fabs(d0));
    }
    dscale = std::max(dscale, eps * (1.0 + linf_norm(x)));

    // Kink smoothing relative to the expected step scale; the absolute
    // 1e-12 (1 + ||x||^2) cap keeps the ordinary-lambda regime unchanged.
    const double mu = std::min(1e-12 * (1.0 + dot(x, x)), 1e-6 * dscale * dscale);

    // The F-residual controls the Yosida value only through F/lambda, so
    // the target shrinks with lambda. fscale/granularity track the
    // floating-point floor below which F cannot be resolved.
    const double tol_eff_base = opts.tol * std::min(1.0, lambda);
    double fscale = 1.0;
    double granularity = 0.0;
    auto eval = [&](const Vec& y) {
        Vec f = a.value(y);
        double s = 0.0, gr = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - x[i];
            const double base = signed_power(g.p, d);
            s = std::max(s, std::fabs(base) + lambda * std::fabs(f[i]));
            const double dphi = d == 0.0 ? 0.0 : (g.p - 1.0) * std::pow(std::fabs(d), g.p - 2.0);
            gr = std::max(gr, dphi * eps * (std::fabs(x[i]) + std::fabs(y[i])));
            f[i] = base + lambda * f[i];
        }
        fscale = s;
        granularity = gr;
        return f;
    };
    auto merit = [](const Vec& f) {
        double s = 0.0;
        for (double v : f) s += v * v;
        return 0.5 * s;
    };

    Vec y = x;
    Vec f = eval(y);
    {
        const Vec f0 = eval(y0);
        if (merit(f0) < merit(f)) {
            y = y0;
            f = f0;
        } else {
            f = eval(y);  // restore fscale/granularity for the current y
        }
    }
    double beta = 0.0;  // Levenberg damping, grown only on line-search failure
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        const double res = linf_norm(f);
        const double floor = 32.0 * eps * fscale + 8.0 * granularity;
        if (res <= std::max(tol_eff_base, floor))
            return finish(a, g, lambda, x, std::move(y), it, res);

        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            j(i, i) = signed_power_deriv_smoothed(g.p, y[static_cast<std::size_t>(i)] -
                                                            x[static_cast<std::size_t>(i)],
                                                  mu) +
                      beta;
        a.add_jacobian(y, j, lambda, mu);

        Eigen::Map<const Eigen::VectorXd> fv(f.data(), n);
        Eigen::VectorXd step = j.partialPivLu().solve(-fv);
        if (!step.allFinite()) {
            beta = std::max(1e-8, beta * 10.0);
            continue;
        }

        const double m0 = merit(f);
        double t = 1.0;
        bool accepted = false;
        while (t > 1e-14) {
            Vec yt(y.size());
            for (std::size_t i = 0; i < y.size(); ++i)
                yt[i] = y[i] + t * step(static_cast<Eigen::Index>(i));
            Vec ft = eval(yt);
            if (merit(ft) <= m0 * (1.0 - 1e-4 * t)) {
                y = std::move(yt);
                f = std::move(ft);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (accepted) {
            beta *= 0.25;
            if (beta < 1e-14) beta = 0.0;
        } else {
            beta = std::max(1e-8, beta * 10.0);
        }
    }
    throw NonconvergenceError("resolvent Newton iteration cap exceeded for " + a.name(),
                              linf_norm(f), it);
}

}  // namespace

YosidaResult resolvent(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                       const SolveOptions& opts) {
    if (!(lambda > 0.0)) throw ValidationError("resolvent: lambda must be positive");
    if (!(opts.tol > 0.0)) throw ValidationError("resolvent: tolerance must be positive");
    if (static_cast<int>(x.size()) != a.dim())
        throw ValidationError("resolvent: dimension mismatch for " + a.name());

    if (a.is_separable()) return solve_separable(a, g, lambda, x, opts);
    if (a.has_l2_resolvent()) {
        if (std::fabs(g.p - 2.0) > 1e-12)
            throw ValidationError(a.name() + ": closed-form resolvent needs the p = 2 gauge");
        return finish(a, g, lambda, x, a.l2_resolvent(x, lambda), 0, -1.0);
    }
    if (a.is_smooth()) return solve_newton(a, g, lambda, x, opts);
    throw ValidationError(a.name() + ": no solvable resolvent rule");
}

YosidaResult yosida_apply(const MonotoneOp& a, const Gauge& g, double lambda, const Vec& x,
                          const SolveOptions& opts) {
    return resolvent(a, g, lambda, x, opts);
}

double splitting_defect(const Gauge& g, const Vec& x, const YosidaResult& r) {
    const double lq = std::pow(r.lambda, g.q - 1.0);
    Vec ja = duality_map_inverse_raw(r.a_lambda, g.p);
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, std::fabs(x[i] - r.x_lambda[i] - lq * ja[i]));
    return d;
}

std::vector<YosidaResult> batch_resolvent(const MonotoneOp& a, const Gauge& g,
                                          std::span<const double> lambdas,
                                          std::span<const Vec> points,
                                          const SolveOptions& opts) {
    std::vector<YosidaResult> out(points.size());
    par_for(points.size(), [&](std::size_t k) {
        out[k] = resolvent(a, g, lambdas[k], points[k], opts);
    });
    return out;
}

std::vector<YosidaResult> batch_resolvent_serial(const MonotoneOp& a, const Gauge& g,
                                                 std::span<const double> lambdas,
                                                 std::span<const Vec> points,
                                                 const SolveOptions& opts) {
    std::vector<YosidaResult> out(points.size());
    serial_for(points.size(), [&](std::size_t k) {
        out[k] = resolvent(a, g, lambdas[k], points[k], opts);
    });
    return out;
}

}  // namespace monokit
