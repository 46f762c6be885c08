#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "monokit/pvector.hpp"

namespace monokit {

using VecMap = std::function<Vec(const Vec&)>;

/// Central-difference Jacobian, h_i = 1e-6 (1 + |x_i|).
inline Eigen::MatrixXd fd_jacobian(const VecMap& f, const Vec& x) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd j(n, n);
    Vec xp = x, xm = x;
    for (Eigen::Index c = 0; c < n; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        const double h = 1e-6 * (1.0 + std::fabs(x[ci]));
        xp[ci] = x[ci] + h;
        xm[ci] = x[ci] - h;
        const Vec fp = f(xp);
        const Vec fm = f(xm);
        for (Eigen::Index r = 0; r < n; ++r)
            j(r, c) =
                (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2.0 * h);
        xp[ci] = x[ci];
        xm[ci] = x[ci];
    }
    return j;
}

struct NewtonOutcome {
    Vec x;
    double residual = 0.0;  // l^inf of f at x
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton with finite-difference Jacobian, Armijo backtracking on
/// the merit 0.5 ||f||_2^2, and a Levenberg bump when a step fails.
/// Between periodic finite-difference refreshes the Jacobian is carried
/// forward with Broyden rank-1 updates to keep the evaluation count low.
inline NewtonOutcome newton_solve(const VecMap& f, Vec x, double tol, int max_iter) {
    auto merit = [](const Vec& v) {
        double s = 0.0;
        for (double c : v) s += c * c;
        return 0.5 * s;
    };
    const auto n = static_cast<Eigen::Index>(x.size());
    NewtonOutcome out;
    Vec fx = f(x);
    double beta = 0.0;
    // Stall guard: abort starts that make no real progress instead of
    // spending the whole iteration budget crawling along a non-root.
    double best_merit = merit(fx);
    int since_improve = 0;
    Eigen::MatrixXd j(n, n);
    int since_refresh = -1;  // -1 forces a fresh Jacobian
    int it = 0;
    for (; it < max_iter; ++it) {
        if (linf_norm(fx) <= tol) break;
        const double m = merit(fx);
        if (m < 0.99 * best_merit) {
            best_merit = m;
            since_improve = 0;
        } else if (++since_improve >= 25) {
            break;
        }
        if (since_refresh < 0 || since_refresh >= 8) {
            j = fd_jacobian(f, x);
            since_refresh = 0;
        }
        Eigen::MatrixXd jd = j;
        if (beta > 0.0)
            for (Eigen::Index d = 0; d < n; ++d) jd(d, d) += beta;
        Eigen::Map<const Eigen::VectorXd> fv(fx.data(), n);
        const Eigen::VectorXd step = jd.partialPivLu().solve(-fv);
        if (!step.allFinite()) {
            beta = std::max(1e-4, beta * 100.0);
            since_refresh = -1;
            continue;
        }
        const double m0 = merit(fx);
        double t = 1.0;
        bool ok = false;
        while (t > 1e-4) {  // ~13 halvings; deeper cuts never rescue a bad step
            Vec xt(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                xt[i] = x[i] + t * step(static_cast<Eigen::Index>(i));
            Vec ft = f(xt);
            if (merit(ft) <= m0 * (1.0 - 1e-4 * t)) {
                // Broyden update with the accepted step and change in f.
                const Eigen::VectorXd s = t * step;
                Eigen::VectorXd df(n);
                for (Eigen::Index i = 0; i < n; ++i)
                    df(i) = ft[static_cast<std::size_t>(i)] - fx[static_cast<std::size_t>(i)];
                const double ss = s.squaredNorm();
                if (ss > 0.0) j += (df - j * s) * s.transpose() / ss;
                ++since_refresh;
                x = std::move(xt);
                fx = std::move(ft);
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if (ok) {
            beta *= 0.25;
            if (beta < 1e-14) beta = 0.0;
        } else {
            beta = std::max(1e-4, beta * 100.0);
            if (since_refresh > 0) since_refresh = -1;  // retry with a fresh Jacobian
        }
    }
    out.x = std::move(x);
    out.residual = linf_norm(fx);
    out.iterations = it;
    out.converged = out.residual <= tol;
    return out;
}

}  // namespace monokit
