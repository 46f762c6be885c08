#include "monokit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monokit/errors.hpp"

namespace monokit {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckEntry threshold_entry(std::string name, double value, double thresh, std::string witness = {}) {
    CheckEntry e;
    e.name = std::move(name);
    e.pass = value <= thresh;
    e.violation = std::max(0.0, value - thresh);
    e.witness = witness.empty() ? "value=" + fmt(value) + " thresh=" + fmt(thresh)
                                : std::move(witness);
    return e;
}

// Convergence proxy: the final value must clear the threshold and the last
// five values must be non-increasing up to round-off.
CheckEntry trend_entry(std::string name, const std::vector<double>& vals, double thresh) {
    CheckEntry e;
    e.name = std::move(name);
    if (vals.empty()) {
        e.pass = false;
        e.witness = "no schedule points";
        return e;
    }
    double worst = std::max(0.0, vals.back() - thresh);
    // Non-increase is enforced with a floor of 5% of the threshold: once the
    // gaps sit that far below it they are solver noise, not a trend reversal.
    const std::size_t tail = vals.size() >= 5 ? vals.size() - 5 : 0;
    for (std::size_t k = tail + 1; k < vals.size(); ++k) {
        const double growth = vals[k] - vals[k - 1] * (1.0 + 1e-9) - 0.05 * thresh;
        worst = std::max(worst, growth);
    }
    e.pass = worst <= 0.0;
    e.violation = std::max(0.0, worst);
    e.witness = "final=" + fmt(vals.back()) + " thresh=" + fmt(thresh);
    return e;
}

// Pulls a sample into the closure of the domain box (coincides with the
// closed convex hull of D(A) for every catalog operator).
Vec clamp_to_domain(const MonotoneOp& a, Vec x) {
    Vec lo, hi;
    a.domain_bounds(lo, hi);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    if (!a.in_domain(x, 1e-12)) {
        // Non-box domain (e.g. a Euclidean ball): shrink toward 0, which the
        // catalog guarantees is an interior or at least domain point.
        double s = 1.0;
        for (int k = 0; k < 200 && !a.in_domain(x, 1e-12); ++k) {
            s *= 0.9;
            for (auto& v : x) v *= 0.9;
        }
        (void)s;
    }
    return x;
}

}  // namespace

std::string VerifierReport::summary() const {
    std::ostringstream os;
    os << lemma << ": " << (pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : checks)
        os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << "  " << c.witness << "\n";
    return os.str();
}

VerifierReport verify_prop21(const MonotoneOp& a, const Gauge& g,
                             const std::vector<Vec>& x_samples,
                             const std::vector<double>& lambda_schedule, std::uint64_t seed,
                             const SolveOptions& opts) {
    if (x_samples.empty()) throw ValidationError("verify_prop21: no sample points");
    if (lambda_schedule.empty()) throw ValidationError("verify_prop21: empty lambda schedule");
    for (std::size_t k = 1; k < lambda_schedule.size(); ++k)
        if (!(lambda_schedule[k] < lambda_schedule[k - 1]))
            throw ValidationError("verify_prop21: lambda schedule must decrease");

    VerifierReport rep;
    rep.lemma = "resolvent-structure (" + a.name() + ")";
    const double lam0 = lambda_schedule.front();
    const double lam_tail = lambda_schedule.back();

    // (i) monotonicity and boundedness of A_lambda over the sample set.
    {
        std::vector<YosidaResult> ys(x_samples.size());
        for (std::size_t k = 0; k < x_samples.size(); ++k)
            ys[k] = yosida_apply(a, g, lam0, x_samples[k], opts);
        double worst = 0.0;
        double bound = 0.0;
        std::string wit;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            bound = std::max(bound, linf_norm(ys[i].a_lambda));
            for (std::size_t j = i + 1; j < ys.size(); ++j) {
                const double pairing =
                    dot(sub(ys[i].a_lambda, ys[j].a_lambda), sub(x_samples[i], x_samples[j]));
                if (-pairing > worst) {
                    worst = -pairing;
                    wit = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        }
        CheckEntry e;
        e.name = "(i) A_lambda monotone";
        e.pass = worst <= 1e-12;
        e.violation = std::max(0.0, worst - 1e-12);
        e.witness = wit.empty() ? "min pairing >= -1e-12" : wit + " pairing=-" + fmt(worst);
        rep.checks.push_back(e);
        rep.checks.push_back(threshold_entry("(i) A_lambda bounded on samples",
                                             std::isfinite(bound) ? 0.0 : kInf, 0.0,
                                             "max ||A_lambda x|| = " + fmt(bound)));
    }

    // (ii) ||A_lambda x||_q <= ||A^0 x||_q on D(A), uniformly in lambda.
    {
        double worst = 0.0;
        std::string wit = "all samples within min-section bound";
        for (const auto& raw : x_samples) {
            Vec x = clamp_to_domain(a, raw);
            const double m0 = pnorm_raw(a.min_section(x), g.q);
            for (double lam : lambda_schedule) {
                const auto y = yosida_apply(a, g, lam, x, opts);
                // Relative slack: the inner solve is only accurate to a
                // relative tolerance, which scales with the bound itself.
                const double excess = pnorm_raw(y.a_lambda, g.q) - m0 - 1e-7 * (1.0 + m0);
                if (excess > worst) {
                    worst = excess;
                    wit = "lambda=" + fmt(lam) + " ||A_l x||=" + fmt(pnorm_raw(y.a_lambda, g.q)) +
                          " ||A0 x||=" + fmt(m0);
                }
            }
        }
        CheckEntry e;
        e.name = "(ii) ||A_lambda x||_q <= ||A0 x||_q";
        e.pass = worst <= 0.0;
        e.violation = std::max(0.0, worst);
        e.witness = wit;
        rep.checks.push_back(e);
    }

    // (iii) J_lambda x -> x on the closed convex hull of the domain.
    // (v)  A_lambda x -> A^0 x on D(A).
    {
        std::vector<double> gaps_iii(lambda_schedule.size(), 0.0);
        std::vector<double> gaps_v(lambda_schedule.size(), 0.0);
        for (const auto& raw : x_samples) {
            Vec x = clamp_to_domain(a, raw);
            const Vec a0 = a.min_section(x);
            for (std::size_t k = 0; k < lambda_schedule.size(); ++k) {
                const auto y = yosida_apply(a, g, lambda_schedule[k], x, opts);
                gaps_iii[k] = std::max(gaps_iii[k], linf_norm(sub(y.x_lambda, x)));
                gaps_v[k] = std::max(gaps_v[k], linf_norm(sub(y.a_lambda, a0)));
            }
        }
        rep.checks.push_back(trend_entry("(iii) J_lambda x -> x", gaps_iii, 1e-4));
        rep.checks.push_back(trend_entry("(v) A_lambda x -> A0 x", gaps_v, 1e-4));
    }

    // (iv) resolvent is single-valued by construction: the engine certifies
    // each solve through its residual; record the worst one seen.
    {
        double worst = 0.0;
        for (const auto& x : x_samples)
            worst = std::max(worst, yosida_apply(a, g, lam_tail, x, opts).residual);
        rep.checks.push_back(
            threshold_entry("(iv) resolvent inclusion residual", worst, 10.0 * opts.tol));
    }

    // (vi) blow-up of ||A_lambda x|| for x outside the domain closure.
    if (a.domain_is_everything()) {
        CheckEntry e;
        e.name = "(vi) blow-up off closure(D(A))";
        e.pass = true;
        e.witness = "domain closure is the whole space; vacuous";
        rep.checks.push_back(e);
    } else {
        Vec lo, hi;
        a.domain_bounds(lo, hi);
        Vec x_out(static_cast<std::size_t>(a.dim()));
        Rng rng(seed + 17);
        for (std::size_t i = 0; i < x_out.size(); ++i) {
            const double off = 1.0 + rng.uniform(0.0, 1.0);
            if (std::isfinite(hi[i]))
                x_out[i] = hi[i] + off;
            else if (std::isfinite(lo[i]))
                x_out[i] = lo[i] - off;
            else
                x_out[i] = 0.0;
        }
        const double lam_probe = std::min(lam_tail, 1e-6);
        const double nrm = linf_norm(yosida_apply(a, g, lam_probe, x_out, opts).a_lambda);
        CheckEntry e;
        e.name = "(vi) blow-up off closure(D(A))";
        e.pass = nrm >= 1e6;
        e.violation = e.pass ? 0.0 : 1e6 - nrm;
        e.witness = "||A_lambda x_out|| = " + fmt(nrm) + " at lambda = " + fmt(lam_probe);
        rep.checks.push_back(e);
    }

    return rep;
}

VerifierReport verify_uniform_bound(const MonotoneOp& a, const Gauge& g, double ball_radius,
                                    double lambda_lo, double lambda_hi, int samples,
                                    std::uint64_t seed, const SolveOptions& opts) {
    if (!(ball_radius > 0.0) || !(lambda_lo > 0.0) || !(lambda_hi > lambda_lo) || samples < 2)
        throw ValidationError("verify_uniform_bound: bad parameters");

    // Uniformity in lambda is witnessed pointwise: ||A_lambda x|| never
    // exceeds ||A^0 x||, so sup over the ball is bounded by the min-section
    // sup regardless of the sampled lambda. K_emp reports the observed sup.
    double k_emp = 0.0;
    double worst_excess = 0.0;
    Rng rng(seed);
    for (int i = 0; i < 2 * samples; ++i) {
        Vec x = rng.sphere_point(a.dim(), ball_radius * rng.uniform(0.0, 1.0), g.p);
        const double lam = rng.log_uniform(lambda_lo, lambda_hi);
        const double alam = pnorm_raw(yosida_apply(a, g, lam, x, opts).a_lambda, g.q);
        k_emp = std::max(k_emp, alam);
        const Vec a0 = a.min_section(x);
        worst_excess = std::max(worst_excess, alam - pnorm_raw(a0, g.q));
    }

    VerifierReport rep;
    rep.lemma = "uniform Yosida bound (" + a.name() + ")";
    rep.checks.push_back(threshold_entry("K_emp finite", std::isfinite(k_emp) ? 0.0 : kInf, 0.0,
                                         "K_emp=" + fmt(k_emp) + " over ||x||_p<=" +
                                             fmt(ball_radius) + ", lambda in [" + fmt(lambda_lo) +
                                             "," + fmt(lambda_hi) + "]"));
    rep.checks.push_back(threshold_entry("dominated by the min-section sup", worst_excess, 1e-8,
                                         "worst ||A_lambda x|| - ||A^0 x|| = " +
                                             fmt(worst_excess)));
    return rep;
}

VerifierReport quasibound_probe(const MonotoneOp& a, const Gauge& g, double s_bound,
                                double s1_bound, int samples, std::uint64_t seed,
                                const SolveOptions& opts) {
    if (!(s_bound > 0.0) || samples < 2)
        throw ValidationError("quasibound_probe: bad parameters");

    auto sweep = [&](int count, std::uint64_t sd) {
        Rng rng(sd);
        double k_emp = 0.0;
        int accepted = 0;
        for (int i = 0; i < count; ++i) {
            Vec x = rng.sphere_point(a.dim(), s_bound * rng.uniform(0.0, 1.0), g.p);
            const double lam = rng.log_uniform(1e-4, 10.0);
            const auto y = yosida_apply(a, g, lam, x, opts);
            if (dot(y.a_lambda, x) <= s1_bound) {
                ++accepted;
                k_emp = std::max(k_emp, pnorm_raw(y.a_lambda, g.q));
            }
        }
        return std::pair<double, int>{k_emp, accepted};
    };

    const auto [k1, n1] = sweep(samples, seed);
    const auto [k2, n2] = sweep(2 * samples, seed);

    VerifierReport rep;
    rep.lemma = "strong quasiboundedness probe (" + a.name() + ")";
    CheckEntry e;
    e.name = "pairing-constrained samples exist";
    e.pass = n1 > 0;
    e.witness = std::to_string(n1) + "/" + std::to_string(samples) + " samples with <A_l x, x> <= " +
                fmt(s1_bound);
    rep.checks.push_back(e);
    rep.checks.push_back(threshold_entry("bounded on constrained set",
                                         std::isfinite(k1) ? 0.0 : kInf, 0.0, "K_emp=" + fmt(k1)));
    const double growth = k1 > 0.0 ? (k2 - k1) / k1 : (k2 > 0.0 ? kInf : 0.0);
    rep.checks.push_back(threshold_entry("stable under sample doubling", growth, 0.05,
                                         "K_emp=" + fmt(k1) + " doubled=" + fmt(k2) +
                                             " (accepted " + std::to_string(n2) + ")"));
    return rep;
}

VerifierReport verify_joint_continuity(const MonotoneOp& a, const Gauge& g,
                                       const std::vector<std::pair<double, Vec>>& path,
                                       const SolveOptions& opts) {
    if (path.size() < 2)
        throw ValidationError("verify_joint_continuity: path needs >= 2 points (last is the limit)");
    for (const auto& [lam, x] : path) {
        if (!(lam > 0.0)) throw ValidationError("verify_joint_continuity: lambda must be positive");
        if (static_cast<int>(x.size()) != a.dim())
            throw ValidationError("verify_joint_continuity: dimension mismatch");
    }

    const auto& [lam0, x0] = path.back();
    const Vec limit = yosida_apply(a, g, lam0, x0, opts).a_lambda;

    std::vector<double> gaps;
    gaps.reserve(path.size() - 1);
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
        gaps.push_back(
            linf_norm(sub(yosida_apply(a, g, path[k].first, path[k].second, opts).a_lambda, limit)));

    VerifierReport rep;
    rep.lemma = "joint (lambda,x) continuity (" + a.name() + ")";
    rep.checks.push_back(trend_entry("||A_{l_k} x_k - A_{l_0} x_0|| -> 0", gaps, 1e-6));
    return rep;
}

double homogeneity_transmission_residual(const MonotoneOp& a, double gamma, const Gauge& g,
                                         double t, double s, const Vec& x,
                                         const SolveOptions& opts) {
    if (!(t > 0.0)) throw ValidationError("homogeneity transmission: t must be positive");
    if (s < 0.0) throw ValidationError("homogeneity transmission: s must be nonnegative");
    const auto declared = a.homogeneity();
    if (!declared)
        throw ValidationError(a.name() + ": no declared homogeneity degree; usage error");
    if (std::fabs(*declared - gamma) > 1e-12)
        throw ValidationError(a.name() + ": declared homogeneity degree " + std::to_string(*declared) +
                              " does not match requested " + std::to_string(gamma));

    if (s == 0.0) {
        // 0 in A(0) forces A_t(0) = 0; the relative residual is just its norm.
        const Vec zero(x.size(), 0.0);
        return linf_norm(yosida_apply(a, g, t, zero, opts).a_lambda);
    }

    const Vec sx = scale(s, x);
    const auto lhs = yosida_apply(a, g, t, sx, opts);
    const double t2 = t * std::pow(s, gamma + 1.0 - g.p);
    const auto rhs = yosida_apply(a, g, t2, x, opts);

    const double sg = std::pow(s, gamma);
    double res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        res = std::max(res, std::fabs(lhs.a_lambda[i] - sg * rhs.a_lambda[i]));
    res /= 1.0 + sg * linf_norm(rhs.a_lambda);

    if (std::fabs(g.p - (gamma + 1.0)) <= 1e-12) {
        // Gauge lock: A_t is gamma-homogeneous and J_t is 1-homogeneous.
        double dir = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dir = std::max(dir, std::fabs(lhs.a_lambda[i] - sg * rhs.a_lambda[i]));
            dir = std::max(dir, std::fabs(lhs.x_lambda[i] - s * rhs.x_lambda[i]));
        }
        res = std::max(res, dir / (1.0 + s * linf_norm(rhs.x_lambda)));
    }
    return res;
}

VerifierReport verify_homogeneity_transmission(const MonotoneOp& a, double gamma, const Gauge& g,
                                               int samples, std::uint64_t seed,
                                               const SolveOptions& opts) {
    VerifierReport rep;
    rep.lemma = "homogeneity transmission (" + a.name() + ")";
    Rng rng(seed);
    double worst = 0.0;
    std::string wit;
    const double scales[] = {0.0, 0.5, 1.0, 2.0, 7.3};
    for (int k = 0; k < samples; ++k) {
        Vec x = rng.uniform_vec(a.dim(), -2.0, 2.0);
        const double t = rng.log_uniform(1e-3, 1.0);
        for (double s : scales) {
            const double r = homogeneity_transmission_residual(a, gamma, g, t, s, x, opts);
            if (r > worst) {
                worst = r;
                wit = "s=" + fmt(s) + " t=" + fmt(t);
            }
        }
    }
    CheckEntry e;
    e.name = "A_t(sx) = s^gamma A_{t s^{gamma+1-p}} x";
    e.pass = worst <= 1e-8;
    e.violation = std::max(0.0, worst - 1e-8);
    e.witness = "worst relative residual " + fmt(worst) + (wit.empty() ? "" : " at " + wit);
    rep.checks.push_back(e);
    return rep;
}

}  // namespace monokit
