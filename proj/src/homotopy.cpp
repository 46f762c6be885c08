#include "monokit/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monokit/csv.hpp"
#include "monokit/errors.hpp"
#include "monokit/newton.hpp"
#include "monokit/rng.hpp"

namespace monokit {

namespace {

// Boundary sample of the l^p sphere of the given radius: exact endpoints in
// 1-D, deterministic seeded sphere points otherwise.
std::vector<Vec> boundary_points(int dim, double radius, double p, int count, std::uint64_t seed) {
    std::vector<Vec> pts;
    if (dim == 1) {
        pts.push_back(Vec{-radius});
        pts.push_back(Vec{radius});
        return pts;
    }
    Rng rng(seed);
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        pts.push_back(rng.sphere_point(static_cast<std::size_t>(dim), radius, p));
    return pts;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string coords_str(const Vec& x) {
    std::ostringstream os;
    os.precision(6);
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

MapFn make_selection(const Multifunction& t, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("make_selection: epsilon must be positive");
    if (!t.lower) throw ValidationError("make_selection: empty multifunction");
    if (t.is_singleton()) return t.lower;

    auto midpoint = [lo = t.lower, hi = t.upper](const Vec& x) {
        Vec l = lo(x);
        Vec u = hi(x);
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] > u[i] + 1e-12)
                throw MalformedMultifunctionError(
                    "multifunction lower bound exceeds upper bound at coordinate " +
                    std::to_string(i));
            l[i] = 0.5 * (l[i] + u[i]);
        }
        return l;
    };

    // Mollify with a compact bump b(r) = exp(-1/(1-r^2)) sampled at the
    // center and at +-epsilon/2 along each axis.
    const double w0 = std::exp(-1.0);
    const double w1 = std::exp(-1.0 / (1.0 - 0.25));
    return [midpoint, epsilon, w0, w1](const Vec& x) {
        Vec acc = midpoint(x);
        for (auto& v : acc) v *= w0;
        double wsum = w0;
        Vec shifted = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double s : {-0.5, 0.5}) {
                shifted[i] = x[i] + s * epsilon;
                const Vec m = midpoint(shifted);
                for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += w1 * m[j];
                wsum += w1;
            }
            shifted[i] = x[i];
        }
        for (auto& v : acc) v /= wsum;
        return acc;
    };
}

InclusionProblem make_problem(OpPtr a, MapFn c, Multifunction t, double g1_radius,
                              double g2_radius, std::optional<Vec> v0_star, SolveOptions opts) {
    if (!a) throw ValidationError("make_problem: missing operator A");
    if (!c) throw ValidationError("make_problem: missing map C");
    if (!(0.0 < g2_radius && g2_radius < g1_radius))
        throw ValidationError("make_problem: need 0 < G2_radius < G1_radius");

    const auto gamma = a->homogeneity();
    if (!gamma || !(*gamma > 0.0))
        throw ValidationError("make_problem: A must declare a positive homogeneity degree");
    if (!check_homogeneous(*a, *gamma, 50, 42).pass())
        throw ValidationError("make_problem: A fails its declared homogeneity check");
    const Vec zero(static_cast<std::size_t>(a->dim()), 0.0);
    if (a->graph_distance(zero, zero) > 1e-12)
        throw ValidationError("make_problem: A(0) must contain 0");

    InclusionProblem p;
    p.a = std::move(a);
    p.gamma = *gamma;
    p.gauge = Gauge(*gamma + 1.0);  // gauge lock: A_t^phi inherits the homogeneity
    p.c = std::move(c);
    p.t = std::move(t);
    if (!p.t.lower) p.t = Multifunction::zero(p.a->dim());
    p.g1_radius = g1_radius;
    p.g2_radius = g2_radius;
    p.v0_star = std::move(v0_star);
    p.opts = opts;
    return p;
}

MapFn regularized_map(const InclusionProblem& p, double t, double epsilon) {
    if (!(t > 0.0)) throw ValidationError("regularized_map: t must be positive");
    MapFn q = make_selection(p.t, epsilon);
    return [a = p.a, g = p.gauge, c = p.c, q = std::move(q), t, opts = p.opts](const Vec& x) {
        Vec r = yosida_apply(*a, g, t, x, opts).a_lambda;
        const Vec cx = c(x);
        const Vec qx = q(x);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += cx[i] + qx[i];
        return r;
    };
}

RegularizedSolution solve_regularized(const InclusionProblem& p, double t, double epsilon,
                                      const Vec& x0, double tol) {
    const MapFn r = regularized_map(p, t, epsilon);
    const NewtonOutcome out = newton_solve(r, x0, tol, p.opts.max_iter);
    if (!out.converged)
        throw NonconvergenceError("solve_regularized: Newton cap at t=" + fmt(t), out.residual,
                                  out.iterations);
    return {out.x, out.residual, out.iterations};
}

DiagnosticReport check_H1(const InclusionProblem& p, double t, double epsilon,
                          const std::vector<double>& tau_grid, int boundary_samples,
                          std::uint64_t seed, double margin) {
    DiagnosticReport rep;
    rep.name = "H1 ray diagnostic on boundary(G1)";
    rep.margin = margin;
    if (!p.v0_star) {
        rep.skipped = true;
        rep.note = "v0* absent; diagnostic skipped";
        return rep;
    }
    const MapFn r = regularized_map(p, t, epsilon);
    const auto pts = boundary_points(p.dim(), p.g1_radius, p.gauge.p, boundary_samples, seed);
    for (const auto& x : pts) {
        const Vec rx = r(x);
        for (double lam : tau_grid) {
            double gap = 0.0;
            for (std::size_t i = 0; i < rx.size(); ++i)
                gap = std::max(gap, std::fabs(rx[i] - lam * (*p.v0_star)[i]));
            ++rep.samples;
            if (gap < margin) rep.hits.push_back({lam, x, gap});
        }
    }
    return rep;
}

DiagnosticReport check_H2(const InclusionProblem& p, double t, double epsilon,
                          const std::vector<double>& lambda_grid, int boundary_samples,
                          std::uint64_t seed, double margin) {
    DiagnosticReport rep;
    rep.name = "H2 ray diagnostic on boundary(G2)";
    rep.margin = margin;
    const MapFn r = regularized_map(p, t, epsilon);
    const auto pts = boundary_points(p.dim(), p.g2_radius, p.gauge.p, boundary_samples, seed);
    for (const auto& x : pts) {
        const Vec rx = r(x);
        const Vec jx = normalized_duality_raw(x, p.gauge.p);
        for (double lam : lambda_grid) {
            double gap = 0.0;
            for (std::size_t i = 0; i < rx.size(); ++i)
                gap = std::max(gap, std::fabs(rx[i] + lam * jx[i]));
            ++rep.samples;
            if (gap < margin) rep.hits.push_back({lam, x, gap});
        }
    }
    return rep;
}

void ContinuationTrace::write_csv(std::ostream& os) const {
    std::size_t n = 0;
    for (const auto& r : records) n = std::max(n, r.x.size());
    std::vector<std::string> head = {"stage", "t", "eps", "seed"};
    for (std::size_t i = 0; i < n; ++i) head.push_back("x" + std::to_string(i));
    head.push_back("residual");
    head.push_back("iters");
    csv_row(os, head);
    for (const auto& r : records) {
        std::vector<std::string> row = {std::to_string(r.stage), csv_num(r.t), csv_num(r.eps),
                                        std::to_string(r.seed_index)};
        for (std::size_t i = 0; i < n; ++i)
            row.push_back(i < r.x.size() ? csv_num(r.x[i]) : std::string{});
        row.push_back(csv_num(r.residual));
        row.push_back(std::to_string(r.iterations));
        csv_row(os, row);
    }
}

std::string ContinuationTrace::summary() const {
    std::ostringstream os;
    os << "degrees: G1 = "
       << (degrees.d1.value ? std::to_string(*degrees.d1.value) : std::string("uncertified"))
       << (degrees.d1.certified ? "" : " (uncertified)") << ", G2 = "
       << (degrees.d2.value ? std::to_string(*degrees.d2.value) : std::string("uncertified"))
       << (degrees.d2.certified ? "" : " (uncertified)") << "\n";
    os << "conclusion: " << degrees.conclusion << "\n";
    os << "outcome: " << outcome << "\n";
    for (const auto& c : candidates)
        os << "candidate " << coords_str(c.x) << "  residual=" << fmt(c.residual)
           << "  graph-defect=" << fmt(c.graph_defect) << "  [" << c.classification << "]\n";
    return os.str();
}

std::vector<double> default_schedule(int stages) {
    std::vector<double> t(static_cast<std::size_t>(stages));
    for (int k = 0; k < stages; ++k) t[static_cast<std::size_t>(k)] = std::pow(10.0, -1.0 - 0.5 * k);
    return t;
}

ContinuationTrace annulus_search(const InclusionProblem& p, const std::vector<double>& t_schedule,
                                 const std::vector<double>& eps_schedule,
                                 const MultistartConfig& cfg) {
    if (t_schedule.empty() || eps_schedule.size() != t_schedule.size())
        throw ValidationError("annulus_search: schedules must be nonempty and equally long");
    for (std::size_t k = 1; k < t_schedule.size(); ++k)
        if (!(t_schedule[k] < t_schedule[k - 1]) || !(eps_schedule[k] < eps_schedule[k - 1]))
            throw ValidationError("annulus_search: schedules must be strictly decreasing");
    if (!(t_schedule.back() <= 1e-4))
        throw ValidationError("annulus_search: final t must be <= 1e-4");

    const int n = p.dim();
    ContinuationTrace trace;

    // (a) First-stage degree certificates on G1 and G2.
    const MapFn r0 = regularized_map(p, t_schedule.front(), eps_schedule.front());
    const Vec origin(static_cast<std::size_t>(n), 0.0);
    trace.degrees = excision_report(r0, Region{origin, p.g1_radius, p.gauge.p},
                                    Region{origin, p.g2_radius, p.gauge.p}, cfg);

    const bool have_values = trace.degrees.d1.value && trace.degrees.d2.value;
    const bool differ = have_values && *trace.degrees.d1.value != *trace.degrees.d2.value;
    const bool certified = trace.degrees.d1.certified && trace.degrees.d2.certified;
    if (certified && !differ) {
        trace.outcome = "excision-inconclusive";
        return trace;
    }
    // Uncertified degrees (n >= 3 heuristics) do not block the search.

    // (b) Multistart + deflation at the first stage, restricted to the
    // closed annulus, processed in seed order for determinism.
    const int starts = cfg.starts_per_dim * n;
    const double mid_radius = 0.5 * (p.g1_radius + p.g2_radius);
    Rng rng(cfg.seed);
    std::vector<Vec> x0(static_cast<std::size_t>(starts));
    for (auto& x : x0) x = rng.sphere_point(static_cast<std::size_t>(n), mid_radius, p.gauge.p);

    struct Branch {
        int seed_index;
        Vec x;
        double residual;
        int iterations;
        std::vector<double> gaps;
    };
    std::vector<Branch> branches;
    std::vector<Vec> roots;  // deflation anchors
    // The Yosida value carries rounding noise of order eps/sqrt(t); at the
    // deep end of the schedule that exceeds 1e-10, so the stage tolerance
    // is floored at 5e-9 (still an order below the 1e-8 certificate level).
    const double tol = std::max(p.opts.tol, 5e-9);

    for (int s = 0; s < starts; ++s) {
        MapFn deflated = [&r0, &roots](const Vec& x) {
            Vec f = r0(x);
            double m = 1.0;
            for (const auto& rj : roots) {
                const double d2 = std::max(1e-300, dot(sub(x, rj), sub(x, rj)));
                m *= 1.0 + 1.0 / d2;
            }
            for (auto& v : f) v *= m;
            return f;
        };
        const NewtonOutcome out = newton_solve(deflated, x0[static_cast<std::size_t>(s)],
                                               tol, p.opts.max_iter);
        if (!out.converged) continue;
        const Vec fx = r0(out.x);
        if (linf_norm(fx) > tol) continue;  // deflation artifact, not a true root
        const double nrm = pnorm_raw(out.x, p.gauge.p);
        if (nrm < p.g2_radius - 1e-9 || nrm > p.g1_radius + 1e-9) continue;
        bool dup = false;
        for (const auto& rj : roots)
            if (linf_norm(sub(out.x, rj)) < 1e-4) {
                dup = true;
                break;
            }
        if (dup) continue;
        roots.push_back(out.x);
        branches.push_back({s, out.x, linf_norm(fx), out.iterations, {}});
    }

    if (branches.empty()) {
        if (differ)
            throw SearchFailureError(
                "annulus_search: degrees differ (" + std::to_string(*trace.degrees.d1.value) +
                " vs " + std::to_string(*trace.degrees.d2.value) +
                ") but multistart found no annulus candidate at t=" + fmt(t_schedule.front()));
        trace.outcome = "excision-inconclusive";
        return trace;
    }

    // (c) Continue each branch down the schedules. Roots of the first-stage
    // regularized map may cease to exist at smaller t (the branch folds);
    // such branches are dropped, not treated as failures of the search.
    std::size_t dead = 0;
    for (auto& b : branches) {
        trace.records.push_back(
            {0, t_schedule.front(), eps_schedule.front(), b.seed_index, b.x, b.residual,
             b.iterations});
        bool alive = true;
        for (std::size_t k = 1; k < t_schedule.size(); ++k) {
            RegularizedSolution sol;
            try {
                sol = solve_regularized(p, t_schedule[k], eps_schedule[k], b.x, tol);
            } catch (const NonconvergenceError&) {
                alive = false;
                break;
            }
            b.gaps.push_back(linf_norm(sub(sol.x, b.x)));
            b.x = sol.x;
            b.residual = sol.residual;
            b.iterations = sol.iterations;
            trace.records.push_back({static_cast<int>(k), t_schedule[k], eps_schedule[k],
                                     b.seed_index, b.x, b.residual, b.iterations});
        }
        if (!alive) {
            b.seed_index = -1;  // marks the branch as folded
            ++dead;
        }
    }
    std::erase_if(branches, [](const Branch& b) { return b.seed_index < 0; });
    if (branches.empty()) {
        if (differ)
            throw SearchFailureError(
                "annulus_search: all " + std::to_string(dead) +
                " first-stage branches folded before reaching the final stage");
        trace.outcome = "excision-inconclusive";
        return trace;
    }

    // Dedupe limits, tie-breaking lexicographically by coordinates.
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) { return lex_less(a.x, b.x); });
    const MapFn q_final = make_selection(p.t, eps_schedule.back());
    for (const auto& b : branches) {
        bool dup = false;
        for (const auto& c : trace.candidates)
            if (linf_norm(sub(b.x, c.x)) < 1e-4) {
                dup = true;
                break;
            }
        if (dup) continue;
        CandidateInfo info;
        info.x = b.x;
        info.residual = b.residual;
        info.continuation_gaps = b.gaps;
        // Polish on the unregularized map when A is single-valued: the
        // continuation limit is still O(sqrt(t_final)) from the true root.
        if (p.a->is_smooth()) {
            const MapFn raw = [&](const Vec& x) {
                Vec f = p.a->value(x);
                const Vec cx = p.c(x);
                const Vec qx = q_final(x);
                for (std::size_t i = 0; i < f.size(); ++i) f[i] += cx[i] + qx[i];
                return f;
            };
            const NewtonOutcome pol = newton_solve(raw, info.x, 1e-11, 100);
            const double moved = linf_norm(sub(pol.x, info.x));
            if (pol.converged && moved < 0.1 * (p.g1_radius - p.g2_radius)) {
                info.x = pol.x;
                info.residual = pol.residual;
            }
        }
        const double nrm = pnorm_raw(info.x, p.gauge.p);
        info.classification = (nrm < p.g2_radius * (1.0 - 1e-3) || nrm > p.g2_radius * (1.0 + 1e-3))
                                  ? "interior"
                                  : "boundary-suspect";
        // (d) Final graph check: (x0, -Cx0 - q_eps x0) must lie on Gr(A).
        Vec y = p.c(info.x);
        const Vec qx = q_final(info.x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = -y[i] - qx[i];
        info.graph_defect = p.a->graph_distance(info.x, y);
        trace.candidates.push_back(std::move(info));
    }

    trace.outcome = "candidates-found";
    return trace;
}

}  // namespace monokit
