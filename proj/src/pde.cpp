#include "monokit/pde.hpp"

#include <cmath>

#include "monokit/csv.hpp"
#include "monokit/errors.hpp"
#include "monokit/newton.hpp"

namespace monokit {

namespace {

MapFn make_c_map(const EllipticSpec& spec, int n) {
    Vec g = spec.g;
    if (g.empty()) g.assign(static_cast<std::size_t>(n), 0.0);
    return [c_lin = spec.c_lin, c_phi = spec.c_phi, p = spec.p, g = std::move(g)](const Vec& u) {
        Vec out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            out[i] = c_lin * u[i] + c_phi * signed_power(p, u[i]) + g[i];
        return out;
    };
}

Multifunction make_reaction(const EllipticSpec& spec, int n) {
    if (!spec.has_reaction) return Multifunction::zero(n);
    auto affine = [](double c0, double c1) {
        return [c0, c1](const Vec& u) {
            Vec out(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) out[i] = c0 + c1 * u[i];
            return out;
        };
    };
    return Multifunction::interval(affine(spec.react_lo_const, spec.react_lo_lin),
                                   affine(spec.react_hi_const, spec.react_hi_lin));
}

}  // namespace

EllipticProblem build_elliptic(const EllipticSpec& spec) {
    if (!(spec.p > 1.0))
        throw ValidationError("(H5)/(H9): PDE exponent must satisfy p > 1");
    if (spec.nx < 1 || spec.ny < 0)
        throw ValidationError("grid: need nx >= 1 interior nodes (ny >= 0)");
    if (!(spec.h > 0.0)) throw ValidationError("grid: spacing h must be positive");
    if (!(spec.delta1 > spec.delta2 && spec.delta2 > 0.0))
        throw ValidationError("annulus radii: need delta1 > delta2 > 0");
    if (spec.radius_norm != "nodal-lp")
        throw ValidationError("radius_norm: only 'nodal-lp' is implemented (the W^{1,p} "
                              "seminorm option is recorded but not wired)");
    const int n = spec.ny > 0 ? spec.nx * spec.ny : spec.nx;
    if (!spec.g.empty() && static_cast<int>(spec.g.size()) != n)
        throw ValidationError("(H5) forcing g: length must match the node count");
    if (spec.has_reaction) {
        // Affine bounds make (H11) |H| <= a(x) + c2|r| automatic, but the
        // interval must be ordered; probe a few representative values.
        for (double u : {-10.0, -1.0, 0.0, 1.0, 10.0})
            if (spec.react_lo_const + spec.react_lo_lin * u >
                spec.react_hi_const + spec.react_hi_lin * u + 1e-12)
                throw ValidationError("(H10): reaction lower bound exceeds upper bound at r = " +
                                      std::to_string(u));
    }

    EllipticProblem prob;
    prob.spec = spec;
    prob.n_nodes = n;
    if (spec.a_scale < 0.0) throw ValidationError("(H13): a_scale must be nonnegative");
    prob.a = spec.ny > 0 ? make_plaplacian_2d(spec.nx, spec.ny, spec.h, spec.p)
                         : make_plaplacian_1d(spec.nx, spec.h, spec.p);
    if (spec.a_scale != 1.0) prob.a = make_scaled(spec.a_scale, prob.a);
    if (!check_monotone(*prob.a, 200, 42).pass())
        throw ValidationError("(H13): discrete p-Laplacian failed the monotonicity check");
    if (!check_homogeneous(*prob.a, spec.p - 1.0, 50, 42).pass())
        throw ValidationError("(H9)/(H16): A-part failed the homogeneity check with gamma = p-1");

    prob.c = make_c_map(spec, n);
    prob.reaction = make_reaction(spec, n);
    prob.growth_a = std::max(std::fabs(spec.react_lo_const), std::fabs(spec.react_hi_const));
    prob.growth_c2 = std::max(std::fabs(spec.react_lo_lin), std::fabs(spec.react_hi_lin));

    // Nonzero constant forcing breaks C(0)=0 but stays a continuous bounded
    // perturbation; the inclusion wiring is unchanged.
    prob.inclusion = make_problem(prob.a, prob.c, prob.reaction, spec.delta1, spec.delta2);
    return prob;
}

ContinuationTrace solve_elliptic_annulus(const EllipticProblem& problem,
                                         const std::vector<double>& t_schedule,
                                         const std::vector<double>& eps_schedule,
                                         const MultistartConfig& cfg) {
    return annulus_search(problem.inclusion, t_schedule, eps_schedule, cfg);
}

ParabolicProblem build_parabolic(const EllipticSpec& spatial, double horizon, double dt,
                                 ForcingFn forcing) {
    if (!(horizon > 0.0)) throw ValidationError("parabolic: horizon must be positive");
    if (!(dt > 0.0)) throw ValidationError("parabolic: step dt must be positive");
    if (!forcing) throw ValidationError("parabolic: missing forcing h(x,t)");

    ParabolicProblem p;
    // The annulus radii are irrelevant to time stepping; build validates the
    // rest of the spatial spec.
    p.spatial = build_elliptic(spatial);
    p.horizon = horizon;
    p.dt = dt;
    p.forcing = std::move(forcing);

    // Per-step operator S_k(v) = (v-u^k)/dt + Av + Cv - h^k: monotone when
    // 1/dt + c_lin >= 0 (A and the c_phi term are monotone on their own).
    if (spatial.c_lin < 0.0 && 1.0 / dt + spatial.c_lin < 0.0)
        p.dt_restriction = "step operator may lose monotonicity: need dt <= " +
                           std::to_string(1.0 / -spatial.c_lin);
    else
        p.dt_restriction = "monotone step: 1/dt + c_lin >= 0 holds";

    // Probe the forcing for finiteness on the grid x step lattice.
    const int steps = static_cast<int>(std::ceil(horizon / dt));
    for (int k = 0; k <= steps; ++k)
        for (int i = 0; i < p.spatial.n_nodes; ++i)
            if (!std::isfinite(p.forcing(i, k * dt)))
                throw ValidationError("parabolic: non-finite forcing at node " + std::to_string(i) +
                                      ", t = " + std::to_string(k * dt));
    return p;
}

void Trajectory::write_csv(std::ostream& os, double h) const {
    csv_row(os, {"step", "time", "node", "x", "value"});
    for (std::size_t k = 0; k < states.size(); ++k)
        for (std::size_t i = 0; i < states[k].size(); ++i)
            csv_row(os, {std::to_string(k), csv_num(times[k]), std::to_string(i),
                         csv_num(h * (static_cast<double>(i) + 1.0)), csv_num(states[k][i])});
}

Trajectory step_parabolic(const ParabolicProblem& problem, int steps) {
    if (steps < 1) throw ValidationError("step_parabolic: need steps >= 1");
    const auto& sp = problem.spatial;
    const auto n = static_cast<std::size_t>(sp.n_nodes);
    const double dt = problem.dt;
    // The reaction enters through the same selection used by the elliptic
    // solve, at a fixed small mollification width.
    const MapFn q = make_selection(sp.reaction, 1e-8);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.emplace_back(n, 0.0);  // u(.,0) = 0

    Vec u(n, 0.0);
    for (int k = 0; k < steps; ++k) {
        const double t_next = (k + 1) * dt;
        Vec h_k(n);
        for (std::size_t i = 0; i < n; ++i)
            h_k[i] = problem.forcing(static_cast<int>(i), t_next);

        MapFn s_k = [&](const Vec& v) {
            Vec f = sp.a->value(v);
            const Vec cv = sp.c(v);
            const Vec qv = q(v);
            for (std::size_t i = 0; i < n; ++i)
                f[i] += (v[i] - u[i]) / dt + cv[i] + qv[i] - h_k[i];
            return f;
        };
        // Tight per-step residual: step errors accumulate through the
        // recurrence, so matching closed forms to 1e-12 needs ~1e-13 here.
        const NewtonOutcome out = newton_solve(s_k, u, 1e-13, sp.inclusion.opts.max_iter);
        if (!out.converged)
            throw NonconvergenceError("step_parabolic: step " + std::to_string(k + 1) +
                                          " failed to converge",
                                      out.residual, out.iterations);
        u = out.x;
        traj.times.push_back(t_next);
        traj.states.push_back(u);
        traj.residuals.push_back(out.residual);
    }
    return traj;
}

}  // namespace monokit
