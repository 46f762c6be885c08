#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monokit/operators.hpp"
#include "monokit/yosida.hpp"

namespace monokit {

/// Executable verifier outcome. Convergence claims are tested as a
/// last-value threshold plus a monotone-trend check over the final five
/// schedule points; limits themselves are not machine-checkable.
struct VerifierReport {
    std::string lemma;
    std::vector<CheckEntry> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double max_violation() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.violation);
        return m;
    }
    std::string summary() const;
};

/// Resolvent/Yosida structure suite: monotonicity and boundedness of
/// A_lambda, the min-section bound, resolvent convergence on the closed
/// convex hull of D(A), Yosida convergence to the min section on D(A),
/// and blow-up off the domain closure.
VerifierReport verify_prop21(const MonotoneOp& a, const Gauge& g,
                             const std::vector<Vec>& x_samples,
                             const std::vector<double>& lambda_schedule, std::uint64_t seed,
                             const SolveOptions& opts = {});

/// Uniform bound of ||A_lambda x|| over a ball and a lambda interval;
/// reports the empirical constant and checks stability under sample doubling.
VerifierReport verify_uniform_bound(const MonotoneOp& a, const Gauge& g, double ball_radius,
                                    double lambda_lo, double lambda_hi, int samples,
                                    std::uint64_t seed, const SolveOptions& opts = {});

/// Strong-quasiboundedness probe: among samples with ||x|| <= S and
/// <A_lambda x, x> <= S1, reports the empirical bound on ||A_lambda x||.
VerifierReport quasibound_probe(const MonotoneOp& a, const Gauge& g, double s_bound,
                                double s1_bound, int samples, std::uint64_t seed,
                                const SolveOptions& opts = {});

/// Joint continuity of (lambda, x) -> A_lambda x along a path whose last
/// entry is the limit point; passes when the final gap is below 1e-6.
VerifierReport verify_joint_continuity(const MonotoneOp& a, const Gauge& g,
                                       const std::vector<std::pair<double, Vec>>& path,
                                       const SolveOptions& opts = {});

/// Homogeneity transmission A_t(sx) = s^gamma A_{t s^{gamma+1-p}} x.
/// Returns the worst relative residual; when p = gamma+1 it additionally
/// checks degree-gamma homogeneity of A_t and degree-1 homogeneity of J_t.
double homogeneity_transmission_residual(const MonotoneOp& a, double gamma, const Gauge& g,
                                         double t, double s, const Vec& x,
                                         const SolveOptions& opts = {});

VerifierReport verify_homogeneity_transmission(const MonotoneOp& a, double gamma, const Gauge& g,
                                               int samples, std::uint64_t seed,
                                               const SolveOptions& opts = {});

}  // namespace monokit
