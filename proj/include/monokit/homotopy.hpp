#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "monokit/degree.hpp"
#include "monokit/gauge.hpp"
#include "monokit/operators.hpp"
#include "monokit/yosida.hpp"

namespace monokit {

/// Interval-valued perturbation T(x) = [lower(x), upper(x)] componentwise,
/// or a singleton map.
struct Multifunction {
    MapFn lower;
    MapFn upper;  // null for singletons
    bool is_singleton() const { return !upper; }

    static Multifunction singleton(MapFn g) { return {std::move(g), nullptr}; }
    static Multifunction interval(MapFn lo, MapFn hi) { return {std::move(lo), std::move(hi)}; }
    static Multifunction zero(int n) {
        return singleton([n](const Vec&) { return Vec(static_cast<std::size_t>(n), 0.0); });
    }
};

/// Continuous selection within epsilon of [lower, upper]: the interval
/// midpoint smoothed by a compact bump of width epsilon (singletons are
/// returned unchanged). Throws MalformedMultifunctionError when a lower
/// bound exceeds its upper bound.
MapFn make_selection(const Multifunction& t, double epsilon);

/// The inclusion A x + C x + T x ∋ 0 on the annulus between the l^p balls
/// of radii g2_radius < g1_radius. The gauge is locked to p = gamma + 1,
/// which is exactly when the Yosida approximant inherits the homogeneity
/// of A.
struct InclusionProblem {
    OpPtr a;
    double gamma = 1.0;
    Gauge gauge{2.0};
    MapFn c;
    Multifunction t;
    double g1_radius = 1.0;
    double g2_radius = 0.5;
    std::optional<Vec> v0_star;
    SolveOptions opts;

    int dim() const { return a->dim(); }
};

InclusionProblem make_problem(OpPtr a, MapFn c, Multifunction t, double g1_radius,
                              double g2_radius, std::optional<Vec> v0_star = std::nullopt,
                              SolveOptions opts = {});

/// The regularized map x -> A_t^phi x + C x + q_eps x.
MapFn regularized_map(const InclusionProblem& p, double t, double epsilon);

struct RegularizedSolution {
    Vec x;
    double residual = 0.0;
    int iterations = 0;
};

RegularizedSolution solve_regularized(const InclusionProblem& p, double t, double epsilon,
                                      const Vec& x0, double tol);

/// Sampled boundary diagnostics for the ray conditions. A hit is a sampled
/// near-equality; an empty list certifies nothing beyond the sample set.
struct RayHit {
    double lambda = 0.0;
    Vec x;
    double gap = 0.0;
};

struct DiagnosticReport {
    std::string name;
    bool skipped = false;
    std::string note;
    std::vector<RayHit> hits;
    double margin = 1e-3;
    int samples = 0;
};

DiagnosticReport check_H1(const InclusionProblem& p, double t, double epsilon,
                          const std::vector<double>& tau_grid, int boundary_samples,
                          std::uint64_t seed = 42, double margin = 1e-3);

DiagnosticReport check_H2(const InclusionProblem& p, double t, double epsilon,
                          const std::vector<double>& lambda_grid, int boundary_samples,
                          std::uint64_t seed = 42, double margin = 1e-3);

struct StageRecord {
    int stage = 0;
    double t = 0.0;
    double eps = 0.0;
    int seed_index = 0;  // multistart branch index
    Vec x;
    double residual = 0.0;
    int iterations = 0;
};

struct CandidateInfo {
    Vec x;
    double residual = 0.0;
    double graph_defect = 0.0;  // distance of (x, -Cx - q_eps x) to Gr(A)
    std::string classification;  // "interior" | "boundary-suspect"
    std::vector<double> continuation_gaps;
};

struct ContinuationTrace {
    std::vector<StageRecord> records;
    ExcisionReport degrees;
    std::vector<CandidateInfo> candidates;
    std::string outcome;  // "candidates-found" | "excision-inconclusive"

    void write_csv(std::ostream& os) const;
    std::string summary() const;
};

/// Degree-certificate + multistart-deflation continuation down the
/// (t, eps) schedules. Equal certified degrees short-circuit to an
/// inconclusive trace; unequal (or uncertified, n >= 3) degrees with no
/// surviving candidate raise SearchFailureError.
ContinuationTrace annulus_search(const InclusionProblem& p, const std::vector<double>& t_schedule,
                                 const std::vector<double>& eps_schedule,
                                 const MultistartConfig& cfg = {});

/// t_k = 10^{-1-k/2}; the default continuation grid.
std::vector<double> default_schedule(int stages);

}  // namespace monokit
