#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monokit/pvector.hpp"
#include "monokit/rng.hpp"

namespace monokit {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
    double dist(double v) const {
        if (v < lo) return lo - v;
        if (v > hi) return v - hi;
        return 0.0;
    }
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

/// A maximal monotone graph on the real line: a closed domain interval and
/// an image-interval rule. At finite domain endpoints the image is extended
/// by the outward normal cone, which is what maximality requires.
class ScalarGraph {
public:
    ScalarGraph(double dmin, double dmax, std::function<Interval(double)> rule, std::string name)
        : dmin_(dmin), dmax_(dmax), rule_(std::move(rule)), name_(std::move(name)) {}

    double dmin() const { return dmin_; }
    double dmax() const { return dmax_; }
    const std::string& name() const { return name_; }
    bool in_domain(double y, double tol = 0.0) const { return y >= dmin_ - tol && y <= dmax_ + tol; }

    /// Image set at y including the normal-cone extension at endpoints.
    Interval image(double y) const {
        Interval im = rule_(y);
        if (y <= dmin_) im.lo = -kInf;
        if (y >= dmax_) im.hi = kInf;
        return im;
    }

    double min_section(double y) const { return image(y).clamp(0.0); }

private:
    double dmin_, dmax_;
    std::function<Interval(double)> rule_;
    std::string name_;
};

ScalarGraph power_rule(double gamma);                    // y -> |y|^{gamma-1} y on R
ScalarGraph remark12_rule(double gamma);                 // domain [0,inf), y^gamma, image (-inf,0] at 0
ScalarGraph abs_subdiff_rule(double weight);             // subdifferential of weight*|.|
ScalarGraph box_normal_cone_rule(double a, double b);    // normal cone of [a,b]
ScalarGraph linear_rule(double a);                       // y -> a*y

/// Exact l_inf distance from the point (x, y) to the graph of a scalar
/// maximal monotone rule; continuous across kinks and domain endpoints.
double scalar_graph_point_distance(const ScalarGraph& r, double x, double y);
ScalarGraph zero_rule();

struct GraphPoint {
    Vec x;
    Vec y;
};

/// Intensional representation of a maximal monotone operator A on R^n.
/// Maximality is by construction; the catalog probes it through the range
/// condition (every resolvent solve must succeed).
class MonotoneOp {
public:
    virtual ~MonotoneOp() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;

    /// Declared positive-homogeneity degree, if any.
    virtual std::optional<double> homogeneity() const { return std::nullopt; }

    virtual bool in_domain(const Vec& x, double tol = 0.0) const = 0;

    /// Whether the closure of D(A) is all of R^n.
    virtual bool domain_is_everything() const { return true; }

    /// Componentwise domain bounds for samplers; +-inf where unbounded.
    virtual void domain_bounds(Vec& lo, Vec& hi) const {
        lo.assign(static_cast<std::size_t>(dim()), -kInf);
        hi.assign(static_cast<std::size_t>(dim()), kInf);
    }

    /// Least-l^q-norm element of A(x). Throws OutOfDomainError off D(A).
    virtual Vec min_section(const Vec& x) const = 0;

    /// l^inf distance from y to the set A(x); +inf when x is off D(A).
    virtual double graph_distance(const Vec& x, const Vec& y) const = 0;

    /// A sample point of Gr(A), used by the structural checkers.
    virtual GraphPoint sample_graph(Rng& rng) const;

    // --- capabilities consumed by the resolvent engine ---

    /// Coordinatewise product of scalar maximal monotone graphs.
    virtual bool is_separable() const { return false; }
    virtual const ScalarGraph& coord_graph(int) const {
        throw std::logic_error(name() + ": not separable");
    }

    /// Single-valued on all of R^n with an evaluable (generalized) Jacobian.
    virtual bool is_smooth() const { return false; }
    virtual Vec value(const Vec&) const { throw std::logic_error(name() + ": no pointwise value"); }
    /// J += scale * DA(x), with kinks smoothed by mu (Newton use only).
    virtual void add_jacobian(const Vec& x, Eigen::MatrixXd& J, double scale, double mu) const;

    /// Closed-form Euclidean resolvent (I + lambda A)^{-1}; used when the
    /// gauge is p = 2 and no separable/smooth route exists.
    virtual bool has_l2_resolvent() const { return false; }
    virtual Vec l2_resolvent(const Vec&, double /*lambda*/) const {
        throw std::logic_error(name() + ": no l2 resolvent");
    }
};

using OpPtr = std::shared_ptr<const MonotoneOp>;

// Catalog constructors.
OpPtr make_diagonal(std::vector<ScalarGraph> rules, std::optional<double> gamma, std::string name);
OpPtr make_power_graph(int n, double gamma);
OpPtr make_remark12(double gamma);
OpPtr make_abs_subdiff(int n, double weight = 1.0);
OpPtr make_box_normal_cone(int n, double a, double b);
OpPtr make_zero(int n);
OpPtr make_linear(Eigen::MatrixXd m);
OpPtr make_scaled_identity(int n, double a);
OpPtr make_ball_normal_cone(int n, double radius);  // Euclidean ball
OpPtr make_plaplacian_1d(int n_interior, double h, double p);
OpPtr make_plaplacian_2d(int nx, int ny, double h, double p);
OpPtr make_sum(std::vector<OpPtr> terms);
OpPtr make_scaled(double c, OpPtr op);

/// Discrete p-Dirichlet energy E(u) = (1/p) sum |du/h|^p whose exact
/// gradient is the p-Laplacian stencil (2-D sums both axis differences).
double plaplacian_energy(const MonotoneOp& op, const Vec& u);

struct CheckEntry {
    std::string name;
    bool pass = true;
    double violation = 0.0;
    std::string witness;
};

struct CheckReport {
    std::string subject;
    std::vector<CheckEntry> entries;
    bool pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    double max_violation() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.violation);
        return m;
    }
};

/// Samples pairs of graph points and reports any with <u-v, x-y> < -1e-12.
CheckReport check_monotone(const MonotoneOp& a, int sample_count, std::uint64_t seed);

/// Verifies s^gamma * y in A(s x) for graph samples and s in
/// {0, 0.5, 1, 2, 7.3}; at s = 0 only 0 in A(0) is required.
CheckReport check_homogeneous(const MonotoneOp& a, double gamma, int sample_count,
                              std::uint64_t seed);

}  // namespace monokit
