#include "monokit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monokit/gauge.hpp"
#include "monokit/parallel.hpp"

namespace monokit {

void MonotoneOp::add_jacobian(const Vec&, Eigen::MatrixXd&, double, double) const {
    throw std::logic_error(name() + ": no Jacobian");
}

GraphPoint MonotoneOp::sample_graph(Rng& rng) const {
    Vec lo, hi;
    domain_bounds(lo, hi);
    const double box = 3.0;
    Vec x(static_cast<std::size_t>(dim()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::max(lo[i], -box);
        const double b = std::min(hi[i], box);
        x[i] = rng.uniform(a, b);
    }
    if (is_smooth()) return {x, value(x)};
    return {x, min_section(x)};
}

// ---------------------------------------------------------------------------
// Scalar graph catalog
// ---------------------------------------------------------------------------

double scalar_graph_point_distance(const ScalarGraph& r, double x, double y) {
    const double dv = r.image(x).dist(y);
    if (dv == 0.0) return 0.0;
    // Minimize g(u) = max(|x - u|, dist(image(u), y)) over the domain. The
    // vertical gap shrinks monotonically toward the section containing y, so
    // bisect on the sign of h(u) = dist(image(u), y) - |x - u| starting from
    // h(x) = dv > 0; u never needs to move further than dv from x.
    const double dir = y > r.image(x).hi ? 1.0 : -1.0;
    double lo = x;
    double hi = std::clamp(x + dir * dv, r.dmin(), r.dmax());
    // Directional gap: the vertical distance while still on the near side of
    // the section containing y, zero at or past it. Monotone along dir, so
    // h crosses zero exactly once between x (h = dv > 0) and hi (h <= 0).
    const auto h = [&](double u) {
        const Interval im = r.image(u);
        const double vd = dir > 0.0 ? std::max(0.0, y - im.hi) : std::max(0.0, im.lo - y);
        return vd - std::fabs(x - u);
    };
    for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    const auto g = [&](double u) { return std::max(std::fabs(x - u), r.image(u).dist(y)); };
    double d = std::min({dv, g(lo), g(hi)});
    // If the crossing is a jump of the image (a kink or domain endpoint),
    // maximality fills the gap at the limit point, so y lies in the image
    // there even though neither bisection end ever samples it.
    const Interval a = r.image(lo), b = r.image(hi);
    const bool jump = dir > 0.0 ? (a.hi <= y && y <= b.lo) : (b.hi <= y && y <= a.lo);
    if (jump) d = std::min(d, std::max(std::fabs(x - lo), std::fabs(x - hi)));
    return d;
}

ScalarGraph power_rule(double gamma) {
    return ScalarGraph(-kInf, kInf,
                       [gamma](double y) {
                           const double v = signed_power(gamma + 1.0, y);
                           return Interval{v, v};
                       },
                       "power");
}

ScalarGraph remark12_rule(double gamma) {
    // Domain [0, inf); the endpoint extension turns A(0) into (-inf, 0].
    return ScalarGraph(0.0, kInf,
                       [gamma](double y) {
                           const double v = y > 0.0 ? std::pow(y, gamma) : 0.0;
                           return Interval{v, v};
                       },
                       "remark12");
}

ScalarGraph abs_subdiff_rule(double weight) {
    return ScalarGraph(-kInf, kInf,
                       [weight](double y) {
                           if (y > 0.0) return Interval{weight, weight};
                           if (y < 0.0) return Interval{-weight, -weight};
                           return Interval{-weight, weight};
                       },
                       "abs_subdiff");
}

ScalarGraph box_normal_cone_rule(double a, double b) {
    return ScalarGraph(a, b, [](double) { return Interval{0.0, 0.0}; }, "box_normal_cone");
}

ScalarGraph linear_rule(double a) {
    return ScalarGraph(-kInf, kInf,
                       [a](double y) {
                           return Interval{a * y, a * y};
                       },
                       "linear");
}

ScalarGraph zero_rule() {
    return ScalarGraph(-kInf, kInf, [](double) { return Interval{0.0, 0.0}; }, "zero");
}

// ---------------------------------------------------------------------------
// Diagonal (separable) operators
// ---------------------------------------------------------------------------

namespace {

class DiagonalOp final : public MonotoneOp {
public:
    DiagonalOp(std::vector<ScalarGraph> rules, std::optional<double> gamma, std::string name)
        : rules_(std::move(rules)), gamma_(gamma), name_(std::move(name)) {}

    std::string name() const override { return name_; }
    int dim() const override { return static_cast<int>(rules_.size()); }
    std::optional<double> homogeneity() const override { return gamma_; }

    bool in_domain(const Vec& x, double tol) const override {
        for (std::size_t i = 0; i < rules_.size(); ++i)
            if (!rules_[i].in_domain(x[i], tol)) return false;
        return true;
    }

    bool domain_is_everything() const override {
        for (const auto& r : rules_)
            if (r.dmin() != -kInf || r.dmax() != kInf) return false;
        return true;
    }

    void domain_bounds(Vec& lo, Vec& hi) const override {
        lo.resize(rules_.size());
        hi.resize(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            lo[i] = rules_[i].dmin();
            hi[i] = rules_[i].dmax();
        }
    }

    Vec min_section(const Vec& x) const override {
        if (!in_domain(x, 1e-12)) throw OutOfDomainError(name_ + ": min_section off D(A)");
        Vec y(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) y[i] = rules_[i].min_section(x[i]);
        return y;
    }

    double graph_distance(const Vec& x, const Vec& y) const override {
        if (!in_domain(x, 1e-12)) return kInf;
        double d = 0.0;
        for (std::size_t i = 0; i < rules_.size(); ++i)
            d = std::max(d, scalar_graph_point_distance(rules_[i], x[i], y[i]));
        return d;
    }

    GraphPoint sample_graph(Rng& rng) const override {
        const double box = 3.0;
        Vec x(rules_.size()), y(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const double a = std::max(rules_[i].dmin(), -box);
            const double b = std::min(rules_[i].dmax(), box);
            x[i] = rng.uniform(a, b);
            Interval im = rules_[i].image(x[i]);
            const double mid = rules_[i].min_section(x[i]);
            const double ilo = std::max(im.lo, mid - box);
            const double ihi = std::min(im.hi, mid + box);
            y[i] = rng.uniform(ilo, ihi);
        }
        return {std::move(x), std::move(y)};
    }

    bool is_separable() const override { return true; }
    const ScalarGraph& coord_graph(int i) const override { return rules_[static_cast<std::size_t>(i)]; }

private:
    std::vector<ScalarGraph> rules_;
    std::optional<double> gamma_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Linear operators
// ---------------------------------------------------------------------------

class LinearOp final : public MonotoneOp {
public:
    explicit LinearOp(Eigen::MatrixXd m) : m_(std::move(m)) {}

    std::string name() const override { return "linear"; }
    int dim() const override { return static_cast<int>(m_.rows()); }
    std::optional<double> homogeneity() const override { return 1.0; }
    bool in_domain(const Vec&, double) const override { return true; }

    Vec min_section(const Vec& x) const override { return value(x); }

    double graph_distance(const Vec& x, const Vec& y) const override {
        return linf_norm(sub(y, value(x)));
    }

    bool is_smooth() const override { return true; }

    Vec value(const Vec& x) const override {
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), m_.cols());
        Eigen::VectorXd r = m_ * xv;
        return Vec(r.data(), r.data() + r.size());
    }

    void add_jacobian(const Vec&, Eigen::MatrixXd& j, double scale, double) const override {
        j += scale * m_;
    }

    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

// ---------------------------------------------------------------------------
// Normal cone of the Euclidean ball
// ---------------------------------------------------------------------------

class BallNormalConeOp final : public MonotoneOp {
public:
    BallNormalConeOp(int n, double radius) : n_(n), radius_(radius) {
        if (radius <= 0.0) throw ValidationError("ball normal cone: radius must be positive");
    }

    std::string name() const override { return "ball_normal_cone"; }
    int dim() const override { return n_; }
    bool in_domain(const Vec& x, double tol) const override {
        return l2_norm(x) <= radius_ + tol;
    }
    bool domain_is_everything() const override { return false; }

    void domain_bounds(Vec& lo, Vec& hi) const override {
        lo.assign(static_cast<std::size_t>(n_), -radius_);
        hi.assign(static_cast<std::size_t>(n_), radius_);
    }

    Vec min_section(const Vec& x) const override {
        if (!in_domain(x, 1e-12)) throw OutOfDomainError(name() + ": min_section off D(A)");
        return Vec(static_cast<std::size_t>(n_), 0.0);  // 0 is always in the cone
    }

    double graph_distance(const Vec& x, const Vec& y) const override {
        const double nx = l2_norm(x);
        if (nx > radius_ + 1e-12) return kInf;
        if (nx < radius_ - 1e-9) return linf_norm(y);  // interior: cone is {0}
        // Boundary: cone is the outward ray {t x : t >= 0}.
        const double t = std::max(0.0, dot(y, x) / std::max(dot(x, x), 1e-300));
        return linf_norm(sub(y, scale(t, x)));
    }

    GraphPoint sample_graph(Rng& rng) const override {
        if (rng.uniform(0.0, 1.0) < 0.5) {
            Vec x = rng.sphere_point(static_cast<std::size_t>(n_), radius_ * rng.uniform(0.0, 0.95), 2.0);
            return {x, Vec(static_cast<std::size_t>(n_), 0.0)};
        }
        Vec x = rng.sphere_point(static_cast<std::size_t>(n_), radius_, 2.0);
        return {x, scale(rng.uniform(0.0, 3.0) / radius_, x)};
    }

    bool has_l2_resolvent() const override { return true; }
    Vec l2_resolvent(const Vec& x, double) const override {
        const double nx = l2_norm(x);
        if (nx <= radius_) return x;
        return scale(radius_ / nx, x);
    }

private:
    int n_;
    double radius_;
};

// ---------------------------------------------------------------------------
// Discrete p-Laplacian, 1-D and 2-D Dirichlet stencils
// ---------------------------------------------------------------------------

class PLaplacian1D final : public MonotoneOp {
public:
    PLaplacian1D(int n, double h, double p) : n_(n), h_(h), p_(p) {
        if (n < 1 || h <= 0.0 || p <= 1.0)
            throw ValidationError("p-laplacian: need n >= 1, h > 0, p > 1");
    }

    std::string name() const override { return "plaplacian_1d"; }
    int dim() const override { return n_; }
    std::optional<double> homogeneity() const override { return p_ - 1.0; }
    bool in_domain(const Vec&, double) const override { return true; }
    Vec min_section(const Vec& x) const override { return value(x); }
    double graph_distance(const Vec& x, const Vec& y) const override {
        return linf_norm(sub(y, value(x)));
    }
    bool is_smooth() const override { return true; }

    Vec value(const Vec& u) const override {
        Vec r(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const double dl = (u[static_cast<std::size_t>(i)] - left(u, i)) / h_;
            const double dr = (right(u, i) - u[static_cast<std::size_t>(i)]) / h_;
            r[static_cast<std::size_t>(i)] = (signed_power(p_, dl) - signed_power(p_, dr)) / h_;
        }
        return r;
    }

    void add_jacobian(const Vec& u, Eigen::MatrixXd& j, double scale, double mu) const override {
        for (int i = 0; i <= n_; ++i) {
            // edge i connects node i-1 and node i (Dirichlet ghosts at -1, n_)
            const double ul = i > 0 ? u[static_cast<std::size_t>(i - 1)] : 0.0;
            const double ur = i < n_ ? u[static_cast<std::size_t>(i)] : 0.0;
            const double d = (ur - ul) / h_;
            const double w = scale * signed_power_deriv_smoothed(p_, d, mu) / (h_ * h_);
            if (i > 0) j(i - 1, i - 1) += w;
            if (i < n_) j(i, i) += w;
            if (i > 0 && i < n_) {
                j(i - 1, i) -= w;
                j(i, i - 1) -= w;
            }
        }
    }

    double energy(const Vec& u) const {
        double e = 0.0;
        for (int i = 0; i <= n_; ++i) {
            const double ul = i > 0 ? u[static_cast<std::size_t>(i - 1)] : 0.0;
            const double ur = i < n_ ? u[static_cast<std::size_t>(i)] : 0.0;
            e += std::pow(std::fabs((ur - ul) / h_), p_);
        }
        return e / p_;
    }

private:
    double left(const Vec& u, int i) const { return i > 0 ? u[static_cast<std::size_t>(i - 1)] : 0.0; }
    double right(const Vec& u, int i) const {
        return i < n_ - 1 ? u[static_cast<std::size_t>(i + 1)] : 0.0;
    }
    int n_;
    double h_, p_;
};

class PLaplacian2D final : public MonotoneOp {
public:
    PLaplacian2D(int nx, int ny, double h, double p) : nx_(nx), ny_(ny), h_(h), p_(p) {
        if (nx < 1 || ny < 1 || h <= 0.0 || p <= 1.0)
            throw ValidationError("p-laplacian: need nx, ny >= 1, h > 0, p > 1");
    }

    std::string name() const override { return "plaplacian_2d"; }
    int dim() const override { return nx_ * ny_; }
    std::optional<double> homogeneity() const override { return p_ - 1.0; }
    bool in_domain(const Vec&, double) const override { return true; }
    Vec min_section(const Vec& x) const override { return value(x); }
    double graph_distance(const Vec& x, const Vec& y) const override {
        return linf_norm(sub(y, value(x)));
    }
    bool is_smooth() const override { return true; }

    Vec value(const Vec& u) const override {
        Vec r(static_cast<std::size_t>(nx_ * ny_), 0.0);
        for_each_edge(u, [&](int a, int b, double d) {
            const double f = signed_power(p_, d) / h_;
            if (a >= 0) r[static_cast<std::size_t>(a)] -= f;
            if (b >= 0) r[static_cast<std::size_t>(b)] += f;
        });
        return r;
    }

    void add_jacobian(const Vec& u, Eigen::MatrixXd& j, double scale, double mu) const override {
        for_each_edge(u, [&](int a, int b, double d) {
            const double w = scale * signed_power_deriv_smoothed(p_, d, mu) / (h_ * h_);
            if (a >= 0) j(a, a) += w;
            if (b >= 0) j(b, b) += w;
            if (a >= 0 && b >= 0) {
                j(a, b) -= w;
                j(b, a) -= w;
            }
        });
    }

    double energy(const Vec& u) const {
        double e = 0.0;
        for_each_edge(u, [&](int, int, double d) { e += std::pow(std::fabs(d), p_); });
        return e / p_;
    }

private:
    int node(int ix, int iy) const { return iy * nx_ + ix; }
    double at(const Vec& u, int ix, int iy) const {
        if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) return 0.0;
        return u[static_cast<std::size_t>(node(ix, iy))];
    }
    // Visits each grid edge once with (lower node, upper node, difference/h);
    // node index -1 marks a Dirichlet boundary ghost.
    template <typename F>
    void for_each_edge(const Vec& u, F&& f) const {
        for (int iy = 0; iy < ny_; ++iy)
            for (int ix = 0; ix <= nx_; ++ix) {
                const int a = ix > 0 ? node(ix - 1, iy) : -1;
                const int b = ix < nx_ ? node(ix, iy) : -1;
                f(a, b, (at(u, ix, iy) - at(u, ix - 1, iy)) / h_);
            }
        for (int ix = 0; ix < nx_; ++ix)
            for (int iy = 0; iy <= ny_; ++iy) {
                const int a = iy > 0 ? node(ix, iy - 1) : -1;
                const int b = iy < ny_ ? node(ix, iy) : -1;
                f(a, b, (at(u, ix, iy) - at(u, ix, iy - 1)) / h_);
            }
    }
    int nx_, ny_;
    double h_, p_;
};

// ---------------------------------------------------------------------------
// Sum and scalar multiple
// ---------------------------------------------------------------------------

class SumOp final : public MonotoneOp {
public:
    explicit SumOp(std::vector<OpPtr> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw ValidationError("sum: no terms");
        for (const auto& t : terms_)
            if (t->dim() != terms_.front()->dim())
                throw ValidationError("sum: dimension mismatch");
        all_smooth_ = std::all_of(terms_.begin(), terms_.end(),
                                  [](const OpPtr& t) { return t->is_smooth(); });
        all_separable_ = std::all_of(terms_.begin(), terms_.end(),
                                     [](const OpPtr& t) { return t->is_separable(); });
        if (!all_smooth_ && !all_separable_)
            throw ValidationError("sum: terms must be all smooth or all separable");
        if (all_separable_) build_coord_graphs();
    }

    std::string name() const override { return "sum"; }
    int dim() const override { return terms_.front()->dim(); }

    std::optional<double> homogeneity() const override {
        auto g0 = terms_.front()->homogeneity();
        for (const auto& t : terms_) {
            auto g = t->homogeneity();
            if (!g || !g0 || *g != *g0) return std::nullopt;
        }
        return g0;
    }

    bool in_domain(const Vec& x, double tol) const override {
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const OpPtr& t) { return t->in_domain(x, tol); });
    }

    bool domain_is_everything() const override {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const OpPtr& t) { return t->domain_is_everything(); });
    }

    void domain_bounds(Vec& lo, Vec& hi) const override {
        terms_.front()->domain_bounds(lo, hi);
        Vec l2v, h2v;
        for (std::size_t k = 1; k < terms_.size(); ++k) {
            terms_[k]->domain_bounds(l2v, h2v);
            for (std::size_t i = 0; i < lo.size(); ++i) {
                lo[i] = std::max(lo[i], l2v[i]);
                hi[i] = std::min(hi[i], h2v[i]);
            }
        }
    }

    Vec min_section(const Vec& x) const override {
        if (all_smooth_) return value(x);
        if (!in_domain(x, 1e-12)) throw OutOfDomainError(name() + ": min_section off D(A)");
        Vec y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = coord_graphs_[i].min_section(x[i]);
        return y;
    }

    double graph_distance(const Vec& x, const Vec& y) const override {
        if (all_smooth_) return linf_norm(sub(y, value(x)));
        if (!in_domain(x, 1e-12)) return kInf;
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            d = std::max(d, coord_graphs_[i].image(x[i]).dist(y[i]));
        return d;
    }

    bool is_separable() const override { return all_separable_; }
    const ScalarGraph& coord_graph(int i) const override {
        return coord_graphs_[static_cast<std::size_t>(i)];
    }

    bool is_smooth() const override { return all_smooth_; }
    Vec value(const Vec& x) const override {
        Vec r = terms_.front()->value(x);
        for (std::size_t k = 1; k < terms_.size(); ++k) {
            Vec v = terms_[k]->value(x);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += v[i];
        }
        return r;
    }
    void add_jacobian(const Vec& x, Eigen::MatrixXd& j, double scale, double mu) const override {
        for (const auto& t : terms_) t->add_jacobian(x, j, scale, mu);
    }

private:
    void build_coord_graphs() {
        for (int i = 0; i < dim(); ++i) {
            double dmin = -kInf, dmax = kInf;
            std::vector<const ScalarGraph*> parts;
            for (const auto& t : terms_) {
                const ScalarGraph& g = t->coord_graph(i);
                dmin = std::max(dmin, g.dmin());
                dmax = std::min(dmax, g.dmax());
            }
            auto terms = terms_;  // shared ownership inside the rule
            coord_graphs_.emplace_back(
                dmin, dmax,
                [terms, i](double y) {
                    Interval s{0.0, 0.0};
                    for (const auto& t : terms) {
                        Interval im = t->coord_graph(i).image(y);
                        s.lo += im.lo;
                        s.hi += im.hi;
                    }
                    return s;
                },
                "sum");
        }
    }

    std::vector<OpPtr> terms_;
    std::vector<ScalarGraph> coord_graphs_;
    bool all_smooth_ = false;
    bool all_separable_ = false;
};

class ScaledOp final : public MonotoneOp {
public:
    ScaledOp(double c, OpPtr op) : c_(c), op_(std::move(op)) {
        if (c < 0.0) throw ValidationError("scaled: factor must be nonnegative");
        if (op_->is_separable()) {
            for (int i = 0; i < op_->dim(); ++i) {
                const ScalarGraph& g = op_->coord_graph(i);
                auto base = op_;
                const double c = c_;
                coord_graphs_.emplace_back(
                    g.dmin(), g.dmax(),
                    [base, i, c](double y) {
                        Interval im = base->coord_graph(i).image(y);
                        return Interval{c * im.lo, c * im.hi};
                    },
                    "scaled");
            }
        }
    }

    std::string name() const override { return "scaled(" + op_->name() + ")"; }
    int dim() const override { return op_->dim(); }
    std::optional<double> homogeneity() const override { return op_->homogeneity(); }
    bool in_domain(const Vec& x, double tol) const override { return op_->in_domain(x, tol); }
    bool domain_is_everything() const override { return op_->domain_is_everything(); }
    void domain_bounds(Vec& lo, Vec& hi) const override { op_->domain_bounds(lo, hi); }

    Vec min_section(const Vec& x) const override { return scale(c_, op_->min_section(x)); }

    double graph_distance(const Vec& x, const Vec& y) const override {
        if (op_->is_separable()) {
            if (!in_domain(x, 1e-12)) return kInf;
            double d = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                d = std::max(d, coord_graphs_[i].image(x[i]).dist(y[i]));
            return d;
        }
        if (c_ == 0.0) return in_domain(x, 1e-12) ? linf_norm(y) : kInf;
        return c_ * op_->graph_distance(x, scale(1.0 / c_, y));
    }

    bool is_separable() const override { return op_->is_separable(); }
    const ScalarGraph& coord_graph(int i) const override {
        return coord_graphs_[static_cast<std::size_t>(i)];
    }
    bool is_smooth() const override { return op_->is_smooth(); }
    Vec value(const Vec& x) const override { return scale(c_, op_->value(x)); }
    void add_jacobian(const Vec& x, Eigen::MatrixXd& j, double s, double mu) const override {
        op_->add_jacobian(x, j, s * c_, mu);
    }

private:
    double c_;
    OpPtr op_;
    std::vector<ScalarGraph> coord_graphs_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

OpPtr make_diagonal(std::vector<ScalarGraph> rules, std::optional<double> gamma, std::string name) {
    return std::make_shared<DiagonalOp>(std::move(rules), gamma, std::move(name));
}

OpPtr make_power_graph(int n, double gamma) {
    if (gamma <= 0.0) throw ValidationError("power graph: gamma must be positive");
    std::vector<ScalarGraph> rules(static_cast<std::size_t>(n), power_rule(gamma));
    return make_diagonal(std::move(rules), gamma, "power_graph");
}

OpPtr make_remark12(double gamma) {
    std::vector<ScalarGraph> rules;
    rules.push_back(remark12_rule(gamma));
    return make_diagonal(std::move(rules), gamma, "remark12");
}

OpPtr make_abs_subdiff(int n, double weight) {
    std::vector<ScalarGraph> rules(static_cast<std::size_t>(n), abs_subdiff_rule(weight));
    return make_diagonal(std::move(rules), std::nullopt, "abs_subdiff");
}

OpPtr make_box_normal_cone(int n, double a, double b) {
    if (!(a < b)) throw ValidationError("box normal cone: need a < b");
    std::vector<ScalarGraph> rules(static_cast<std::size_t>(n), box_normal_cone_rule(a, b));
    return make_diagonal(std::move(rules), std::nullopt, "box_normal_cone");
}

OpPtr make_zero(int n) {
    std::vector<ScalarGraph> rules(static_cast<std::size_t>(n), zero_rule());
    return make_diagonal(std::move(rules), std::nullopt, "zero");
}

OpPtr make_linear(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) throw ValidationError("linear operator: matrix must be square");
    return std::make_shared<LinearOp>(std::move(m));
}

OpPtr make_scaled_identity(int n, double a) {
    std::vector<ScalarGraph> rules(static_cast<std::size_t>(n), linear_rule(a));
    return make_diagonal(std::move(rules), 1.0, "scaled_identity");
}

OpPtr make_ball_normal_cone(int n, double radius) {
    return std::make_shared<BallNormalConeOp>(n, radius);
}

OpPtr make_plaplacian_1d(int n_interior, double h, double p) {
    return std::make_shared<PLaplacian1D>(n_interior, h, p);
}

OpPtr make_plaplacian_2d(int nx, int ny, double h, double p) {
    return std::make_shared<PLaplacian2D>(nx, ny, h, p);
}

OpPtr make_sum(std::vector<OpPtr> terms) { return std::make_shared<SumOp>(std::move(terms)); }

OpPtr make_scaled(double c, OpPtr op) { return std::make_shared<ScaledOp>(c, std::move(op)); }

double plaplacian_energy(const MonotoneOp& op, const Vec& u) {
    if (const auto* p1 = dynamic_cast<const PLaplacian1D*>(&op)) return p1->energy(u);
    if (const auto* p2 = dynamic_cast<const PLaplacian2D*>(&op)) return p2->energy(u);
    throw std::logic_error("plaplacian_energy: not a discrete p-Laplacian");
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

CheckReport check_monotone(const MonotoneOp& a, int sample_count, std::uint64_t seed) {
    CheckReport rep{"monotone(" + a.name() + ")", {}};
    // Pre-draw all pairs so the parallel sweep writes disjoint slots.
    std::vector<GraphPoint> gx(static_cast<std::size_t>(sample_count)),
        gy(static_cast<std::size_t>(sample_count));
    Rng rng(seed);
    for (int k = 0; k < sample_count; ++k) {
        gx[static_cast<std::size_t>(k)] = a.sample_graph(rng);
        gy[static_cast<std::size_t>(k)] = a.sample_graph(rng);
    }
    std::vector<double> pairings(static_cast<std::size_t>(sample_count));
    par_for(static_cast<std::size_t>(sample_count), [&](std::size_t k) {
        pairings[k] = dot(sub(gx[k].y, gy[k].y), sub(gx[k].x, gy[k].x));
    });
    for (int k = 0; k < sample_count; ++k) {
        const double v = pairings[static_cast<std::size_t>(k)];
        if (v < -1e-12) {
            std::ostringstream w;
            w << "pair " << k << ": pairing = " << v;
            rep.entries.push_back({"monotone pairing", false, -v, w.str()});
        }
    }
    if (rep.entries.empty())
        rep.entries.push_back({"monotone pairing", true, 0.0,
                               std::to_string(sample_count) + " pairs, no violation"});
    return rep;
}

CheckReport check_homogeneous(const MonotoneOp& a, double gamma, int sample_count,
                              std::uint64_t seed) {
    if (gamma <= 0.0) throw ValidationError("check_homogeneous: gamma must be positive");
    CheckReport rep{"homogeneous(" + a.name() + ")", {}};
    static const double scales[] = {0.0, 0.5, 1.0, 2.0, 7.3};
    Rng rng(seed);
    double worst = 0.0;
    std::string witness;
    for (int k = 0; k < sample_count; ++k) {
        GraphPoint gp = a.sample_graph(rng);
        for (double s : scales) {
            double rel;
            if (s == 0.0) {
                // Remark-1.2 edge case: only 0 in A(0) is required.
                Vec zero(gp.x.size(), 0.0);
                rel = a.graph_distance(zero, zero);
            } else {
                Vec sx = scale(s, gp.x);
                Vec sy = scale(std::pow(s, gamma), gp.y);
                rel = a.graph_distance(sx, sy) / (1.0 + linf_norm(sy));
            }
            if (rel > worst) {
                worst = rel;
                std::ostringstream w;
                w << "sample " << k << ", s = " << s << ": relative defect " << rel;
                witness = w.str();
            }
        }
    }
    rep.entries.push_back({"graph scaling (s x, s^gamma y)", worst <= 1e-10, worst, witness});
    return rep;
}

}  // namespace monokit
