// monokit command-line front end: lemma suites, resolvent evaluation,
// degree computation, annulus continuation, and the discretized elliptic /
// parabolic demos. Exit codes: 0 success, 1 validation failure, 2 solver
// nonconvergence, 3 degree uncertified where a certificate was required.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "monokit/csv.hpp"
#include "monokit/degree.hpp"
#include "monokit/errors.hpp"
#include "monokit/homotopy.hpp"
#include "monokit/pde.hpp"
#include "monokit/specfile.hpp"
#include "monokit/verify.hpp"

namespace mk = monokit;

namespace {

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("MONOKIT_OUT"); env && *env) return env;
    return ".";
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw mk::ValidationError("cannot open output file " + path.string());
    return os;
}

mk::OpPtr catalog_op(const std::string& name) {
    if (name == "cube") return mk::make_power_graph(1, 3.0);
    if (name == "absxx") return mk::make_power_graph(1, 2.0);
    if (name == "power3d") return mk::make_power_graph(3, 2.0);
    if (name == "soft") return mk::make_abs_subdiff(1, 1.0);
    if (name == "box") return mk::make_box_normal_cone(1, -1.0, 1.0);
    if (name == "ball") return mk::make_ball_normal_cone(2, 1.0);
    if (name == "identity") return mk::make_scaled_identity(2, 1.0);
    if (name == "remark12") return mk::make_remark12(2.0);
    if (name == "plap") return mk::make_plaplacian_1d(4, 0.25, 3.0);
    throw mk::ValidationError("unknown operator '" + name +
                              "' (try: cube, absxx, power3d, soft, box, ball, identity, "
                              "remark12, plap)");
}

mk::MapFn catalog_map(const std::string& name) {
    if (name == "identity") return [](const mk::Vec& x) { return x; };
    if (name == "absxx_minus_x")
        return [](const mk::Vec& x) {
            return mk::Vec{std::fabs(x[0]) * x[0] - x[0]};
        };
    if (name == "squaring")
        return [](const mk::Vec& x) {
            return mk::Vec{x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]};
        };
    if (name == "const")
        return [](const mk::Vec& x) { return mk::Vec(x.size(), 1.0); };
    if (name == "cubic_minus_x")
        return [](const mk::Vec& x) {
            mk::Vec r(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] * x[i] * x[i] - x[i];
            return r;
        };
    throw mk::ValidationError("unknown map '" + name +
                              "' (try: identity, absxx_minus_x, squaring, const, cubic_minus_x)");
}

std::vector<double> lambda_schedule() {
    std::vector<double> s;
    for (int k = 0; k <= 12; ++k) s.push_back(std::pow(10.0, -0.5 * k));  // 1 .. 1e-6
    return s;
}

int run_verify(const std::string& suite, const std::string& op_name, double p,
               std::uint64_t seed, const std::string& outdir) {
    const mk::OpPtr op = catalog_op(op_name);
    const mk::Gauge g(p);
    mk::Rng rng(seed);
    mk::VerifierReport rep;
    if (suite == "prop21") {
        std::vector<mk::Vec> xs;
        for (int k = 0; k < 8; ++k)
            xs.push_back(rng.uniform_vec(static_cast<std::size_t>(op->dim()), -2.0, 2.0));
        rep = mk::verify_prop21(*op, g, xs, lambda_schedule(), seed);
    } else if (suite == "uniform-bound") {
        rep = mk::verify_uniform_bound(*op, g, 2.0, 1e-3, 10.0, 200, seed);
    } else if (suite == "quasibound") {
        rep = mk::quasibound_probe(*op, g, 2.0, 10.0, 200, seed);
    } else if (suite == "continuity") {
        const mk::Vec x0 = rng.uniform_vec(static_cast<std::size_t>(op->dim()), -1.0, 1.0);
        const mk::Vec d = rng.uniform_vec(static_cast<std::size_t>(op->dim()), -1.0, 1.0);
        std::vector<std::pair<double, mk::Vec>> path;
        for (int k = 0; k < 30; ++k) {
            const double step = std::pow(2.0, -k);
            mk::Vec xk = x0;
            for (std::size_t i = 0; i < xk.size(); ++i) xk[i] += step * d[i];
            path.emplace_back(0.5 + step, xk);
        }
        path.emplace_back(0.5, x0);
        rep = mk::verify_joint_continuity(*op, g, path);
    } else if (suite == "homogeneity") {
        const auto gamma = op->homogeneity();
        if (!gamma)
            throw mk::ValidationError("operator '" + op_name +
                                      "' declares no homogeneity degree");
        rep = mk::verify_homogeneity_transmission(*op, *gamma, g, 20, seed);
    } else {
        throw mk::ValidationError("unknown suite '" + suite +
                                  "' (try: prop21, uniform-bound, quasibound, continuity, "
                                  "homogeneity)");
    }
    const std::string text = rep.summary();
    std::cout << text;
    auto os = open_out(outdir, "verify_" + suite + "_" + op_name + ".txt");
    os << text;
    return rep.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monokit: monotone-inclusion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --out/--seed after the subcommand name

    std::string outdir_flag;
    std::uint64_t seed = 42;
    app.add_option("--out", outdir_flag, "output directory (env MONOKIT_OUT overrides default)");
    app.add_option("--seed", seed, "RNG seed (default 42)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a lemma suite");
    std::string suite, verify_op = "cube";
    double verify_p = 2.0;
    verify->add_option("--suite", suite, "prop21|uniform-bound|quasibound|continuity|homogeneity")
        ->required();
    verify->add_option("--op", verify_op, "catalog operator name");
    verify->add_option("--p", verify_p, "gauge exponent (default 2)");

    // resolvent
    auto* resv = app.add_subcommand("resolvent", "evaluate J_lambda^phi and A_lambda^phi");
    std::string resv_op = "cube";
    double resv_lambda = 1.0, resv_p = 2.0;
    std::vector<double> resv_x;
    resv->add_option("--op", resv_op, "catalog operator name");
    resv->add_option("--lambda", resv_lambda, "resolvent parameter")->required();
    resv->add_option("--p", resv_p, "gauge exponent");
    resv->add_option("--x", resv_x, "evaluation point coordinates")->required()->expected(-1);

    // degree
    auto* deg = app.add_subcommand("degree", "Brouwer degree of a catalog map");
    std::string deg_map;
    std::vector<double> deg_interval;
    int deg_dim = 1;
    double deg_radius = 1.0, deg_pnorm = 2.0;
    bool require_cert = false;
    deg->add_option("--map", deg_map, "catalog map name")->required();
    deg->add_option("--interval", deg_interval, "1-D interval endpoints a b")->expected(2);
    deg->add_option("--dim", deg_dim, "ambient dimension for ball regions");
    deg->add_option("--radius", deg_radius, "ball radius");
    deg->add_option("--pnorm", deg_pnorm, "ball norm exponent");
    deg->add_flag("--require-certified", require_cert, "exit 3 unless the degree is certified");

    // annulus / elliptic / parabolic
    auto* ann = app.add_subcommand("annulus", "degree-excision annulus search");
    std::string ann_spec;
    int ann_stages = 8;
    ann->add_option("--spec", ann_spec, "problem spec file")->required();
    ann->add_option("--stages", ann_stages, "continuation stages t_k = 10^{-1-k/2}");

    auto* ell = app.add_subcommand("elliptic", "discretized elliptic annulus demo");
    std::string ell_spec;
    int ell_stages = 8;
    ell->add_option("--spec", ell_spec, "problem spec file")->required();
    ell->add_option("--stages", ell_stages, "continuation stages");

    auto* par = app.add_subcommand("parabolic", "implicit-Euler parabolic demo");
    std::string par_spec;
    int par_steps = 0;
    par->add_option("--spec", par_spec, "problem spec file")->required();
    par->add_option("--steps", par_steps, "time steps (default: horizon/dt)");

    CLI11_PARSE(app, argc, argv);
    const std::string outdir = output_dir(outdir_flag);

    try {
        if (*verify) return run_verify(suite, verify_op, verify_p, seed, outdir);

        if (*resv) {
            const mk::OpPtr op = catalog_op(resv_op);
            const mk::Gauge g(resv_p);
            const auto r = mk::resolvent(*op, g, resv_lambda, resv_x);
            std::cout << "x_lambda =";
            for (double v : r.x_lambda) std::cout << ' ' << mk::csv_num(v);
            std::cout << "\na_lambda =";
            for (double v : r.a_lambda) std::cout << ' ' << mk::csv_num(v);
            std::cout << "\nresidual = " << mk::csv_num(r.residual)
                      << "\niterations = " << r.iterations << "\n";
            return 0;
        }

        if (*deg) {
            const mk::MapFn f = catalog_map(deg_map);
            mk::DegreeReport rep;
            if (!deg_interval.empty()) {
                rep = mk::degree_1d([&f](double x) { return f(mk::Vec{x})[0]; }, deg_interval[0],
                                    deg_interval[1]);
            } else {
                rep = mk::degree_ball(
                    f, mk::Region{mk::Vec(static_cast<std::size_t>(deg_dim), 0.0), deg_radius,
                                  deg_pnorm},
                    mk::MultistartConfig{8, seed, 1e-10, 200});
            }
            if (rep.value)
                std::cout << *rep.value << (rep.certified ? "" : " (uncertified)") << "\n";
            else
                std::cout << "uncertified\n";
            std::cout << "method = " << rep.method << ", boundary margin = "
                      << mk::csv_num(rep.boundary_margin) << ", refinement = " << rep.refinement
                      << "\n";
            if (require_cert && !rep.certified) return 3;
            return 0;
        }

        if (*ann || *ell) {
            const std::string spec_path = *ann ? ann_spec : ell_spec;
            const int stages = *ann ? ann_stages : ell_stages;
            const mk::SpecFile f = mk::SpecFile::load(spec_path);
            const std::string kind = f.get_string("problem", "kind", "inclusion");
            mk::InclusionProblem prob =
                kind == "elliptic" ? mk::build_elliptic(mk::load_elliptic_spec(f)).inclusion
                                   : mk::load_inclusion(f);
            const auto t_sched = mk::default_schedule(stages);
            const auto trace = mk::annulus_search(
                prob, t_sched, t_sched, mk::MultistartConfig{8, seed, 1e-10, 200});
            std::cout << trace.summary();
            auto os = open_out(outdir, "annulus_trace.csv");
            trace.write_csv(os);
            return 0;
        }

        if (*par) {
            const mk::SpecFile f = mk::SpecFile::load(par_spec);
            const mk::ParabolicProblem prob = mk::load_parabolic(f);
            const int steps = par_steps > 0
                                  ? par_steps
                                  : static_cast<int>(std::ceil(prob.horizon / prob.dt));
            const auto traj = mk::step_parabolic(prob, steps);
            std::cout << prob.dt_restriction << "\n";
            std::cout << "final state =";
            for (double v : traj.states.back()) std::cout << ' ' << mk::csv_num(v);
            std::cout << "\n";
            auto os = open_out(outdir, "trajectory.csv");
            traj.write_csv(os, prob.spatial.spec.h);
            return 0;
        }
    } catch (const mk::NonconvergenceError& e) {
        std::cerr << "nonconvergence: " << e.what() << " (residual " << e.last_residual << ")\n";
        return 2;
    } catch (const mk::SearchFailureError& e) {
        std::cerr << "search failure: " << e.what() << "\n";
        return 2;
    } catch (const mk::BoundaryDegeneracyError& e) {
        std::cerr << "boundary degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
