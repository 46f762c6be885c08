// Benchmark: OpenMP batch resolvent kernel against its serial reference.
// Also cross-checks that both produce identical results.

#include <chrono>
#include <cstdio>

#include "monokit/operators.hpp"
#include "monokit/parallel.hpp"
#include "monokit/rng.hpp"
#include "monokit/yosida.hpp"

namespace mk = monokit;

namespace {

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench(const char* label, const mk::MonotoneOp& op, const mk::Gauge& g, int batch) {
    mk::Rng rng(42);
    std::vector<mk::Vec> xs(static_cast<std::size_t>(batch));
    std::vector<double> lambdas(static_cast<std::size_t>(batch));
    for (int k = 0; k < batch; ++k) {
        xs[static_cast<std::size_t>(k)] =
            rng.uniform_vec(static_cast<std::size_t>(op.dim()), -2.0, 2.0);
        lambdas[static_cast<std::size_t>(k)] = rng.log_uniform(1e-3, 10.0);
    }

    std::vector<mk::YosidaResult> par_out, ser_out;
    const double t_ser = timed([&] { ser_out = mk::batch_resolvent_serial(op, g, lambdas, xs); });
    const double t_par = timed([&] { par_out = mk::batch_resolvent(op, g, lambdas, xs); });

    double max_diff = 0.0;
    for (std::size_t k = 0; k < par_out.size(); ++k)
        max_diff = std::max(max_diff,
                            mk::linf_norm(mk::sub(par_out[k].x_lambda, ser_out[k].x_lambda)));

    std::printf("%-28s batch=%5d  serial %8.4fs  parallel %8.4fs  speedup %5.2fx  max|diff| %g\n",
                label, batch, t_ser, t_par, t_ser / std::max(t_par, 1e-12), max_diff);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", mk::thread_count());
    bench("separable soft-threshold", *mk::make_abs_subdiff(64, 1.0), mk::Gauge(2.0), 2000);
    bench("separable cube (p=4)", *mk::make_power_graph(64, 3.0), mk::Gauge(4.0), 2000);
    bench("p-laplacian Newton (N=32)", *mk::make_plaplacian_1d(32, 1.0 / 33, 3.0), mk::Gauge(3.0),
          200);
    return 0;
}
