// Serial vs OpenMP timing of the two heaviest kernels: fade-averaged
// centralized optimization and a price-sweep of exact best responses.
// Both paths must agree bit for bit; the benchmark fails otherwise.

#include <chrono>
#include <cstdio>
#include <string>

#include "twr/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run_once(const twr::ExperimentSpec& spec, bool parallel, std::string* csv) {
    twr::RunOptions options;
    options.parallel = parallel;
    options.quiet = true;
    const auto start = std::chrono::steady_clock::now();
    const twr::ResultTable table = twr::run_experiment(spec, options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *csv = twr::to_csv(table);
    return seconds;
}

int bench(const char* label, const twr::ExperimentSpec& spec) {
    std::string serial_csv;
    std::string parallel_csv;
    const double t_serial = run_once(spec, false, &serial_csv);
    const double t_parallel = run_once(spec, true, &parallel_csv);
    const bool identical = serial_csv == parallel_csv;
    std::printf("%-24s serial %7.3f s   parallel %7.3f s   speedup %4.2fx   %s\n", label, t_serial,
                t_parallel, t_serial / t_parallel, identical ? "identical" : "MISMATCH");
    return identical ? 0 : 1;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both runs are serial\n");
#endif

    int failures = 0;

    {
        const std::string text =
            "experiment = rate_vs_num_jammers\n"
            "seed = 7\n"
            "fading = rayleigh\n"
            "topology.jammer = 0.3 0.4\n"
            "topology.jammer = 0.5 0.5\n"
            "topology.jammer = -0.4 0.3\n"
            "mc.draws = 40\n";
        failures += bench("mc_central_optimize", twr::parse_spec(text, "bench"));
    }

    {
        const std::string text =
            "experiment = demand_vs_price\n"
            "seed = 7\n"
            "fading = unit\n"
            "topology.jammer = 0.3 0.4\n"
            "sweep.steps = 160\n";
        failures += bench("demand_sweep", twr::parse_spec(text, "bench"));
    }

    {
        const std::string text =
            "experiment = two_jammer_price_grid\n"
            "seed = 7\n"
            "fading = unit\n"
            "topology.jammer = 0.3 0.4\n"
            "topology.jammer = 0.5 0.5\n"
            "sweep.steps = 32\n"
            "sweep2.steps = 32\n";
        failures += bench("price_grid", twr::parse_spec(text, "bench"));
    }

    return failures == 0 ? 0 : 1;
}
