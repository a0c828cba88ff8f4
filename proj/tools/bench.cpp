// Benchmark: OpenMP-parallel sweep vs the serial reference on a sampled
// workload, verifying the outputs are identical before timing.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dampcode/experiment.hpp"

using namespace dampcode;

namespace {

template <typename F> double time_once(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    long long shots = argc > 1 ? std::atoll(argv[1]) : 20000;
    int points = argc > 2 ? std::atoi(argv[2]) : 21;

    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) grid[k] = static_cast<double>(k) / (points - 1);
    const std::vector<SchemeKind> schemes{SchemeKind::Optimal, SchemeKind::StandardA,
                                          SchemeKind::NoCorrection};
    SweepOptions options;
    options.shots = shots;
    options.seed = 12345;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("workload: %d gammas x %zu schemes, %lld shots per state\n", points,
                schemes.size(), shots);

    std::vector<SweepRecord> serial_records, parallel_records;
    const double t_serial =
        time_once([&] { serial_records = sweep_serial(grid, schemes, nullptr, options); });
    const double t_parallel =
        time_once([&] { parallel_records = sweep(grid, schemes, nullptr, options); });

    bool identical = serial_records.size() == parallel_records.size();
    for (size_t i = 0; identical && i < serial_records.size(); ++i)
        identical = serial_records[i].fidelity == parallel_records[i].fidelity &&
                    serial_records[i].stderr_ == parallel_records[i].stderr_;

    std::printf("serial   : %8.3f s\n", t_serial);
    std::printf("parallel : %8.3f s\n", t_parallel);
    std::printf("speedup  : %8.2fx\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("outputs  : %s\n", identical ? "identical" : "MISMATCH");
    return identical ? 0 : 1;
}
