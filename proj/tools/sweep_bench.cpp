// Benchmarks the sweep drivers against each other: the OpenMP fan-out must
// return exactly the records the serial reference produces, just faster.
#include "aonsim/report.hpp"
#include "aonsim/runner.hpp"
#include "aonsim/sweep.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace aonsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint32_t seed_count = 4;
    if (argc > 1)
        seed_count = static_cast<std::uint32_t>(std::strtoul(argv[1], nullptr, 10));

    RunConfig base;
    base.topology = "single-switch";
    base.workload.request_count = 100;
    base.workload.flits_per_request = 100;
    base.workload.pairs = PairPattern::SingleSwitchPair;

    std::vector<std::uint64_t> seeds(seed_count);
    std::iota(seeds.begin(), seeds.end(), 1);
    const auto cells = comparison_sweep_cells();
    std::cout << "sweep: " << cells.size() << " cells x " << seeds.size() << " seeds\n";

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_cells_serial(base, cells, seeds);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_cells_parallel(base, cells, seeds);
    const double t_parallel = seconds_since(t0);

    if (serial.size() != parallel.size()) {
        std::cerr << "FAIL: result counts differ\n";
        return 1;
    }
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (!(serial[i] == parallel[i])) {
            std::cerr << "FAIL: record " << i << " differs:\n  serial:   " << to_csv_row(serial[i])
                      << "\n  parallel: " << to_csv_row(parallel[i]) << '\n';
            return 1;
        }
    }

#ifdef _OPENMP
    std::cout << "threads available: " << omp_get_max_threads() << '\n';
#else
    std::cout << "built without OpenMP; parallel driver ran serially\n";
#endif
    std::cout << "serial:   " << t_serial << " s\n"
              << "parallel: " << t_parallel << " s\n"
              << "speedup:  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n"
              << "records identical: yes\n";
    return 0;
}
