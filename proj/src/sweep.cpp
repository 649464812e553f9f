#include "aonsim/sweep.hpp"

#include "aonsim/errors.hpp"

#include <exception>
#include <stdexcept>
#include <utility>

namespace aonsim {

std::vector<SweepCell> comparison_sweep_cells() {
    static const std::pair<std::uint32_t, std::uint32_t> kPairs[] = {{4, 1}, {16, 4}, {64, 16}};
    static const std::uint32_t kParallelism[] = {1, 4, 8, 16};
    std::vector<SweepCell> cells;
    for (auto [w, c] : kPairs)
        for (auto p : kParallelism)
            for (Mode mode : {Mode::ProposedConnection, Mode::Baseline})
                cells.push_back(SweepCell{w, c, p, mode});
    return cells;
}

namespace {

RunConfig cell_config(const RunConfig& base, const SweepCell& cell) {
    RunConfig cfg = base;
    cfg.mode = cell.mode;
    cfg.protocol.wavelengths = cell.wavelengths;
    cfg.protocol.control_channels = cell.control_channels;
    cfg.protocol.parallelism = cell.parallelism;
    return cfg;
}

} // namespace

std::vector<RunRecord> run_cells_serial(const RunConfig& base, const std::vector<SweepCell>& cells,
                                        const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty())
        throw ConfigError("at least one seed is required");
    std::vector<RunRecord> out;
    out.reserve(cells.size() * seeds.size());
    for (const auto& cell : cells) {
        const RunConfig cfg = cell_config(base, cell);
        const NetworkGraph g = load_graph(cfg.topology);
        for (auto seed : seeds)
            out.push_back(record_of(cfg, run_once(g, cfg, seed)));
    }
    return out;
}

std::vector<RunRecord> run_cells_parallel(const RunConfig& base, const std::vector<SweepCell>& cells,
                                          const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty())
        throw ConfigError("at least one seed is required");
    const std::size_t jobs = cells.size() * seeds.size();
    std::vector<RunRecord> out(jobs);
    std::exception_ptr failure = nullptr;

#pragma omp parallel for schedule(dynamic)
    for (long long j = 0; j < static_cast<long long>(jobs); ++j) {
        try {
            const auto i = static_cast<std::size_t>(j);
            const SweepCell& cell = cells[i / seeds.size()];
            const std::uint64_t seed = seeds[i % seeds.size()];
            const RunConfig cfg = cell_config(base, cell);
            const NetworkGraph g = load_graph(cfg.topology);
            out[i] = record_of(cfg, run_once(g, cfg, seed));
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace aonsim
