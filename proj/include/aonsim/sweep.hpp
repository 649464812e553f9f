// The comparison sweep: three (wavelengths, control) pairs crossed with four
// parallelism degrees, run in both the proposed connection mode and the
// electronic reference mode. Cells are independent simulations, so the
// sweep can fan out across OpenMP threads; results are ordered by cell
// index either way and the two drivers produce identical records.
#pragma once

#include "aonsim/report.hpp"
#include "aonsim/runner.hpp"

#include <cstdint>
#include <vector>

namespace aonsim {

struct SweepCell {
    std::uint32_t wavelengths = 0;
    std::uint32_t control_channels = 0;
    std::uint32_t parallelism = 0;
    Mode mode = Mode::ProposedConnection;
};

// (4,1), (16,4), (64,16) x p in {1,4,8,16} x {proposed-connection, baseline}
std::vector<SweepCell> comparison_sweep_cells();

std::vector<RunRecord> run_cells_serial(const RunConfig& base, const std::vector<SweepCell>& cells,
                                        const std::vector<std::uint64_t>& seeds);
std::vector<RunRecord> run_cells_parallel(const RunConfig& base, const std::vector<SweepCell>& cells,
                                          const std::vector<std::uint64_t>& seeds);

} // namespace aonsim
