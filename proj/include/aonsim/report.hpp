// Result records and rendering: a flat CSV for machine consumption and an
// aligned per-configuration comparison table for the terminal.
#pragma once

#include "aonsim/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aonsim {

struct RunRecord {
    std::uint32_t wavelengths = 0;
    std::uint32_t control_channels = 0;
    std::uint32_t parallelism = 0;
    std::string mode;
    double makespan_us = 0.0;
    std::uint64_t discards = 0;
    std::uint64_t seed = 0;
};

bool operator==(const RunRecord& a, const RunRecord& b);

extern const char* const kCsvHeader; // W,control_wavelengths,parallelism,mode,makespan_us,discards,seed

std::string to_csv_row(const RunRecord& r); // makespan with two decimals, '.' decimal point
std::string to_csv(const std::vector<RunRecord>& rows); // throws SimError(EmptyResults) on empty input
std::vector<RunRecord> parse_csv(const std::string& text); // exact round-trip of to_csv

void write_csv_file(const std::string& path, const std::vector<RunRecord>& rows);
std::vector<RunRecord> read_csv_file(const std::string& path);

// One aligned table per (wavelengths, control) pair: rows are parallelism
// degrees, columns the per-mode makespans (mean over seeds, with min/max
// when several seeds contributed) and the baseline/proposed ratio.
std::string comparison_tables(const std::vector<RunRecord>& rows); // throws SimError(EmptyResults) on empty input

} // namespace aonsim
