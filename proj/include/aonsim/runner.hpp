// One-stop configuration for a run: topology, protocol mode, timing, and
// workload, with validation that names the violated constraint.
#pragma once

#include "aonsim/baseline.hpp"
#include "aonsim/graph.hpp"
#include "aonsim/metrics.hpp"
#include "aonsim/report.hpp"
#include "aonsim/simulation.hpp"
#include "aonsim/timing.hpp"
#include "aonsim/workload.hpp"

#include <cstdint>
#include <string>

namespace aonsim {

struct RunConfig {
    std::string topology = "single-switch"; // builtin name or path to a JSON file
    Mode mode = Mode::ProposedConnection;
    ProtocolConfig protocol;
    TimingConfig timing;
    BaselineConfig baseline;
    WorkloadSpec workload;
};

Mode parse_mode(const std::string& name); // throws ConfigError on unknown names

// Throws ConfigError naming the violated constraint.
void validate(const RunConfig& cfg);

// Builtin names "single-switch" and "ring5", otherwise a JSON topology file.
NetworkGraph load_graph(const std::string& topology);

Metrics run_once(const NetworkGraph& g, const RunConfig& cfg, std::uint64_t seed);

RunRecord record_of(const RunConfig& cfg, const Metrics& m);

} // namespace aonsim
