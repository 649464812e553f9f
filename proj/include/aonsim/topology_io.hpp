// Topology document format: JSON with a "nodes" list of labels and an
// "edges" list of two-label pairs, plus an optional "port_bound" integer.
// Unknown fields are rejected so typos fail loudly instead of being ignored.
#pragma once

#include "aonsim/graph.hpp"

#include <string>

namespace aonsim {

TopologySpec parse_topology(const std::string& json_text); // throws ConfigError / TopologyError
TopologySpec load_topology_file(const std::string& path);  // throws ConfigError on I/O failure
std::string topology_to_json(const NetworkGraph& g);

} // namespace aonsim
