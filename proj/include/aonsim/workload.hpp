// Workload generation: a list of connection requests (who talks to whom,
// when, and how many flits). Generation is pure and seeded, so the same
// spec always produces the same request list.
#pragma once

#include "aonsim/graph.hpp"
#include "aonsim/message.hpp"
#include "aonsim/sim_time.hpp"

#include <cstdint>
#include <vector>

namespace aonsim {

enum class ArrivalPattern : std::uint8_t { AllAtZero, Poisson };
enum class PairPattern : std::uint8_t { SingleSwitchPair, UniformRandom };

struct WorkloadSpec {
    std::uint32_t request_count = 100;
    std::uint32_t flits_per_request = 100;
    ArrivalPattern arrival = ArrivalPattern::AllAtZero;
    double poisson_rate_per_us = 0.1; // used when arrival == Poisson
    PairPattern pairs = PairPattern::SingleSwitchPair;
    // When max_flits > 0, flit counts are drawn uniformly from
    // [min_flits, max_flits] instead of being fixed.
    std::uint32_t min_flits = 0;
    std::uint32_t max_flits = 0;
    std::uint64_t seed = 1;
};

struct Request {
    RequestId id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    SimTime arrival;
    std::uint32_t flit_count = 0;
};

std::vector<Request> generate_workload(const WorkloadSpec& spec, const NetworkGraph& g);

// The two endpoints used by SingleSwitchPair: the two lowest-id neighbours
// of the first node with degree >= 2.
std::pair<NodeId, NodeId> single_switch_endpoints(const NetworkGraph& g);

} // namespace aonsim
