// Reference model of the conventional electronic store-and-forward network
// the optical protocol is compared against. Every flit is buffered, fully
// converted, and routed at every node it crosses. Contention for the shared
// crossbar and for output channels is folded into a per-trial blocking
// probability that falls as the wavelength count grows; a blocked trial is
// retried after a backoff. Each node services at most a fixed number of
// flits concurrently (its electronic lane count), regardless of how much
// optical capacity the links would offer.
#pragma once

#include "aonsim/graph.hpp"
#include "aonsim/metrics.hpp"
#include "aonsim/timing.hpp"
#include "aonsim/workload.hpp"

#include <cstdint>
#include <vector>

namespace aonsim {

struct BaselineConfig {
    double per_flit_processing_us = 2.0;
    double per_flit_conversion_us = 1.0;
    double retry_backoff_us = 1.0;
    // per-trial blocking probability = min(0.95, alpha / wavelengths)
    double alpha = 3.6;
    std::uint32_t electronic_lanes = 8; // concurrent flits a node can service
};

// Probability that a single forwarding trial blocks and must be retried.
double baseline_block_probability(std::uint32_t wavelengths, double alpha);

// Concurrently serviceable flit lanes at a node.
std::uint32_t baseline_lanes(const BaselineConfig& cfg, std::uint32_t parallelism);

// Time a flit occupies a node's lane given the number of trials it took:
// every trial pays processing plus conversion, every retry adds a backoff.
double baseline_service_us(std::uint32_t trials, const BaselineConfig& cfg);

Metrics run_baseline(const NetworkGraph& g, const BaselineConfig& cfg, const TimingConfig& timing,
                     std::uint32_t wavelengths, std::uint32_t parallelism, const std::vector<Request>& reqs,
                     std::uint64_t seed);

} // namespace aonsim
