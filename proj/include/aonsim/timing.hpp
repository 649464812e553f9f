// Timing constants of the optical model.
#pragma once

#include "aonsim/sim_time.hpp"

namespace aonsim {

struct TimingConfig {
    double propagation_delay_us = 1.0; // per hop, any message
    double switch_processing_us = 2.0; // per control packet converted at a switch
    double flit_cycle_us = 1.0;        // serialization time of one flit
    double oe_conversion_us = 0.0;     // extra conversion latency on top of processing

    SimTime propagation() const { return SimTime::from_us(propagation_delay_us); }
    SimTime processing() const { return SimTime::from_us(switch_processing_us + oe_conversion_us); }
    SimTime flit_cycle() const { return SimTime::from_us(flit_cycle_us); }

    // Flits of lead needed so that a setup round trip through the first
    // switch (request out, reply back) finishes by the end of the current
    // stream when issued this many flit cycles early.
    std::uint32_t pipeline_lead_flits() const {
        double rtt = 2.0 * propagation_delay_us + switch_processing_us + oe_conversion_us;
        double cycles = rtt / flit_cycle_us;
        auto lead = static_cast<std::uint32_t>(cycles);
        if (static_cast<double>(lead) < cycles)
            ++lead;
        return lead;
    }
};

} // namespace aonsim
