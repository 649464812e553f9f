// Run statistics. Flit conservation must hold at quiescence:
// delivered + discarded_flits + dropped_flits == injected_flits.
#pragma once

#include "aonsim/sim_time.hpp"

#include <cstdint>
#include <vector>

namespace aonsim {

struct Metrics {
    std::uint64_t injected_requests = 0;
    std::uint64_t completed_requests = 0;
    std::uint64_t discarded_requests = 0; // setup failed, stream never delivered in full
    std::uint64_t injected_flits = 0;
    std::uint64_t delivered_flits = 0;
    std::uint64_t discarded_flits = 0; // flits of discarded connection requests
    std::uint64_t dropped_flits = 0;   // datagrams dropped for lack of a route
    std::uint64_t oe_conversions = 0;  // electrical conversions performed at nodes

    bool any_injection = false;
    bool any_delivery = false;
    SimTime first_injection;
    SimTime last_delivery;

    std::vector<double> request_latency_us; // completed requests, injection to last delivery

    double mean_wavelength_utilization = 0.0; // time-averaged reserved fraction across links
    std::uint32_t initial_control_channels = 0;
    std::uint32_t peak_control_channels = 0;  // max |control set| seen on any link
    std::uint32_t final_control_channels = 0; // max |control set| across links at quiescence

    std::uint64_t seed = 0;

    // Span from first injection to last delivery; zero when nothing moved.
    double makespan_us() const {
        if (!any_injection || !any_delivery)
            return 0.0;
        return (last_delivery - first_injection).to_us();
    }

    bool flits_conserved() const {
        return delivered_flits + discarded_flits + dropped_flits == injected_flits;
    }

    std::uint64_t total_discards() const { return discarded_requests; }
};

} // namespace aonsim
