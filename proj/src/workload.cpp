#include "aonsim/workload.hpp"

#include "aonsim/errors.hpp"
#include "aonsim/rng.hpp"

#include <tuple>

namespace aonsim {

std::pair<NodeId, NodeId> single_switch_endpoints(const NetworkGraph& g) {
    for (NodeId n = 0; n < g.node_count(); ++n) {
        const auto& out = g.outgoing_links(n);
        if (out.size() >= 2) {
            NodeId a = g.link(out[0]).to;
            NodeId b = g.link(out[1]).to;
            return {a, b};
        }
    }
    throw ConfigError("no node with two neighbours; single-switch pairing needs one");
}

std::vector<Request> generate_workload(const WorkloadSpec& spec, const NetworkGraph& g) {
    if (g.node_count() < 2)
        throw ConfigError("workload needs at least two nodes");
    Rng rng(spec.seed);
    std::vector<Request> out;
    out.reserve(spec.request_count);

    NodeId fixed_src = 0, fixed_dst = 0;
    if (spec.pairs == PairPattern::SingleSwitchPair)
        std::tie(fixed_src, fixed_dst) = single_switch_endpoints(g);

    double clock_us = 0.0;
    for (std::uint32_t i = 0; i < spec.request_count; ++i) {
        Request r;
        r.id = i + 1;
        if (spec.pairs == PairPattern::SingleSwitchPair) {
            r.src = fixed_src;
            r.dst = fixed_dst;
        } else {
            r.src = static_cast<NodeId>(rng.uniform_below(g.node_count()));
            r.dst = static_cast<NodeId>(rng.uniform_below(g.node_count() - 1));
            if (r.dst >= r.src)
                ++r.dst;
        }
        if (spec.arrival == ArrivalPattern::Poisson) {
            clock_us += rng.exponential(spec.poisson_rate_per_us);
            r.arrival = SimTime::from_us(clock_us);
        }
        r.flit_count = spec.flits_per_request;
        if (spec.max_flits > 0) {
            std::uint32_t lo = spec.min_flits > 0 ? spec.min_flits : 1;
            r.flit_count = lo + static_cast<std::uint32_t>(rng.uniform_below(spec.max_flits - lo + 1));
        }
        out.push_back(r);
    }
    return out;
}

} // namespace aonsim
