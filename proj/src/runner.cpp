#include "aonsim/runner.hpp"

#include "aonsim/errors.hpp"
#include "aonsim/topology_io.hpp"

namespace aonsim {

Mode parse_mode(const std::string& name) {
    if (name == "proposed-connection")
        return Mode::ProposedConnection;
    if (name == "proposed-datagram")
        return Mode::ProposedDatagram;
    if (name == "baseline")
        return Mode::Baseline;
    throw ConfigError("unknown mode '" + name +
                      "' (expected proposed-connection, proposed-datagram, or baseline)");
}

void validate(const RunConfig& cfg) {
    const auto& p = cfg.protocol;
    if (p.wavelengths == 0)
        throw ConfigError("constraint violated: wavelengths >= 1");
    if (p.control_channels < 1)
        throw ConfigError("constraint violated: control channels >= 1");
    if (cfg.mode == Mode::ProposedConnection) {
        if (p.control_channels > p.wavelengths - 1)
            throw ConfigError("constraint violated: control channels <= wavelengths - 1 in "
                              "proposed-connection mode (a data channel must remain)");
    } else if (p.control_channels > p.wavelengths)
        throw ConfigError("constraint violated: control channels <= wavelengths");
    if (p.parallelism < 1)
        throw ConfigError("constraint violated: parallelism >= 1");
    if (cfg.timing.propagation_delay_us <= 0.0)
        throw ConfigError("constraint violated: propagation delay > 0");
    if (cfg.timing.switch_processing_us <= 0.0)
        throw ConfigError("constraint violated: switch processing time > 0");
    if (cfg.timing.flit_cycle_us <= 0.0)
        throw ConfigError("constraint violated: flit cycle > 0");
    if (cfg.workload.request_count == 0)
        throw ConfigError("constraint violated: request count >= 1");
    if (cfg.workload.flits_per_request == 0)
        throw ConfigError("constraint violated: flits per request >= 1");
    if (cfg.workload.arrival == ArrivalPattern::Poisson && cfg.workload.poisson_rate_per_us <= 0.0)
        throw ConfigError("constraint violated: arrival rate > 0 for random arrivals");
    if (cfg.baseline.alpha < 0.0)
        throw ConfigError("constraint violated: contention pressure >= 0");
    if (cfg.baseline.electronic_lanes == 0)
        throw ConfigError("constraint violated: electronic lanes >= 1");
}

NetworkGraph load_graph(const std::string& topology) {
    if (topology == "single-switch")
        return single_switch();
    if (topology == "ring5")
        return ring5();
    return NetworkGraph::build(load_topology_file(topology));
}

Metrics run_once(const NetworkGraph& g, const RunConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    WorkloadSpec ws = cfg.workload;
    ws.seed = seed;
    const auto reqs = generate_workload(ws, g);
    if (cfg.mode == Mode::Baseline)
        return run_baseline(g, cfg.baseline, cfg.timing, cfg.protocol.wavelengths, cfg.protocol.parallelism, reqs,
                            seed);
    Simulation sim(g, cfg.mode, cfg.protocol, cfg.timing, seed);
    sim.add_requests(reqs);
    return sim.run();
}

RunRecord record_of(const RunConfig& cfg, const Metrics& m) {
    RunRecord r;
    r.wavelengths = cfg.protocol.wavelengths;
    r.control_channels = cfg.protocol.control_channels;
    r.parallelism = cfg.protocol.parallelism;
    r.mode = to_string(cfg.mode);
    r.makespan_us = m.makespan_us();
    r.discards = m.total_discards();
    r.seed = m.seed;
    return r;
}

} // namespace aonsim
