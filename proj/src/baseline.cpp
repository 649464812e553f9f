#include "aonsim/baseline.hpp"

#include "aonsim/errors.hpp"
#include "aonsim/rng.hpp"
#include "aonsim/rwa.hpp"
#include "aonsim/sim_time.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <queue>
#include <string>

namespace aonsim {

double baseline_block_probability(std::uint32_t wavelengths, double alpha) {
    if (wavelengths == 0)
        throw ConfigError("wavelength count must be positive");
    return std::min(0.95, alpha / static_cast<double>(wavelengths));
}

std::uint32_t baseline_lanes(const BaselineConfig& cfg, std::uint32_t parallelism) {
    return std::min(parallelism, cfg.electronic_lanes);
}

double baseline_service_us(std::uint32_t trials, const BaselineConfig& cfg) {
    const double per_trial = cfg.per_flit_processing_us + cfg.per_flit_conversion_us;
    return static_cast<double>(trials) * per_trial + static_cast<double>(trials - 1) * cfg.retry_backoff_us;
}

namespace {

struct FlitState {
    RequestId request = 0;
    std::uint32_t hop = 0; // index into its request's path
};

struct NodeState {
    std::uint32_t busy = 0;
    std::deque<std::uint32_t> waiting; // flit indices
};

struct Ev {
    SimTime t;
    std::uint64_t seq;
    enum Kind : std::uint8_t { Arrive, ServiceDone } kind;
    NodeId node;
    std::uint32_t flit;
};

struct Later {
    bool operator()(const Ev& a, const Ev& b) const {
        if (a.t != b.t)
            return b.t < a.t;
        return b.seq < a.seq;
    }
};

} // namespace

Metrics run_baseline(const NetworkGraph& g, const BaselineConfig& cfg, const TimingConfig& timing,
                     std::uint32_t wavelengths, std::uint32_t parallelism, const std::vector<Request>& reqs,
                     std::uint64_t seed) {
    if (parallelism == 0)
        throw ConfigError("parallelism must be positive");
    if (cfg.electronic_lanes == 0)
        throw ConfigError("electronic lane count must be positive");
    const double q = baseline_block_probability(wavelengths, cfg.alpha);
    const std::uint32_t lanes = baseline_lanes(cfg, parallelism);

    Metrics m;
    m.seed = seed;
    Rng rng(seed);

    std::map<RequestId, Path> paths;
    std::map<RequestId, std::uint32_t> remaining;
    std::map<RequestId, SimTime> arrival_of;
    std::vector<FlitState> flits;
    std::vector<NodeState> nodes(g.node_count());

    std::priority_queue<Ev, std::vector<Ev>, Later> heap;
    std::uint64_t seq = 0;
    auto push = [&](SimTime t, Ev::Kind k, NodeId n, std::uint32_t f) {
        heap.push(Ev{t, seq++, k, n, f});
    };

    for (const auto& r : reqs) {
        if (r.flit_count == 0)
            throw ConfigError("request " + std::to_string(r.id) + " carries no flits");
        m.injected_requests += 1;
        m.injected_flits += r.flit_count;
        if (!m.any_injection || r.arrival < m.first_injection) {
            m.any_injection = true;
            m.first_injection = r.arrival;
        }
        auto p = shortest_path(g, r.src, r.dst);
        if (!p || p->hops() == 0) {
            m.discarded_requests += 1;
            m.discarded_flits += r.flit_count;
            continue;
        }
        paths.emplace(r.id, *p);
        remaining.emplace(r.id, r.flit_count);
        arrival_of.emplace(r.id, r.arrival);
        for (std::uint32_t i = 0; i < r.flit_count; ++i) {
            flits.push_back(FlitState{r.id, 0});
            push(r.arrival, Ev::Arrive, r.src, static_cast<std::uint32_t>(flits.size() - 1));
        }
    }

    auto start_service = [&](SimTime now, NodeId n, std::uint32_t f) {
        nodes[n].busy += 1;
        const std::uint32_t trials = rng.trials_until_success(q);
        m.oe_conversions += trials;
        push(now + SimTime::from_us(baseline_service_us(trials, cfg)), Ev::ServiceDone, n, f);
    };

    while (!heap.empty()) {
        Ev ev = heap.top();
        heap.pop();
        FlitState& fs = flits[ev.flit];
        const Path& path = paths.at(fs.request);
        switch (ev.kind) {
        case Ev::Arrive: {
            if (ev.node == path.dst) {
                m.delivered_flits += 1;
                m.any_delivery = true;
                m.last_delivery = ev.t;
                auto& left = remaining.at(fs.request);
                left -= 1;
                if (left == 0) {
                    m.completed_requests += 1;
                    m.request_latency_us.push_back((ev.t - arrival_of.at(fs.request)).to_us());
                }
                break;
            }
            NodeState& ns = nodes[ev.node];
            if (ns.busy < lanes)
                start_service(ev.t, ev.node, ev.flit);
            else
                ns.waiting.push_back(ev.flit);
            break;
        }
        case Ev::ServiceDone: {
            NodeState& ns = nodes[ev.node];
            ns.busy -= 1;
            const LinkId out = path.links.at(fs.hop);
            fs.hop += 1;
            push(ev.t + timing.propagation(), Ev::Arrive, g.link(out).to, ev.flit);
            if (!ns.waiting.empty()) {
                const std::uint32_t next = ns.waiting.front();
                ns.waiting.pop_front();
                start_service(ev.t, ev.node, next);
            }
            break;
        }
        }
    }

    if (!m.flits_conserved())
        throw SimError(SimError::Kind::InvariantViolation, "flit conservation failed in the reference model");
    m.initial_control_channels = 0;
    m.peak_control_channels = 0;
    m.final_control_channels = 0;
    return m;
}

} // namespace aonsim
