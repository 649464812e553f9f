// Discrete-event simulation of the hybrid control-channel protocol.
//
// Connection mode: a source reserves a data channel on its first hop and
// sends a Request on the control channel. Each switch converts the Request
// to the electrical domain (per-incoming-link converter, FIFO, fixed
// processing time per packet), reserves a data channel on the next hop,
// binds incoming channel to outgoing channel in its connection table, and
// forwards the Request. The switch before the destination confirms the
// fully reserved path with a Reply that travels back upstream; the source
// then streams its flits, which cross every switch optically with zero
// electronic delay. The destination acknowledges the final flit; the Ack
// releases each hop's reservations as it travels back. A switch that finds
// no free data channel discards the request and tears down the partial
// path upstream. Datagram mode instead forwards every message
// store-and-forward on control channels.
//
// One simulation instance is strictly single threaded; identical
// configuration and seed reproduce identical runs event for event.
#pragma once

#include "aonsim/event_queue.hpp"
#include "aonsim/graph.hpp"
#include "aonsim/message.hpp"
#include "aonsim/metrics.hpp"
#include "aonsim/rng.hpp"
#include "aonsim/rwa.hpp"
#include "aonsim/timing.hpp"
#include "aonsim/workload.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace aonsim {

enum class Mode : std::uint8_t { ProposedConnection, ProposedDatagram, Baseline };

inline const char* to_string(Mode m) {
    switch (m) {
    case Mode::ProposedConnection: return "proposed-connection";
    case Mode::ProposedDatagram: return "proposed-datagram";
    case Mode::Baseline: return "baseline";
    }
    return "?";
}

struct ProtocolConfig {
    std::uint32_t wavelengths = 4;
    std::uint32_t control_channels = 1;
    std::uint32_t parallelism = 1;
    bool dynamic_control = false;
    std::uint32_t grow_queue_threshold = 4; // grow when a converter queue exceeds this
    std::uint32_t shrink_queue_threshold = 0; // shrink when a converter queue is at most this
    // 0 = wait for the Reply handshake before streaming. > 0 = stream this
    // many us after issuing the Request without waiting; flits that beat
    // their path setup are then discarded rather than treated as bugs.
    double fixed_start_delay_us = 0.0;
};

// Concurrently serviceable flit lanes on a link: capped by the requested
// parallelism and by the channels not claimed for control traffic.
std::uint32_t channel_lanes(const LinkState& link, std::uint32_t parallelism);

class Simulation {
  public:
    // The graph is taken by value: a simulation owns its topology, so callers
    // may hand it a temporary without lifetime concerns.
    Simulation(NetworkGraph g, Mode mode, const ProtocolConfig& cfg, const TimingConfig& timing,
               std::uint64_t seed);

    void add_requests(const std::vector<Request>& reqs);

    // Runs to quiescence and returns the collected metrics. Throws
    // ProtocolError / SimError on protocol bugs or invariant violations.
    const Metrics& run();

    const Metrics& metrics() const { return metrics_; }
    const LinkState& link_state(LinkId id) const { return links_.at(id); }
    std::uint64_t total_reserved() const;
    std::size_t table_entries(NodeId n) const { return tables_.at(n).size(); }

    // Test hooks.
    void inject(Event ev) { queue_.schedule(std::move(ev)); }
    void set_trace(std::function<void(const Event&)> fn) { trace_ = std::move(fn); }

  private:
    struct Converter {
        std::deque<Message> fifo;
        SimTime busy_until;
    };

    struct TableEntry {
        LinkId in_link = 0;
        WavelengthId in_wl = 0;
        LinkId out_link = 0;
        WavelengthId out_wl = 0;
        bool at_destination = false;
        std::uint32_t expect = 0;
        std::uint32_t got = 0;
        std::vector<bool> seen;
    };

    struct SourceRequest {
        Request req;
        Path path;
        LinkId first_link = 0;
        WavelengthId first_wl = 0;
        enum class Phase : std::uint8_t { Pending, AwaitingReply, Sending, AwaitingAck, Completed, Discarded } phase =
            Phase::Pending;
        bool pipelined = false;
        bool token_held = false;
    };

    struct PacingGroup {
        std::uint32_t tokens = 0;
        std::deque<RequestId> waiting;
    };

    // Open datagram bursts: a request completes when its last flit lands.
    struct DatagramLedger {
        std::uint32_t expect = 0;
        std::uint32_t got = 0;
        SimTime arrival;
    };

    // event handlers
    void handle(const Event& ev);
    void on_injection(const Event& ev);
    void on_arrival(const Event& ev);
    void on_processing_done(const Event& ev);
    void on_slot(const Event& ev);

    // connection-mode protocol steps
    void try_issue(LinkId first_link);
    void issue_request(RequestId rid);
    void start_stream(RequestId rid, SimTime at);
    void source_on_reply(SourceRequest& sr, const Message& msg);
    void source_on_ack(SourceRequest& sr);
    void source_on_teardown(SourceRequest& sr);
    void send_release_sweep(const SourceRequest& sr);
    void process_request_at_switch(LinkId in_link, const Message& msg);
    void process_transit(LinkId in_link, const Message& msg);
    void deliver_flit(LinkId in_link, const Message& msg);

    // datagram mode
    void inject_datagrams(const Request& r);
    void forward_datagram(NodeId at, LinkId out_link, Message msg);

    // plumbing
    void send_control(NodeId from, LinkId link, Message msg);
    void convert_and_queue(LinkId link, const Message& msg);
    void reserve_channel(LinkId link, WavelengthId w, ConnectionId owner);
    void release_channel(LinkId link, WavelengthId w, ConnectionId owner);
    void note_occupancy_change();
    void adjust_control_set(LinkId link);
    void wake_sources(LinkId link);
    std::optional<LinkId> route_next(NodeId from, NodeId dst);
    void record_delivery(std::uint32_t flits = 1);
    void finalize();

    NetworkGraph graph_;
    Mode mode_;
    ProtocolConfig cfg_;
    TimingConfig timing_;
    EventQueue queue_;
    Rng rng_;
    Metrics metrics_;

    std::vector<LinkState> links_;
    std::vector<Converter> converters_;                 // one per incoming link
    std::vector<std::map<RequestId, TableEntry>> tables_; // per node
    std::map<RequestId, SourceRequest> requests_;
    std::map<RequestId, DatagramLedger> datagram_open_;
    std::map<LinkId, PacingGroup> pacing_;
    std::map<std::pair<LinkId, WavelengthId>, SimTime> channel_busy_; // datagram serialization
    std::map<std::pair<NodeId, NodeId>, std::optional<Path>> route_cache_;
    std::vector<Request> pending_;

    double util_weighted_ticks_ = 0.0; // sum of reserved-channel count x ticks
    SimTime util_last_change_;
    std::uint64_t reserved_now_ = 0;

    std::function<void(const Event&)> trace_;
    bool ran_ = false;
};

} // namespace aonsim
