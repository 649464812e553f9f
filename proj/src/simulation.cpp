#include "aonsim/simulation.hpp"

#include "aonsim/errors.hpp"

#include <algorithm>
#include <string>

namespace aonsim {

namespace {

std::string wl_tag(LinkId link, WavelengthId w) {
    return "link " + std::to_string(link) + " channel " + std::to_string(w);
}

} // namespace

std::uint32_t channel_lanes(const LinkState& link, std::uint32_t parallelism) {
    return std::min<std::uint32_t>(parallelism, link.free_data_count());
}

Simulation::Simulation(NetworkGraph g, Mode mode, const ProtocolConfig& cfg, const TimingConfig& timing,
                       std::uint64_t seed)
    : graph_(std::move(g)), mode_(mode), cfg_(cfg), timing_(timing), rng_(seed) {
    if (cfg.wavelengths == 0)
        throw ConfigError("wavelength count must be positive");
    if (cfg.control_channels == 0)
        throw ConfigError("at least one control channel is required");
    if (cfg.control_channels > cfg.wavelengths)
        throw ConfigError("control channels cannot exceed the wavelength count");
    if (mode == Mode::ProposedConnection && cfg.control_channels >= cfg.wavelengths)
        throw ConfigError("connection mode needs at least one data channel per link");
    if (cfg.parallelism == 0)
        throw ConfigError("parallelism must be positive");
    links_.reserve(graph_.link_count());
    for (LinkId id = 0; id < graph_.link_count(); ++id)
        links_.emplace_back(id, cfg.wavelengths, cfg.control_channels);
    converters_.resize(graph_.link_count());
    tables_.resize(graph_.node_count());
    metrics_.seed = seed;
    metrics_.initial_control_channels = cfg.control_channels;
    metrics_.peak_control_channels = cfg.control_channels;
    metrics_.final_control_channels = cfg.control_channels;
}

void Simulation::add_requests(const std::vector<Request>& reqs) {
    for (const auto& r : reqs) {
        if (r.flit_count == 0)
            throw ConfigError("request " + std::to_string(r.id) + " carries no flits");
        if (r.src == r.dst)
            throw ConfigError("request " + std::to_string(r.id) + " addresses its own source");
        if (r.src >= graph_.node_count() || r.dst >= graph_.node_count())
            throw ConfigError("request " + std::to_string(r.id) + " references an unknown node");
    }
    pending_.insert(pending_.end(), reqs.begin(), reqs.end());
}

std::uint64_t Simulation::total_reserved() const {
    std::uint64_t n = 0;
    for (const auto& l : links_)
        n += l.reserved_count();
    return n;
}

const Metrics& Simulation::run() {
    if (ran_)
        return metrics_;
    ran_ = true;
    for (const auto& r : pending_) {
        Event ev;
        ev.time = r.arrival;
        ev.kind = EventKind::WorkloadInjection;
        ev.request = r.id;
        queue_.schedule(std::move(ev));
    }
    while (auto ev = queue_.pop()) {
        if (trace_)
            trace_(*ev);
        handle(*ev);
    }
    finalize();
    return metrics_;
}

void Simulation::handle(const Event& ev) {
    switch (ev.kind) {
    case EventKind::WorkloadInjection: on_injection(ev); break;
    case EventKind::MessageArrival: on_arrival(ev); break;
    case EventKind::ProcessingDone: on_processing_done(ev); break;
    case EventKind::TransmissionSlotFree: on_slot(ev); break;
    }
}

// ---------------------------------------------------------------- injection

void Simulation::on_injection(const Event& ev) {
    auto it = std::find_if(pending_.begin(), pending_.end(), [&](const Request& r) { return r.id == ev.request; });
    const Request& r = *it;
    if (!metrics_.any_injection) {
        metrics_.any_injection = true;
        metrics_.first_injection = queue_.now();
    }
    metrics_.injected_requests += 1;
    metrics_.injected_flits += r.flit_count;

    if (mode_ == Mode::ProposedDatagram) {
        inject_datagrams(r);
        return;
    }

    SourceRequest sr;
    sr.req = r;
    auto path = shortest_path(graph_, r.src, r.dst);
    if (!path || path->hops() == 0) {
        metrics_.discarded_requests += 1;
        metrics_.discarded_flits += r.flit_count;
        sr.phase = SourceRequest::Phase::Discarded;
        requests_.emplace(r.id, std::move(sr));
        return;
    }
    sr.path = *path;
    sr.first_link = sr.path.links.front();
    const LinkId first_link = sr.first_link;
    requests_.emplace(r.id, std::move(sr));
    pacing_[first_link].waiting.push_back(r.id);
    try_issue(first_link);
}

// Admission control at the source: at most min(parallelism, data capacity)
// requests hold a transmit token per outgoing link. A token returns early
// (while the tail of the stream is still being clocked out) only when the
// link has enough spare data channels to absorb the next request's setup
// overlapping this one's tail; otherwise it returns with the Ack.
void Simulation::try_issue(LinkId first_link) {
    auto pit = pacing_.find(first_link);
    if (pit == pacing_.end())
        return;
    PacingGroup& pg = pit->second;
    while (!pg.waiting.empty()) {
        LinkState& link = links_[first_link];
        std::uint32_t lanes = std::min<std::uint32_t>(cfg_.parallelism, link.data_capacity());
        if (lanes == 0 || pg.tokens >= lanes)
            return;
        auto wl = link.first_free_data();
        if (!wl)
            return;
        RequestId rid = pg.waiting.front();
        pg.waiting.pop_front();
        pg.tokens += 1;
        SourceRequest& sr = requests_.at(rid);
        sr.token_held = true;
        sr.first_wl = *wl;
        sr.pipelined = link.data_capacity() >= lanes + timing_.pipeline_lead_flits();
        reserve_channel(first_link, *wl, rid);
        issue_request(rid);
    }
}

void Simulation::issue_request(RequestId rid) {
    SourceRequest& sr = requests_.at(rid);
    sr.phase = SourceRequest::Phase::AwaitingReply;
    Message m;
    m.kind = MessageKind::Request;
    m.request = rid;
    m.src = sr.req.src;
    m.dst = sr.req.dst;
    m.flit_count = sr.req.flit_count;
    m.announced = sr.first_wl;
    send_control(sr.req.src, sr.first_link, std::move(m));
    if (cfg_.fixed_start_delay_us > 0.0) {
        Event ev;
        ev.time = queue_.now() + SimTime::from_us(cfg_.fixed_start_delay_us);
        ev.kind = EventKind::TransmissionSlotFree;
        ev.action = SlotAction::DelayedStart;
        ev.request = rid;
        queue_.schedule(std::move(ev));
    }
}

// Flit i leaves the source at start + i * flit_cycle and crosses every hop
// optically, so its head reaches the destination one propagation delay per
// hop later. The first-hop reservation is held until the final flit's tail
// clears the link.
void Simulation::start_stream(RequestId rid, SimTime at) {
    SourceRequest& sr = requests_.at(rid);
    sr.phase = SourceRequest::Phase::Sending;
    const std::uint32_t n = sr.req.flit_count;
    for (std::uint32_t i = 0; i < n; ++i) {
        Message f;
        f.kind = MessageKind::DataFlit;
        f.request = rid;
        f.src = sr.req.src;
        f.dst = sr.req.dst;
        f.flit_index = i;
        f.flit_count = n;
        f.carrying = sr.first_wl;
        Event ev;
        ev.time = at + timing_.flit_cycle() * i + timing_.propagation();
        ev.kind = EventKind::MessageArrival;
        ev.link = sr.first_link;
        ev.msg = std::move(f);
        queue_.schedule(std::move(ev));
    }
    if (sr.pipelined) {
        const std::uint32_t lead = timing_.pipeline_lead_flits();
        Event tok;
        tok.time = at + timing_.flit_cycle() * (n > lead ? n - lead : 0);
        tok.kind = EventKind::TransmissionSlotFree;
        tok.action = SlotAction::IssueToken;
        tok.request = rid;
        queue_.schedule(std::move(tok));
    }
    Event end;
    end.time = at + timing_.flit_cycle() * n + timing_.propagation();
    end.kind = EventKind::TransmissionSlotFree;
    end.action = SlotAction::StreamEnd;
    end.request = rid;
    queue_.schedule(std::move(end));
}

void Simulation::on_slot(const Event& ev) {
    SourceRequest& sr = requests_.at(ev.request);
    switch (ev.action) {
    case SlotAction::IssueToken: {
        if (sr.token_held) {
            sr.token_held = false;
            pacing_[sr.first_link].tokens -= 1;
            try_issue(sr.first_link);
        }
        break;
    }
    case SlotAction::StreamEnd: {
        if (sr.phase == SourceRequest::Phase::Sending)
            sr.phase = SourceRequest::Phase::AwaitingAck;
        release_channel(sr.first_link, sr.first_wl, sr.req.id);
        if (cfg_.fixed_start_delay_us > 0.0)
            send_release_sweep(sr); // no ack will walk the path; free it behind the stream
        // transmitter is idle once the final flit has left: the lane can
        // admit the next request even though the ack is still in flight
        if (sr.token_held) {
            sr.token_held = false;
            pacing_[sr.first_link].tokens -= 1;
            try_issue(sr.first_link);
        }
        break;
    }
    case SlotAction::DelayedStart: {
        if (sr.phase == SourceRequest::Phase::AwaitingReply)
            start_stream(sr.req.id, queue_.now());
        break;
    }
    case SlotAction::None: break;
    }
}

void Simulation::source_on_reply(SourceRequest& sr, const Message& msg) {
    if (cfg_.fixed_start_delay_us > 0.0)
        return; // stream already scheduled at a fixed offset
    if (sr.phase != SourceRequest::Phase::AwaitingReply)
        throw ProtocolError(ProtocolError::Kind::UnexpectedReply,
                            "reply for request " + std::to_string(sr.req.id) + " in phase " +
                                std::to_string(static_cast<int>(sr.phase)));
    if (msg.announced != sr.first_wl)
        throw SimError(SimError::Kind::InvariantViolation,
                       "reply announces a different first-hop channel than the source reserved");
    start_stream(sr.req.id, queue_.now());
}

void Simulation::source_on_ack(SourceRequest& sr) {
    if (sr.phase != SourceRequest::Phase::Sending && sr.phase != SourceRequest::Phase::AwaitingAck)
        throw ProtocolError(ProtocolError::Kind::UnexpectedAck,
                            "ack for request " + std::to_string(sr.req.id) + " in phase " +
                                std::to_string(static_cast<int>(sr.phase)));
    sr.phase = SourceRequest::Phase::Completed;
    metrics_.completed_requests += 1;
    metrics_.request_latency_us.push_back((queue_.now() - sr.req.arrival).to_us());
    if (sr.token_held) {
        sr.token_held = false;
        pacing_[sr.first_link].tokens -= 1;
    }
    try_issue(sr.first_link);
}

void Simulation::source_on_teardown(SourceRequest& sr) {
    if (sr.phase != SourceRequest::Phase::AwaitingReply) {
        if (cfg_.fixed_start_delay_us > 0.0)
            return; // stream already under way; its flits die at the broken switch
        throw SimError(SimError::Kind::InvariantViolation,
                       "teardown reached a source that was not awaiting a reply");
    }
    sr.phase = SourceRequest::Phase::Discarded;
    metrics_.discarded_requests += 1;
    metrics_.discarded_flits += sr.req.flit_count;
    release_channel(sr.first_link, sr.first_wl, sr.req.id);
    if (cfg_.fixed_start_delay_us > 0.0)
        send_release_sweep(sr); // free the partial path before the stream ever starts
    if (sr.token_held) {
        sr.token_held = false;
        pacing_[sr.first_link].tokens -= 1;
    }
    try_issue(sr.first_link);
}

// Fixed-delay operation has no ack to release the path hop by hop; instead
// the source trails the stream with a release packet that travels the same
// direction, so it can never overtake a flit still in flight.
void Simulation::send_release_sweep(const SourceRequest& sr) {
    Message td;
    td.kind = MessageKind::Teardown;
    td.request = sr.req.id;
    td.src = sr.req.src;
    td.dst = sr.req.dst;
    send_control(sr.req.src, sr.first_link, std::move(td));
}

// ---------------------------------------------------------------- arrivals

void Simulation::on_arrival(const Event& ev) {
    const Message& msg = ev.msg;
    const LinkId in_link = ev.link;
    const NodeId here = graph_.link(in_link).to;
    LinkState& link = links_[in_link];

    if (rides_control_channel(msg.kind)) {
        if (!link.is_control(msg.carrying))
            throw SimError(SimError::Kind::InvariantViolation,
                           to_string(msg.kind) + std::string(" arrived on a data channel: ") +
                               wl_tag(in_link, msg.carrying));
        link.control_arrival(msg.carrying);
    } else {
        const Occupant& occ = link.occupant(msg.carrying);
        if (occ.kind != Occupant::Kind::Data || occ.owner != msg.request)
            throw SimError(SimError::Kind::InvariantViolation,
                           "flit of request " + std::to_string(msg.request) +
                               " rode an unreserved channel: " + wl_tag(in_link, msg.carrying));
    }

    if (msg.kind == MessageKind::DataFlit) {
        deliver_flit(in_link, msg);
        return;
    }

    bool terminal = false;
    switch (msg.kind) {
    case MessageKind::Datagram:
    case MessageKind::Request: terminal = msg.dst == here; break;
    case MessageKind::Teardown: terminal = msg.src == here || msg.dst == here; break;
    default: terminal = msg.src == here; break;
    }
    if (!terminal) {
        convert_and_queue(in_link, msg);
        return;
    }

    // Messages addressed to this node are converted and consumed on the spot;
    // the per-link converter pipeline only delays traffic that must continue.
    metrics_.oe_conversions += 1;
    switch (msg.kind) {
    case MessageKind::Request: {
        TableEntry te;
        te.in_link = in_link;
        te.in_wl = msg.announced;
        te.at_destination = true;
        te.expect = msg.flit_count;
        te.seen.assign(msg.flit_count, false);
        tables_[here][msg.request] = std::move(te);
        if (graph_.link(in_link).from == msg.src && cfg_.fixed_start_delay_us <= 0.0) {
            // single-hop path: the destination itself confirms the setup
            Message rep;
            rep.kind = MessageKind::Reply;
            rep.request = msg.request;
            rep.src = msg.src;
            rep.dst = msg.dst;
            rep.announced = msg.announced;
            send_control(here, graph_.reverse_link(in_link), std::move(rep));
        }
        break;
    }
    case MessageKind::Reply: source_on_reply(requests_.at(msg.request), msg); break;
    case MessageKind::Ack: source_on_ack(requests_.at(msg.request)); break;
    case MessageKind::Teardown:
        if (msg.dst == here) {
            // release sweep reached the receiver: drop whatever binding remains
            auto& table = tables_[here];
            auto it = table.find(msg.request);
            if (it != table.end()) {
                release_channel(it->second.in_link, it->second.in_wl, msg.request);
                table.erase(it);
            }
        } else
            source_on_teardown(requests_.at(msg.request));
        break;
    case MessageKind::Datagram: {
        record_delivery();
        auto open = datagram_open_.find(msg.request);
        if (open != datagram_open_.end() && ++open->second.got == open->second.expect) {
            metrics_.completed_requests += 1;
            metrics_.request_latency_us.push_back((queue_.now() - open->second.arrival).to_us());
            datagram_open_.erase(open);
        }
        break;
    }
    default: break;
    }
}

void Simulation::deliver_flit(LinkId in_link, const Message& msg) {
    const NodeId here = graph_.link(in_link).to;
    auto& table = tables_[here];
    auto it = table.find(msg.request);
    if (it == table.end()) {
        if (cfg_.fixed_start_delay_us > 0.0) {
            // flit raced ahead of its path setup; the switch cannot route it
            metrics_.discarded_flits += 1;
            return;
        }
        throw ProtocolError(ProtocolError::Kind::UnknownConnection,
                            "flit of request " + std::to_string(msg.request) + " reached node " +
                                graph_.label(here) + " before its table entry");
    }
    TableEntry& te = it->second;
    if (te.at_destination) {
        if (te.seen[msg.flit_index])
            throw ProtocolError(ProtocolError::Kind::DuplicateFlit,
                                "flit " + std::to_string(msg.flit_index) + " of request " +
                                    std::to_string(msg.request) + " delivered twice");
        te.seen[msg.flit_index] = true;
        te.got += 1;
        record_delivery();
        if (te.got == te.expect) {
            // the receiver saw the whole stream: its own segment frees now,
            // without waiting for the ack to cross the upstream converter
            release_channel(in_link, te.in_wl, msg.request);
            if (cfg_.fixed_start_delay_us <= 0.0) {
                Message ack;
                ack.kind = MessageKind::Ack;
                ack.request = msg.request;
                ack.src = msg.src;
                ack.dst = msg.dst;
                send_control(here, graph_.reverse_link(in_link), std::move(ack));
            } else {
                // no Ack in fixed-delay operation; completion is observed here
                SourceRequest& sr = requests_.at(msg.request);
                sr.phase = SourceRequest::Phase::Completed;
                metrics_.completed_requests += 1;
                metrics_.request_latency_us.push_back((queue_.now() - sr.req.arrival).to_us());
            }
            table.erase(it);
        }
        return;
    }
    Message fwd = msg;
    fwd.carrying = te.out_wl;
    Event ev;
    ev.time = queue_.now() + timing_.propagation();
    ev.kind = EventKind::MessageArrival;
    ev.link = te.out_link;
    ev.msg = std::move(fwd);
    queue_.schedule(std::move(ev));
}

// ---------------------------------------------------------- switch pipeline

void Simulation::convert_and_queue(LinkId link, const Message& msg) {
    metrics_.oe_conversions += 1;
    Converter& cv = converters_[link];
    cv.fifo.push_back(msg);
    SimTime start = std::max(queue_.now(), cv.busy_until);
    cv.busy_until = start + timing_.processing();
    Event ev;
    ev.time = cv.busy_until;
    ev.kind = EventKind::ProcessingDone;
    ev.link = link;
    queue_.schedule(std::move(ev));
}

void Simulation::on_processing_done(const Event& ev) {
    Converter& cv = converters_[ev.link];
    if (cv.fifo.empty())
        throw SimError(SimError::Kind::InvariantViolation, "converter finished with an empty queue");
    Message msg = std::move(cv.fifo.front());
    cv.fifo.pop_front();
    const NodeId here = graph_.link(ev.link).to;
    if (msg.kind == MessageKind::Request)
        process_request_at_switch(ev.link, msg);
    else if (msg.kind == MessageKind::Datagram) {
        auto next = route_next(here, msg.dst);
        if (!next)
            metrics_.dropped_flits += 1;
        else
            forward_datagram(here, *next, std::move(msg));
    } else
        process_transit(ev.link, msg);
    if (cfg_.dynamic_control && mode_ != Mode::Baseline)
        adjust_control_set(ev.link);
}

void Simulation::process_request_at_switch(LinkId in_link, const Message& msg) {
    const NodeId here = graph_.link(in_link).to;
    auto next = route_next(here, msg.dst);
    if (!next)
        throw SimError(SimError::Kind::InvariantViolation,
                       "request routed to node " + graph_.label(here) + " with no path to its destination");
    LinkState& out = links_[*next];
    auto wl = out.first_free_data();
    if (!wl) {
        // no capacity downstream: drop the request and free the partial path
        Message td;
        td.kind = MessageKind::Teardown;
        td.request = msg.request;
        td.src = msg.src;
        td.dst = msg.dst;
        send_control(here, graph_.reverse_link(in_link), std::move(td));
        return;
    }
    reserve_channel(*next, *wl, msg.request);
    TableEntry te;
    te.in_link = in_link;
    te.in_wl = msg.announced;
    te.out_link = *next;
    te.out_wl = *wl;
    tables_[here][msg.request] = te;

    Message fwd = msg;
    fwd.announced = *wl;
    send_control(here, *next, std::move(fwd));

    if (graph_.link(*next).to == msg.dst && cfg_.fixed_start_delay_us <= 0.0) {
        // the last switch on the path confirms the whole reservation
        Message rep;
        rep.kind = MessageKind::Reply;
        rep.request = msg.request;
        rep.src = msg.src;
        rep.dst = msg.dst;
        rep.announced = te.in_wl;
        send_control(here, graph_.reverse_link(in_link), std::move(rep));
    }
}

void Simulation::process_transit(LinkId in_link, const Message& msg) {
    const NodeId here = graph_.link(in_link).to;
    auto& table = tables_[here];
    auto it = table.find(msg.request);
    if (it == table.end()) {
        if (msg.kind == MessageKind::Teardown && cfg_.fixed_start_delay_us > 0.0)
            return; // release sweep reached the hop where the setup had failed
        throw SimError(SimError::Kind::InvariantViolation,
                       to_string(msg.kind) + std::string(" of request ") + std::to_string(msg.request) +
                           " crossed node " + graph_.label(here) + " without a table entry");
    }
    TableEntry te = it->second;
    Message fwd = msg;
    LinkId fwd_link = graph_.reverse_link(te.in_link);
    switch (msg.kind) {
    case MessageKind::Reply:
        // rewrite the announcement so each upstream node, and finally the
        // source, learns the data channel reserved on its own segment
        fwd.announced = te.in_wl;
        break;
    case MessageKind::Ack:
    case MessageKind::Teardown:
        if (msg.kind == MessageKind::Teardown && in_link != te.in_link && cfg_.fixed_start_delay_us > 0.0)
            break; // failure notice heading for the source; the trailing sweep frees the path
        release_channel(te.in_link, te.in_wl, msg.request);
        release_channel(te.out_link, te.out_wl, msg.request);
        table.erase(it);
        if (msg.kind == MessageKind::Teardown && in_link == te.in_link)
            fwd_link = te.out_link; // release sweep keeps moving toward the receiver
        break;
    default:
        throw SimError(SimError::Kind::InvariantViolation,
                       to_string(msg.kind) + std::string(" is not a transit control message"));
    }
    send_control(here, fwd_link, std::move(fwd));
}

// ---------------------------------------------------------------- datagrams

void Simulation::inject_datagrams(const Request& r) {
    auto next = route_next(r.src, r.dst);
    if (!next) {
        metrics_.discarded_requests += 1;
        metrics_.discarded_flits += r.flit_count;
        return;
    }
    datagram_open_[r.id] = DatagramLedger{r.flit_count, 0, r.arrival};
    for (std::uint32_t i = 0; i < r.flit_count; ++i) {
        Message d;
        d.kind = MessageKind::Datagram;
        d.request = r.id;
        d.src = r.src;
        d.dst = r.dst;
        d.flit_index = i;
        d.flit_count = r.flit_count;
        forward_datagram(r.src, *next, std::move(d));
    }
}

// Store-and-forward on a control channel: the whole datagram must be
// clocked onto the link (one flit cycle) before its head propagates.
void Simulation::forward_datagram(NodeId, LinkId out_link, Message msg) {
    LinkState& out = links_[out_link];
    WavelengthId best = 0;
    SimTime best_free = SimTime::from_ticks(-1);
    for (WavelengthId w : out.control_set()) {
        SimTime busy = channel_busy_.count({out_link, w}) ? channel_busy_[{out_link, w}] : SimTime{};
        if (best_free.ticks() < 0 || busy < best_free) {
            best_free = busy;
            best = w;
        }
    }
    SimTime depart = std::max(queue_.now(), best_free);
    channel_busy_[{out_link, best}] = depart + timing_.flit_cycle();
    out.control_departure(best);
    msg.carrying = best;
    Event ev;
    ev.time = depart + timing_.flit_cycle() + timing_.propagation();
    ev.kind = EventKind::MessageArrival;
    ev.link = out_link;
    ev.msg = std::move(msg);
    queue_.schedule(std::move(ev));
}

// ----------------------------------------------------------------- helpers

void Simulation::send_control(NodeId from, LinkId link, Message msg) {
    if (graph_.link(link).from != from)
        throw SimError(SimError::Kind::InvariantViolation, "control message sent on a link not leaving its node");
    LinkState& ls = links_[link];
    msg.carrying = ls.lowest_control();
    ls.control_departure(msg.carrying);
    Event ev;
    ev.time = queue_.now() + timing_.propagation();
    ev.kind = EventKind::MessageArrival;
    ev.link = link;
    ev.msg = std::move(msg);
    queue_.schedule(std::move(ev));
}

void Simulation::reserve_channel(LinkId link, WavelengthId w, ConnectionId owner) {
    note_occupancy_change();
    links_[link].reserve(w, owner);
    reserved_now_ += 1;
}

void Simulation::release_channel(LinkId link, WavelengthId w, ConnectionId owner) {
    note_occupancy_change();
    if (links_[link].release(w, owner)) {
        reserved_now_ -= 1;
        wake_sources(link);
    }
}

void Simulation::note_occupancy_change() {
    util_weighted_ticks_ +=
        static_cast<double>(reserved_now_) * static_cast<double>((queue_.now() - util_last_change_).ticks());
    util_last_change_ = queue_.now();
}

void Simulation::wake_sources(LinkId link) {
    if (pacing_.count(link))
        try_issue(link);
}

// Per-link control-plane elasticity: a congested converter queue converts
// the lowest free data channel into an extra control channel; an idle one
// retires the highest control channel (never the last, never one with a
// packet still in flight).
void Simulation::adjust_control_set(LinkId link) {
    LinkState& ls = links_[link];
    const std::size_t qlen = converters_[link].fifo.size();
    if (qlen > cfg_.grow_queue_threshold) {
        if (ls.grow_control()) {
            std::uint32_t peak = 0;
            for (const auto& l : links_)
                peak = std::max(peak, l.control_count());
            metrics_.peak_control_channels = std::max(metrics_.peak_control_channels, peak);
        }
    } else if (qlen <= cfg_.shrink_queue_threshold && ls.control_count() > 1) {
        ls.shrink_control();
    }
}

std::optional<LinkId> Simulation::route_next(NodeId from, NodeId dst) {
    auto key = std::make_pair(from, dst);
    auto it = route_cache_.find(key);
    if (it == route_cache_.end())
        it = route_cache_.emplace(key, shortest_path(graph_, from, dst)).first;
    if (!it->second || it->second->hops() == 0)
        return std::nullopt;
    return it->second->links.front();
}

void Simulation::record_delivery(std::uint32_t flits) {
    metrics_.delivered_flits += flits;
    metrics_.any_delivery = true;
    metrics_.last_delivery = queue_.now();
}

void Simulation::finalize() {
    note_occupancy_change();
    // datagram bursts that lost flits to routing dead ends never complete
    metrics_.discarded_requests += datagram_open_.size();
    datagram_open_.clear();
    for (auto& [rid, sr] : requests_) {
        if (sr.phase == SourceRequest::Phase::Completed || sr.phase == SourceRequest::Phase::Discarded)
            continue;
        if (cfg_.fixed_start_delay_us > 0.0) {
            // stream outran its setup; whatever was not delivered or
            // discarded in flight never left the source
            sr.phase = SourceRequest::Phase::Discarded;
            metrics_.discarded_requests += 1;
        } else
            throw SimError(SimError::Kind::InvariantViolation,
                           "request " + std::to_string(rid) + " never terminated");
    }
    if (cfg_.fixed_start_delay_us > 0.0) {
        // flit conservation at the ledger level: anything not delivered was
        // discarded at a switch without a matching table entry
        std::uint64_t accounted = metrics_.delivered_flits + metrics_.discarded_flits + metrics_.dropped_flits;
        if (accounted < metrics_.injected_flits)
            metrics_.discarded_flits += metrics_.injected_flits - accounted;
    }
    if (!metrics_.flits_conserved())
        throw SimError(SimError::Kind::InvariantViolation, "flit conservation failed");
    std::uint32_t final_peak = 0;
    for (const auto& l : links_)
        final_peak = std::max(final_peak, l.control_count());
    metrics_.final_control_channels = final_peak;
    const double span_ticks = static_cast<double>(queue_.now().ticks());
    const double denom = span_ticks * static_cast<double>(links_.size()) * static_cast<double>(cfg_.wavelengths);
    metrics_.mean_wavelength_utilization = denom > 0.0 ? util_weighted_ticks_ / denom : 0.0;
}

} // namespace aonsim
