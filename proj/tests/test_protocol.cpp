#include "aonsim/errors.hpp"
#include "aonsim/runner.hpp"
#include "aonsim/simulation.hpp"
#include "aonsim/topology_io.hpp"

#include <doctest.h>

#include <optional>
#include <vector>

using namespace aonsim;

namespace {

Request make_request(RequestId id, NodeId src, NodeId dst, std::uint32_t flits, double arrival_us = 0.0) {
    Request r;
    r.id = id;
    r.src = src;
    r.dst = dst;
    r.flit_count = flits;
    r.arrival = SimTime::from_us(arrival_us);
    return r;
}

} // namespace

TEST_CASE("a request leaves on the lowest control channel announcing a first-fit data channel") {
    const NetworkGraph g = single_switch();
    ProtocolConfig cfg;
    cfg.wavelengths = 4;
    cfg.control_channels = 2; // control set {0, 1}; data {2, 3}
    Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
    sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 1)});

    std::optional<Message> first_request;
    sim.set_trace([&](const Event& ev) {
        if (!first_request && ev.kind == EventKind::MessageArrival && ev.msg.kind == MessageKind::Request)
            first_request = ev.msg;
    });
    sim.run();
    REQUIRE(first_request.has_value());
    CHECK(first_request->carrying == 0);
    CHECK(first_request->announced == 2);
}

TEST_CASE("configurations without a control or data channel are rejected") {
    const NetworkGraph g = single_switch();
    ProtocolConfig cfg;
    cfg.wavelengths = 4;
    cfg.control_channels = 0;
    CHECK_THROWS_AS(Simulation(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1), ConfigError);
    cfg.control_channels = 4; // no data channel left
    CHECK_THROWS_AS(Simulation(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1), ConfigError);
    cfg.control_channels = 4;
    CHECK_NOTHROW(Simulation(g, Mode::ProposedDatagram, cfg, TimingConfig{}, 1)); // fine without reservations
}

TEST_CASE("conversion counts: control packets convert per switch, flits never do") {
    const NetworkGraph g = single_switch();
    ProtocolConfig cfg;

    SUBCASE("connection mode, one single-flit request over two hops") {
        Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
        sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 1)});
        const Metrics& m = sim.run();
        // request: switch + destination; reply: source; ack: switch + source
        CHECK(m.oe_conversions == 5);
        CHECK(m.delivered_flits == 1);
    }
    SUBCASE("a thousand-flit stream adds no conversions over the single-flit case") {
        Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
        sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 1000)});
        const Metrics& m = sim.run();
        CHECK(m.oe_conversions == 5);
        CHECK(m.delivered_flits == 1000);
    }
    SUBCASE("datagram mode converts every flit at every hop") {
        Simulation sim(g, Mode::ProposedDatagram, cfg, TimingConfig{}, 1);
        sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 1)});
        const Metrics& m = sim.run();
        CHECK(m.oe_conversions == 2); // transit switch + destination
        CHECK(m.delivered_flits == 1);
    }
}

TEST_CASE("mid-path exhaustion discards the request and tears down upstream reservations") {
    // line a-b-c-d, one data channel per link: c->d saturated by its own flow
    const TopologySpec spec = parse_topology(
        R"({"nodes": ["a","b","c","d"], "edges": [["a","b"],["b","c"],["c","d"]]})");
    const NetworkGraph g = NetworkGraph::build(spec);
    ProtocolConfig cfg;
    cfg.wavelengths = 2;
    cfg.control_channels = 1;
    cfg.parallelism = 2;
    Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
    sim.add_requests({
        make_request(1, g.node("c"), g.node("d"), 100, 0.0), // holds c->d's only data channel
        make_request(2, g.node("a"), g.node("d"), 50, 0.5),  // reserves a->b, b->c, then fails at c
        make_request(3, g.node("a"), g.node("c"), 5, 30.0),  // succeeds only if the teardown freed a->b, b->c
    });
    const Metrics& m = sim.run();
    CHECK(m.discarded_requests == 1);
    CHECK(m.completed_requests == 2);
    CHECK(m.discarded_flits == 50);
    CHECK(m.flits_conserved());
    CHECK(sim.total_reserved() == 0);
}

TEST_CASE("duplicate flit delivery is detected as a protocol violation") {
    const NetworkGraph g = single_switch();
    ProtocolConfig cfg;
    Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
    sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 3)});

    // the stream occupies the switch's outgoing link from t=3 with channel 1
    // reserved; flits land at the destination at t=6,7,8
    Message dup;
    dup.kind = MessageKind::DataFlit;
    dup.request = 1;
    dup.src = g.node("src");
    dup.dst = g.node("dst");
    dup.flit_index = 0;
    dup.flit_count = 3;
    dup.carrying = 1;
    Event ev;
    ev.time = SimTime::from_us(7.5);
    ev.kind = EventKind::MessageArrival;
    ev.link = *g.link_between(g.node("sw"), g.node("dst"));
    ev.msg = dup;
    sim.inject(ev);

    try {
        sim.run();
        FAIL("expected ProtocolError");
    } catch (const ProtocolError& e) {
        CHECK(e.kind == ProtocolError::Kind::DuplicateFlit);
    }
}

TEST_CASE("a flit on a channel nobody reserved violates the exclusivity invariant") {
    const NetworkGraph g = single_switch();
    Simulation sim(g, Mode::ProposedConnection, ProtocolConfig{}, TimingConfig{}, 1);
    Message stray;
    stray.kind = MessageKind::DataFlit;
    stray.request = 99;
    stray.carrying = 2;
    Event ev;
    ev.time = SimTime::from_us(1.0);
    ev.kind = EventKind::MessageArrival;
    ev.link = 0;
    ev.msg = stray;
    sim.inject(ev);
    try {
        sim.run();
        FAIL("expected SimError");
    } catch (const SimError& e) {
        CHECK(e.kind == SimError::Kind::InvariantViolation);
    }
}

TEST_CASE("replies and acks outside the expected phase are protocol errors") {
    const NetworkGraph g = single_switch();
    const LinkId into_src = *g.link_between(g.node("sw"), g.node("src"));

    SUBCASE("second reply for a streaming request") {
        Simulation sim(g, Mode::ProposedConnection, ProtocolConfig{}, TimingConfig{}, 1);
        sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 10)});
        Message rep;
        rep.kind = MessageKind::Reply;
        rep.request = 1;
        rep.src = g.node("src");
        rep.dst = g.node("dst");
        rep.announced = 1;
        Event ev;
        ev.time = SimTime::from_us(4.5); // legitimate reply lands at t=4
        ev.kind = EventKind::MessageArrival;
        ev.link = into_src;
        ev.msg = rep;
        sim.inject(ev);
        try {
            sim.run();
            FAIL("expected ProtocolError");
        } catch (const ProtocolError& e) {
            CHECK(e.kind == ProtocolError::Kind::UnexpectedReply);
        }
    }
    SUBCASE("ack while still awaiting the reply") {
        Simulation sim(g, Mode::ProposedConnection, ProtocolConfig{}, TimingConfig{}, 1);
        sim.add_requests({make_request(1, g.node("src"), g.node("dst"), 10)});
        Message ack;
        ack.kind = MessageKind::Ack;
        ack.request = 1;
        ack.src = g.node("src");
        ack.dst = g.node("dst");
        Event ev;
        ev.time = SimTime::from_us(2.0); // before the reply at t=4
        ev.kind = EventKind::MessageArrival;
        ev.link = into_src;
        ev.msg = ack;
        sim.inject(ev);
        try {
            sim.run();
            FAIL("expected ProtocolError");
        } catch (const ProtocolError& e) {
            CHECK(e.kind == ProtocolError::Kind::UnexpectedAck);
        }
    }
}

TEST_CASE("datagrams to unreachable destinations are discarded at the source") {
    const TopologySpec spec = parse_topology(R"({"nodes": ["a","b","c","d"], "edges": [["a","b"],["c","d"]]})");
    const NetworkGraph g = NetworkGraph::build(spec);
    ProtocolConfig cfg;
    Simulation sim(g, Mode::ProposedDatagram, cfg, TimingConfig{}, 1);
    sim.add_requests({make_request(1, g.node("a"), g.node("c"), 7)});
    const Metrics& m = sim.run();
    CHECK(m.discarded_requests == 1);
    CHECK(m.discarded_flits == 7);
    CHECK(m.delivered_flits == 0);
    CHECK(m.flits_conserved());
}

TEST_CASE("fixed-delay operation discards flits that outrun their path setup") {
    // 3-hop line: setup needs ~7 us to reach the last switch, so a 1 us
    // head start sends early flits into switches with no table entry yet
    const TopologySpec spec = parse_topology(
        R"({"nodes": ["a","b","c","d"], "edges": [["a","b"],["b","c"],["c","d"]]})");
    const NetworkGraph g = NetworkGraph::build(spec);
    ProtocolConfig cfg;
    cfg.fixed_start_delay_us = 1.0;
    Simulation sim(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
    sim.add_requests({make_request(1, g.node("a"), g.node("d"), 20)});
    const Metrics& m = sim.run();
    CHECK(m.discarded_flits > 0);
    CHECK(m.delivered_flits < 20);
    CHECK(m.flits_conserved());
    CHECK(sim.total_reserved() == 0);

    // a generous delay lets every flit through
    cfg.fixed_start_delay_us = 20.0;
    Simulation ok(g, Mode::ProposedConnection, cfg, TimingConfig{}, 1);
    ok.add_requests({make_request(1, g.node("a"), g.node("d"), 20)});
    const Metrics& m2 = ok.run();
    CHECK(m2.delivered_flits == 20);
    CHECK(m2.completed_requests == 1);
    CHECK(m2.discarded_flits == 0);
}

TEST_CASE("dynamic control channels grow under converter pressure and shrink back to the floor") {
    const NetworkGraph g = single_switch();
    ProtocolConfig cfg;
    cfg.wavelengths = 8;
    cfg.control_channels = 1;
    cfg.dynamic_control = true;
    Simulation sim(g, Mode::ProposedDatagram, cfg, TimingConfig{}, 1);

    std::vector<Request> reqs;
    reqs.push_back(make_request(1, g.node("src"), g.node("dst"), 120, 0.0)); // burst floods the converter
    for (int i = 0; i < 12; ++i) // stragglers drain with an empty queue, shrinking one channel each
        reqs.push_back(make_request(static_cast<RequestId>(2 + i), g.node("src"), g.node("dst"), 1,
                                    400.0 + 30.0 * i));
    sim.add_requests(reqs);
    const Metrics& m = sim.run();
    CHECK(m.initial_control_channels == 1);
    CHECK(m.peak_control_channels > 1);
    CHECK(m.final_control_channels == 1);
    CHECK(m.delivered_flits == m.injected_flits);
}

TEST_CASE("runner validation names the violated constraint and modes parse") {
    CHECK(parse_mode("proposed-connection") == Mode::ProposedConnection);
    CHECK(parse_mode("proposed-datagram") == Mode::ProposedDatagram);
    CHECK(parse_mode("baseline") == Mode::Baseline);
    CHECK_THROWS_AS(parse_mode("bogus"), ConfigError);

    RunConfig cfg;
    cfg.protocol.wavelengths = 4;
    cfg.protocol.control_channels = 4; // no data channel in connection mode
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.mode = Mode::ProposedDatagram;
    CHECK_NOTHROW(validate(cfg));
    cfg.protocol.control_channels = 5;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.protocol.control_channels = 1;
    cfg.protocol.parallelism = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}
