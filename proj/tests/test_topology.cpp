#include "aonsim/errors.hpp"
#include "aonsim/graph.hpp"
#include "aonsim/topology_io.hpp"

#include <doctest.h>

#include <algorithm>

using namespace aonsim;

TEST_CASE("ring5 builtin has the expected deterministic layout") {
    const NetworkGraph g = ring5();
    CHECK(g.node_count() == 5);
    CHECK(g.link_count() == 10);
    CHECK(g.labels() == std::vector<std::string>{"A", "B", "C", "D", "E"});

    // edges sorted by (min,max): (A,B) (A,E) (B,C) (C,D) (D,E)
    CHECK(g.link(0).from == g.node("A"));
    CHECK(g.link(0).to == g.node("B"));
    CHECK(g.link(1).from == g.node("B"));
    CHECK(g.link(1).to == g.node("A"));
    CHECK(g.outgoing_links(g.node("A")) == std::vector<LinkId>{0, 2});
    CHECK(g.outgoing_links(g.node("C")) == std::vector<LinkId>{5, 6});

    for (LinkId id = 0; id < g.link_count(); ++id) {
        CHECK(g.reverse_link(id) == (id ^ 1u));
        CHECK(g.link(g.reverse_link(id)).from == g.link(id).to);
        CHECK(g.link(g.reverse_link(id)).to == g.link(id).from);
    }
    CHECK(validate(g).empty());
}

TEST_CASE("single-switch builtin is a two-hop line") {
    const NetworkGraph g = single_switch();
    CHECK(g.node_count() == 3);
    CHECK(g.link_count() == 4);
    CHECK(g.degree(g.node("sw")) == 2);
    CHECK(g.degree(g.node("src")) == 1);
    CHECK(g.degree(g.node("dst")) == 1);
    CHECK(g.link_between(g.node("src"), g.node("sw")).has_value());
    CHECK_FALSE(g.link_between(g.node("src"), g.node("dst")).has_value());
    CHECK(validate(g).empty());
}

TEST_CASE("rebuilding an identical spec yields identical link ids") {
    TopologySpec spec;
    spec.nodes = {"n3", "n1", "n2"};
    spec.edges = {{"n3", "n1"}, {"n1", "n2"}};
    const NetworkGraph a = NetworkGraph::build(spec);
    const NetworkGraph b = NetworkGraph::build(spec);
    REQUIRE(a.link_count() == b.link_count());
    for (LinkId id = 0; id < a.link_count(); ++id) {
        CHECK(a.link(id).from == b.link(id).from);
        CHECK(a.link(id).to == b.link(id).to);
    }
    // node ids follow declaration order
    CHECK(a.label(0) == "n3");
    CHECK(a.label(1) == "n1");
    CHECK(a.label(2) == "n2");
}

TEST_CASE("malformed specs are rejected with the specific failure") {
    TopologySpec spec;
    spec.nodes = {"a", "b"};
    spec.edges = {{"a", "b"}};

    SUBCASE("duplicate node label") {
        spec.nodes.push_back("a");
        CHECK_THROWS_AS(NetworkGraph::build(spec), TopologyError);
        try {
            NetworkGraph::build(spec);
        } catch (const TopologyError& e) {
            CHECK(e.kind == TopologyError::Kind::DuplicateNode);
        }
    }
    SUBCASE("unknown endpoint") {
        spec.edges.push_back({"a", "zz"});
        try {
            NetworkGraph::build(spec);
            FAIL("expected TopologyError");
        } catch (const TopologyError& e) {
            CHECK(e.kind == TopologyError::Kind::UnknownEndpoint);
        }
    }
    SUBCASE("self loop") {
        spec.edges.push_back({"b", "b"});
        try {
            NetworkGraph::build(spec);
            FAIL("expected TopologyError");
        } catch (const TopologyError& e) {
            CHECK(e.kind == TopologyError::Kind::SelfLoop);
        }
    }
    SUBCASE("duplicate edge in either orientation") {
        spec.edges.push_back({"b", "a"});
        try {
            NetworkGraph::build(spec);
            FAIL("expected TopologyError");
        } catch (const TopologyError& e) {
            CHECK(e.kind == TopologyError::Kind::DuplicateEdge);
        }
    }
    SUBCASE("unknown node lookups throw") {
        const NetworkGraph g = NetworkGraph::build(spec);
        CHECK_THROWS_AS(g.node("nope"), TopologyError);
        CHECK_THROWS_AS(g.outgoing_links(99), TopologyError);
    }
}

TEST_CASE("validate flags deliberately broken graphs") {
    SUBCASE("missing reverse twin") {
        auto g = NetworkGraph::from_parts({"a", "b"}, {DirectedLink{0, 0, 1}}, std::nullopt);
        auto v = validate(g);
        CHECK(!v.empty());
        CHECK(std::any_of(v.begin(), v.end(),
                          [](const Violation& x) { return x.kind == Violation::Kind::MissingReverse; }));
    }
    SUBCASE("self loop") {
        auto g = NetworkGraph::from_parts({"a", "b"},
                                          {DirectedLink{0, 0, 0}, DirectedLink{1, 0, 0}}, std::nullopt);
        auto v = validate(g);
        CHECK(std::any_of(v.begin(), v.end(),
                          [](const Violation& x) { return x.kind == Violation::Kind::SelfLoop; }));
    }
    SUBCASE("port bound exceeded") {
        TopologySpec spec;
        spec.nodes = {"hub", "x", "y", "z"};
        spec.edges = {{"hub", "x"}, {"hub", "y"}, {"hub", "z"}};
        auto g = NetworkGraph::build(spec); // build does not enforce the bound retroactively
        auto bounded = NetworkGraph::from_parts(g.labels(), g.links(), 2u);
        auto v = validate(bounded);
        CHECK(std::any_of(v.begin(), v.end(),
                          [](const Violation& x) { return x.kind == Violation::Kind::PortBoundExceeded; }));
    }
}

TEST_CASE("JSON topology documents round-trip") {
    const NetworkGraph g = ring5();
    const std::string doc = topology_to_json(g);
    const TopologySpec spec = parse_topology(doc);
    const NetworkGraph h = NetworkGraph::build(spec);
    CHECK(h.labels() == g.labels());
    REQUIRE(h.link_count() == g.link_count());
    for (LinkId id = 0; id < g.link_count(); ++id) {
        CHECK(h.link(id).from == g.link(id).from);
        CHECK(h.link(id).to == g.link(id).to);
    }
}

TEST_CASE("JSON parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_topology("not json"), ConfigError);
    CHECK_THROWS_AS(parse_topology(R"({"nodes": ["a"]})"), ConfigError);             // missing edges
    CHECK_THROWS_AS(parse_topology(R"({"nodes": ["a","b"], "edges": [["a","b"]], "typo": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_topology(R"({"nodes": ["a","b"], "edges": [["a"]]})"), ConfigError); // 1-ary edge
    CHECK_THROWS_AS(parse_topology(R"({"nodes": ["a","b"], "edges": [["a","b"]], "port_bound": -1})"), ConfigError);
    CHECK_NOTHROW(parse_topology(R"({"nodes": ["a","b"], "edges": [["a","b"]], "port_bound": 4})"));
}
