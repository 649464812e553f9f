#include "aonsim/errors.hpp"
#include "aonsim/rwa.hpp"
#include "aonsim/simulation.hpp"

#include <doctest.h>

using namespace aonsim;

TEST_CASE("link state starts with the lowest channels as control") {
    LinkState ls(0, 4, 1);
    CHECK(ls.wavelength_count() == 4);
    CHECK(ls.control_set() == std::vector<WavelengthId>{0});
    CHECK(ls.lowest_control() == 0);
    CHECK(ls.data_capacity() == 3);
    CHECK(ls.free_data_count() == 3);
    CHECK(ls.first_free_data() == WavelengthId{1});
    CHECK(ls.is_control(0));
    CHECK_FALSE(ls.is_control(1));
}

TEST_CASE("first-fit skips reserved channels") {
    LinkState ls(0, 4, 1);
    ls.reserve(1, 7);
    ls.reserve(2, 8);
    CHECK(ls.first_free_data() == WavelengthId{3});
    CHECK(ls.free_data_count() == 1);
    ls.reserve(3, 9);
    CHECK_FALSE(ls.first_free_data().has_value());
    CHECK(ls.free_data_count() == 0);
}

TEST_CASE("reservation misuse throws, release is idempotent and owner-checked") {
    LinkState ls(0, 4, 1);
    ls.reserve(1, 7);
    CHECK_THROWS_AS(ls.reserve(1, 8), WavelengthError); // already occupied
    CHECK_THROWS_AS(ls.reserve(0, 8), WavelengthError); // control channel
    CHECK_THROWS_AS(ls.reserve(99, 8), WavelengthError);

    CHECK_FALSE(ls.release(1, 8)); // not the owner: no-op
    CHECK(ls.occupant(1).owner == 7);
    CHECK(ls.release(1, 7));
    CHECK_FALSE(ls.release(1, 7)); // second release is a no-op
    CHECK(ls.occupant(1).kind == Occupant::Kind::Free);
}

TEST_CASE("control set grows into free data channels and shrinks back") {
    LinkState ls(0, 4, 1);
    CHECK(ls.grow_control());
    CHECK(ls.control_set() == std::vector<WavelengthId>{0, 1});
    CHECK(ls.data_capacity() == 2);
    CHECK(ls.grow_control());
    CHECK_FALSE(ls.grow_control()); // would leave no data channel
    CHECK(ls.control_count() == 3);

    CHECK(ls.shrink_control());
    CHECK(ls.shrink_control());
    CHECK_FALSE(ls.shrink_control()); // floor of one control channel
    CHECK(ls.control_set() == std::vector<WavelengthId>{0});
}

TEST_CASE("grow picks the lowest free data channel, never a reserved one") {
    LinkState ls(0, 4, 1);
    ls.reserve(1, 7);
    CHECK(ls.grow_control());
    CHECK(ls.control_set() == std::vector<WavelengthId>{0, 2});
    CHECK(ls.occupant(1).kind == Occupant::Kind::Data); // untouched
    ls.reserve(3, 8);
    CHECK_FALSE(ls.grow_control()); // no free data channel left to take
}

TEST_CASE("shrink refuses while a packet is in flight on the retiring channel") {
    LinkState ls(0, 4, 2);
    ls.control_departure(1);
    CHECK_FALSE(ls.shrink_control());
    ls.control_arrival(1);
    CHECK(ls.shrink_control());
    CHECK(ls.control_set() == std::vector<WavelengthId>{0});
}

TEST_CASE("shortest paths are minimum-hop and deterministic") {
    const NetworkGraph g = ring5();
    const NodeId A = g.node("A"), C = g.node("C"), D = g.node("D");

    auto p = shortest_path(g, A, C);
    REQUIRE(p.has_value());
    CHECK(p->hops() == 2);
    CHECK(p->links == std::vector<LinkId>{0, 4}); // A->B, B->C

    auto q = shortest_path(g, A, D);
    REQUIRE(q.has_value());
    CHECK(q->hops() == 2);
    CHECK(q->links == std::vector<LinkId>{2, 9}); // A->E, E->D

    auto self = shortest_path(g, A, A);
    REQUIRE(self.has_value());
    CHECK(self->hops() == 0);

    CHECK_THROWS_AS(shortest_path(g, 77, 0), TopologyError);
}

TEST_CASE("equal-hop ties resolve by ascending link id") {
    TopologySpec spec;
    spec.nodes = {"a", "b", "c", "d"};
    spec.edges = {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}};
    const NetworkGraph g = NetworkGraph::build(spec);
    auto p = shortest_path(g, g.node("a"), g.node("d"));
    REQUIRE(p.has_value());
    REQUIRE(p->hops() == 2);
    // both a-b-d and a-c-d are two hops; the lower first-link id wins
    CHECK(p->links.front() == *g.link_between(g.node("a"), g.node("b")));
}

TEST_CASE("unreachable destinations yield no path") {
    TopologySpec spec;
    spec.nodes = {"a", "b", "c", "d"};
    spec.edges = {{"a", "b"}, {"c", "d"}};
    const NetworkGraph g = NetworkGraph::build(spec);
    CHECK_FALSE(shortest_path(g, g.node("a"), g.node("c")).has_value());
}

TEST_CASE("feasible assigns first-fit per hop exactly when every hop has room") {
    const NetworkGraph g = ring5();
    std::vector<LinkState> links;
    for (LinkId id = 0; id < g.link_count(); ++id)
        links.emplace_back(id, 4, 1);

    auto p = shortest_path(g, g.node("A"), g.node("C"));
    REQUIRE(p.has_value());

    auto assignment = feasible(*p, links);
    REQUIRE(assignment.has_value());
    CHECK(*assignment == std::vector<WavelengthId>{1, 1});

    links[0].reserve(1, 42); // push hop A->B to its next channel
    assignment = feasible(*p, links);
    REQUIRE(assignment.has_value());
    CHECK(*assignment == std::vector<WavelengthId>{2, 1});

    links[4].reserve(1, 43);
    links[4].reserve(2, 44);
    links[4].reserve(3, 45); // hop B->C exhausted
    CHECK_FALSE(feasible(*p, links).has_value());
}

TEST_CASE("channel lanes are capped by parallelism and free data channels") {
    LinkState ls(0, 4, 1);
    CHECK(channel_lanes(ls, 8) == 3); // wants 8, only 3 data channels exist
    CHECK(channel_lanes(ls, 2) == 2);
    ls.reserve(1, 7);
    CHECK(channel_lanes(ls, 8) == 2);
    ls.reserve(2, 8);
    ls.reserve(3, 9);
    CHECK(channel_lanes(ls, 1) == 0);
}
