#include "aonsim/graph.hpp"

#include "aonsim/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aonsim {

NetworkGraph NetworkGraph::build(const TopologySpec& spec) {
    NetworkGraph g;
    g.port_bound_ = spec.port_bound;
    g.labels_ = spec.nodes;

    std::map<std::string, NodeId> index;
    for (NodeId i = 0; i < g.labels_.size(); ++i) {
        if (!index.emplace(g.labels_[i], i).second)
            throw TopologyError(TopologyError::Kind::DuplicateNode, "duplicate node label: " + g.labels_[i]);
    }

    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [a, b] : spec.edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end())
            throw TopologyError(TopologyError::Kind::UnknownEndpoint, "edge endpoint not in node list: " + a);
        if (ib == index.end())
            throw TopologyError(TopologyError::Kind::UnknownEndpoint, "edge endpoint not in node list: " + b);
        if (ia->second == ib->second)
            throw TopologyError(TopologyError::Kind::SelfLoop, "self loop on node: " + a);
        auto p = std::minmax(ia->second, ib->second);
        if (!seen.insert(p).second)
            throw TopologyError(TopologyError::Kind::DuplicateEdge, "duplicate edge: " + a + " -- " + b);
        pairs.push_back(p);
    }
    std::sort(pairs.begin(), pairs.end());

    g.outgoing_.assign(g.labels_.size(), {});
    for (const auto& [lo, hi] : pairs) {
        LinkId fwd = static_cast<LinkId>(g.links_.size());
        g.links_.push_back({fwd, lo, hi});
        g.links_.push_back({static_cast<LinkId>(fwd + 1), hi, lo});
        g.outgoing_[lo].push_back(fwd);
        g.outgoing_[hi].push_back(fwd + 1);
    }
    // Outgoing lists are already ascending because edges were sorted, but a
    // from_parts-style future change must not silently break that.
    for (auto& out : g.outgoing_)
        std::sort(out.begin(), out.end());
    return g;
}

NetworkGraph NetworkGraph::from_parts(std::vector<std::string> labels, std::vector<DirectedLink> links,
                                      std::optional<std::uint32_t> port_bound) {
    NetworkGraph g;
    g.labels_ = std::move(labels);
    g.links_ = std::move(links);
    g.port_bound_ = port_bound;
    g.outgoing_.assign(g.labels_.size(), {});
    for (const auto& l : g.links_)
        if (l.from < g.labels_.size())
            g.outgoing_[l.from].push_back(l.id);
    for (auto& out : g.outgoing_)
        std::sort(out.begin(), out.end());
    return g;
}

NodeId NetworkGraph::node(const std::string& label) const {
    for (NodeId i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return i;
    throw TopologyError(TopologyError::Kind::UnknownNode, "unknown node label: " + label);
}

const std::vector<LinkId>& NetworkGraph::outgoing_links(NodeId n) const {
    if (n >= outgoing_.size())
        throw TopologyError(TopologyError::Kind::UnknownNode, "unknown node id: " + std::to_string(n));
    return outgoing_[n];
}

std::optional<LinkId> NetworkGraph::link_between(NodeId from, NodeId to) const {
    if (from >= outgoing_.size())
        return std::nullopt;
    for (LinkId id : outgoing_[from])
        if (links_[id].to == to)
            return id;
    return std::nullopt;
}

TopologySpec NetworkGraph::to_spec() const {
    TopologySpec spec;
    spec.nodes = labels_;
    spec.port_bound = port_bound_;
    for (const auto& l : links_)
        if (l.from < l.to)
            spec.edges.emplace_back(labels_[l.from], labels_[l.to]);
    return spec;
}

std::vector<Violation> validate(const NetworkGraph& g) {
    std::vector<Violation> out;
    std::set<std::pair<NodeId, NodeId>> directed;
    for (const auto& l : g.links()) {
        if (l.from >= g.node_count() || l.to >= g.node_count()) {
            out.push_back({Violation::Kind::BadEndpoint, "link " + std::to_string(l.id) + " references missing node"});
            continue;
        }
        if (l.from == l.to)
            out.push_back({Violation::Kind::SelfLoop, "link " + std::to_string(l.id) + " loops on " + g.label(l.from)});
        if (!directed.insert({l.from, l.to}).second)
            out.push_back({Violation::Kind::DuplicatePair,
                           "multiple links " + g.label(l.from) + " -> " + g.label(l.to)});
    }
    for (const auto& l : g.links()) {
        if (l.from >= g.node_count() || l.to >= g.node_count() || l.from == l.to)
            continue;
        if (!directed.count({l.to, l.from}))
            out.push_back({Violation::Kind::MissingReverse,
                           "link " + g.label(l.from) + " -> " + g.label(l.to) + " has no reverse twin"});
    }
    for (NodeId n = 0; n < g.node_count(); ++n) {
        const auto& adj = g.outgoing_links(n);
        for (std::size_t i = 0; i + 1 < adj.size(); ++i)
            if (adj[i] >= adj[i + 1]) {
                out.push_back({Violation::Kind::AdjacencyMismatch, "outgoing links of " + g.label(n) + " not ascending"});
                break;
            }
        for (LinkId id : adj)
            if (id >= g.link_count() || g.link(id).from != n) {
                out.push_back({Violation::Kind::AdjacencyMismatch, "adjacency of " + g.label(n) + " disagrees with link table"});
                break;
            }
        if (g.port_bound() && adj.size() > *g.port_bound())
            out.push_back({Violation::Kind::PortBoundExceeded,
                           g.label(n) + " uses " + std::to_string(adj.size()) + " ports, bound is " +
                               std::to_string(*g.port_bound())});
    }
    return out;
}

NetworkGraph ring5() {
    TopologySpec spec;
    spec.nodes = {"A", "B", "C", "D", "E"};
    spec.edges = {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "E"}, {"E", "A"}};
    return NetworkGraph::build(spec);
}

NetworkGraph single_switch() {
    TopologySpec spec;
    spec.nodes = {"src", "sw", "dst"};
    spec.edges = {{"src", "sw"}, {"sw", "dst"}};
    return NetworkGraph::build(spec);
}

} // namespace aonsim
