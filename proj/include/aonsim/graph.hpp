// Network topology: nodes joined by pairs of directed fiber links, one per
// direction. Link ids are assigned deterministically so that every rebuild
// of the same description yields the same ids: undirected edges are sorted
// by (min endpoint, max endpoint) and each edge gets ids 2k (min->max) and
// 2k+1 (max->min).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aonsim {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;

struct DirectedLink {
    LinkId id;
    NodeId from;
    NodeId to;
};

// Builder input: node labels plus undirected edges between labels.
struct TopologySpec {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::optional<std::uint32_t> port_bound; // max fiber pairs per node, if limited
};

struct Violation {
    enum class Kind { MissingReverse, SelfLoop, DuplicatePair, BadEndpoint, AdjacencyMismatch, PortBoundExceeded };
    Kind kind;
    std::string detail;
};

class NetworkGraph {
  public:
    // Validating constructor. Throws TopologyError on malformed specs.
    static NetworkGraph build(const TopologySpec& spec);

    // Unchecked assembly, used by tests that need a deliberately broken
    // graph to exercise validate().
    static NetworkGraph from_parts(std::vector<std::string> labels, std::vector<DirectedLink> links,
                                   std::optional<std::uint32_t> port_bound);

    std::size_t node_count() const { return labels_.size(); }
    std::size_t link_count() const { return links_.size(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(NodeId n) const { return labels_.at(n); }
    NodeId node(const std::string& label) const; // throws TopologyError::UnknownNode

    const DirectedLink& link(LinkId id) const { return links_.at(id); }
    const std::vector<DirectedLink>& links() const { return links_; }

    // Outgoing link ids in ascending order. Throws on unknown node.
    const std::vector<LinkId>& outgoing_links(NodeId n) const;

    std::optional<LinkId> link_between(NodeId from, NodeId to) const;

    // Links come in direction pairs: 2k and 2k+1 traverse the same fiber pair.
    LinkId reverse_link(LinkId id) const { return id ^ 1u; }

    std::optional<std::uint32_t> port_bound() const { return port_bound_; }

    std::size_t degree(NodeId n) const { return outgoing_links(n).size(); }

    // Reconstructs the builder input (labels plus sorted undirected edges).
    TopologySpec to_spec() const;

  private:
    std::vector<std::string> labels_;
    std::vector<DirectedLink> links_;
    std::vector<std::vector<LinkId>> outgoing_;
    std::optional<std::uint32_t> port_bound_;
};

// Structural health check. Returns every violated invariant; empty means
// the graph is well formed.
std::vector<Violation> validate(const NetworkGraph& g);

// Built-in topologies.
NetworkGraph ring5();         // five nodes A..E in a cycle, the default demo network
NetworkGraph single_switch(); // src -- sw -- dst, the two-endpoint benchmark network

} // namespace aonsim
