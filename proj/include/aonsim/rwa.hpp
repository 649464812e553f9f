// Routing and wavelength assignment. Every directed link carries W
// wavelength channels; a channel is either a control channel (carries
// routed header packets), reserved for one connection's data stream, or
// free. Full wavelength conversion at switches makes per-hop assignment
// independent, so first-fit per hop is complete: a path is feasible exactly
// when every hop has a free data channel.
#pragma once

#include "aonsim/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace aonsim {

using WavelengthId = std::uint32_t;
using ConnectionId = std::uint64_t;

struct Occupant {
    enum class Kind : std::uint8_t { Free, Control, Data };
    Kind kind = Kind::Free;
    ConnectionId owner = 0;
};

class LinkState {
  public:
    // The lowest control_count channels start as control channels.
    LinkState(LinkId link, std::uint32_t wavelength_count, std::uint32_t control_count);

    LinkId link() const { return link_; }
    std::uint32_t wavelength_count() const { return static_cast<std::uint32_t>(slots_.size()); }
    const Occupant& occupant(WavelengthId w) const;
    bool is_control(WavelengthId w) const { return occupant(w).kind == Occupant::Kind::Control; }

    std::vector<WavelengthId> control_set() const; // ascending
    std::uint32_t control_count() const { return control_count_; }
    WavelengthId lowest_control() const; // throws ProtocolError::NoControlWavelength
    WavelengthId highest_control() const;

    std::uint32_t data_capacity() const { return wavelength_count() - control_count_; }
    std::uint32_t reserved_count() const { return reserved_count_; }
    std::uint32_t free_data_count() const { return data_capacity() - reserved_count_; }

    // First-fit: lowest-index free non-control channel, or nothing.
    std::optional<WavelengthId> first_free_data() const;

    void reserve(WavelengthId w, ConnectionId owner); // throws WavelengthError
    // Releasing a free channel or one owned by someone else is a no-op, so
    // release is idempotent and safe to call from both ends of a hop.
    // Reports whether the channel actually went from reserved to free.
    bool release(WavelengthId w, ConnectionId owner);

    // Control-set resizing. grow_control moves the lowest free data channel
    // into the control set (refused if it would leave no data channel);
    // shrink_control retires the highest control channel if more than one
    // remains and nothing is in flight on it. Both report whether they acted.
    bool grow_control();
    bool shrink_control();

    // In-flight counts per control channel, used to keep shrink from
    // retiring a channel that still carries a packet.
    void control_departure(WavelengthId w);
    void control_arrival(WavelengthId w);

  private:
    LinkId link_;
    std::vector<Occupant> slots_;
    std::vector<std::uint32_t> in_flight_;
    std::uint32_t control_count_ = 0;
    std::uint32_t reserved_count_ = 0;
};

struct Path {
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<LinkId> links;
    std::size_t hops() const { return links.size(); }
};

// Minimum-hop path by breadth-first search; among equal-hop candidates the
// expansion order (ascending link id) picks a unique deterministic path.
// Returns nothing when dst is unreachable. Throws on unknown node ids.
std::optional<Path> shortest_path(const NetworkGraph& g, NodeId src, NodeId dst);

// First-fit channel per hop; nothing if any hop is exhausted.
std::optional<std::vector<WavelengthId>> feasible(const Path& path, const std::vector<LinkState>& links);

} // namespace aonsim
