#include "aonsim/rwa.hpp"

#include "aonsim/errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace aonsim {

LinkState::LinkState(LinkId link, std::uint32_t wavelength_count, std::uint32_t control_count)
    : link_(link), slots_(wavelength_count), in_flight_(wavelength_count, 0), control_count_(control_count) {
    if (control_count > wavelength_count)
        throw WavelengthError(WavelengthError::Kind::BadWavelength,
                              "control set larger than wavelength count on link " + std::to_string(link));
    for (WavelengthId w = 0; w < control_count; ++w)
        slots_[w].kind = Occupant::Kind::Control;
}

const Occupant& LinkState::occupant(WavelengthId w) const {
    if (w >= slots_.size())
        throw WavelengthError(WavelengthError::Kind::BadWavelength,
                              "wavelength " + std::to_string(w) + " out of range on link " + std::to_string(link_));
    return slots_[w];
}

std::vector<WavelengthId> LinkState::control_set() const {
    std::vector<WavelengthId> out;
    for (WavelengthId w = 0; w < slots_.size(); ++w)
        if (slots_[w].kind == Occupant::Kind::Control)
            out.push_back(w);
    return out;
}

WavelengthId LinkState::lowest_control() const {
    for (WavelengthId w = 0; w < slots_.size(); ++w)
        if (slots_[w].kind == Occupant::Kind::Control)
            return w;
    throw ProtocolError(ProtocolError::Kind::NoControlWavelength,
                        "link " + std::to_string(link_) + " has no control wavelength");
}

WavelengthId LinkState::highest_control() const {
    for (WavelengthId w = wavelength_count(); w-- > 0;)
        if (slots_[w].kind == Occupant::Kind::Control)
            return w;
    throw ProtocolError(ProtocolError::Kind::NoControlWavelength,
                        "link " + std::to_string(link_) + " has no control wavelength");
}

std::optional<WavelengthId> LinkState::first_free_data() const {
    for (WavelengthId w = 0; w < slots_.size(); ++w)
        if (slots_[w].kind == Occupant::Kind::Free)
            return w;
    return std::nullopt;
}

void LinkState::reserve(WavelengthId w, ConnectionId owner) {
    const Occupant& cur = occupant(w);
    if (cur.kind == Occupant::Kind::Control)
        throw WavelengthError(WavelengthError::Kind::ControlMisuse,
                              "wavelength " + std::to_string(w) + " on link " + std::to_string(link_) +
                                  " is a control channel");
    if (cur.kind == Occupant::Kind::Data)
        throw WavelengthError(WavelengthError::Kind::AlreadyOccupied,
                              "wavelength " + std::to_string(w) + " on link " + std::to_string(link_) +
                                  " already held by connection " + std::to_string(cur.owner));
    slots_[w] = {Occupant::Kind::Data, owner};
    ++reserved_count_;
}

bool LinkState::release(WavelengthId w, ConnectionId owner) {
    const Occupant& cur = occupant(w);
    if (cur.kind != Occupant::Kind::Data || cur.owner != owner)
        return false;
    slots_[w] = {Occupant::Kind::Free, 0};
    --reserved_count_;
    return true;
}

bool LinkState::grow_control() {
    if (data_capacity() <= 1)
        return false; // must keep at least one data channel
    auto w = first_free_data();
    if (!w)
        return false;
    slots_[*w].kind = Occupant::Kind::Control;
    ++control_count_;
    return true;
}

bool LinkState::shrink_control() {
    if (control_count_ <= 1)
        return false;
    WavelengthId w = highest_control();
    if (in_flight_[w] > 0)
        return false;
    slots_[w] = {Occupant::Kind::Free, 0};
    --control_count_;
    return true;
}

void LinkState::control_departure(WavelengthId w) { ++in_flight_.at(w); }

void LinkState::control_arrival(WavelengthId w) {
    if (in_flight_.at(w) > 0)
        --in_flight_[w];
}

std::optional<Path> shortest_path(const NetworkGraph& g, NodeId src, NodeId dst) {
    g.outgoing_links(src); // validates the ids
    g.outgoing_links(dst);
    if (src == dst)
        return Path{src, dst, {}};

    constexpr LinkId kUnset = ~LinkId{0};
    std::vector<LinkId> parent_link(g.node_count(), kUnset);
    std::vector<bool> seen(g.node_count(), false);
    seen[src] = true;
    std::deque<NodeId> frontier{src};
    while (!frontier.empty()) {
        NodeId n = frontier.front();
        frontier.pop_front();
        for (LinkId id : g.outgoing_links(n)) {
            NodeId next = g.link(id).to;
            if (seen[next])
                continue;
            seen[next] = true;
            parent_link[next] = id;
            if (next == dst) {
                Path p{src, dst, {}};
                for (NodeId at = dst; at != src;) {
                    LinkId l = parent_link[at];
                    p.links.push_back(l);
                    at = g.link(l).from;
                }
                std::reverse(p.links.begin(), p.links.end());
                return p;
            }
            frontier.push_back(next);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<WavelengthId>> feasible(const Path& path, const std::vector<LinkState>& links) {
    std::vector<WavelengthId> pick;
    pick.reserve(path.links.size());
    for (LinkId id : path.links) {
        auto w = links.at(id).first_free_data();
        if (!w)
            return std::nullopt;
        pick.push_back(*w);
    }
    return pick;
}

} // namespace aonsim
