// Protocol messages. Control-plane packets (Request, Reply, Ack, Teardown)
// and datagrams travel on control wavelengths and are converted to the
// electrical domain at every switch; data flits stay optical end to end on
// the wavelengths reserved during setup.
#pragma once

#include "aonsim/graph.hpp"
#include "aonsim/rwa.hpp"

#include <cstdint>

namespace aonsim {

using RequestId = std::uint64_t;

enum class MessageKind : std::uint8_t { Request, Reply, DataFlit, Ack, Teardown, Datagram };

inline const char* to_string(MessageKind k) {
    switch (k) {
    case MessageKind::Request: return "Request";
    case MessageKind::Reply: return "Reply";
    case MessageKind::DataFlit: return "DataFlit";
    case MessageKind::Ack: return "Ack";
    case MessageKind::Teardown: return "Teardown";
    case MessageKind::Datagram: return "Datagram";
    }
    return "?";
}

inline bool rides_control_channel(MessageKind k) { return k != MessageKind::DataFlit; }

struct Message {
    MessageKind kind = MessageKind::Request;
    RequestId request = 0;
    NodeId src = 0;
    NodeId dst = 0;
    std::uint32_t flit_index = 0; // DataFlit / Datagram sequence number
    std::uint32_t flit_count = 0; // Request: stream length the destination should expect
    WavelengthId carrying = 0;    // channel used on the link being traversed
    // Request: data channel assigned on the link being traversed (the
    // receiving switch binds its incoming side to it). Reply: data channel
    // the upstream hop should transmit on; rewritten at each hop so the
    // source ends up with its own first-hop channel.
    WavelengthId announced = 0;
};

} // namespace aonsim
