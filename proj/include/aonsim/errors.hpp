// Error types shared across the simulator. Configuration problems map to
// CLI exit code 1, runtime invariant violations to exit code 2.
#pragma once

#include <stdexcept>
#include <string>

namespace aonsim {

// Rejected flag/file input. Recoverable by fixing the configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct TopologyError : ConfigError {
    enum class Kind { UnknownEndpoint, DuplicateEdge, SelfLoop, DuplicateNode, UnknownNode };
    Kind kind;
    TopologyError(Kind k, const std::string& what) : ConfigError(what), kind(k) {}
};

// Wavelength bookkeeping misuse: reserving an occupied or control channel.
struct WavelengthError : std::logic_error {
    enum class Kind { AlreadyOccupied, ControlMisuse, BadWavelength };
    Kind kind;
    WavelengthError(Kind k, const std::string& what) : std::logic_error(what), kind(k) {}
};

// Protocol state machine violation. These signal bugs, not load conditions:
// a run that raises one aborts.
struct ProtocolError : std::logic_error {
    enum class Kind {
        UnknownConnection,
        DuplicateFlit,
        UnexpectedReply,
        UnexpectedAck,
        NoControlWavelength,
    };
    Kind kind;
    ProtocolError(Kind k, const std::string& what) : std::logic_error(what), kind(k) {}
};

// Event kernel misuse or a failed runtime invariant check.
struct SimError : std::logic_error {
    enum class Kind { TimeTravel, InvariantViolation, EmptyResults };
    Kind kind;
    SimError(Kind k, const std::string& what) : std::logic_error(what), kind(k) {}
};

} // namespace aonsim
