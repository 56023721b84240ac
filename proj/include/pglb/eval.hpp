#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pglb/service.hpp"
#include "pglb/syntax.hpp"
#include "pglb/thread.hpp"

namespace pglb {

enum class DivergenceCause : std::uint8_t {
    Deadlock,
    MissingFocus,
    ReplyD,
    Cycle,          // a configuration repeated exactly
    UnboundedLoop,  // a control loop whose replies provably repeat forever
};

std::string_view causeName(DivergenceCause c);  // "deadlock", "missing-focus", ...

struct Converged {
    Reply reply;  // True or False
    ServiceFamily family;
    std::uint64_t steps;
};

struct ProvenDivergent {
    DivergenceCause cause;
    std::uint64_t steps;
    /// Cycle only: the configuration after `cycleFrom` steps equals the one
    /// after `cycleFrom + cycleLength` steps.
    std::uint64_t cycleFrom = 0;
    std::uint64_t cycleLength = 0;
};

struct FuelExhausted {
    std::uint64_t steps;
};

using EvalOutcome = std::variant<Converged, ProvenDivergent, FuelExhausted>;

/// One executed action. `position` is the 1-based instruction position for
/// extracted threads, the node id otherwise.
struct TraceEvent {
    std::uint64_t step;
    std::size_t position;
    const Action& action;
    Reply reply;
    const ServiceFamily& family;
};

/// "pc=<i> action=<f.m> reply=<T|F> state=<family literal>"
std::string renderTrace(const TraceEvent& e);

struct RunOptions {
    std::uint64_t fuel = 1'000'000;
    /// Also try to prove divergence of loops whose state keeps changing (see
    /// UnboundedLoop). Off by default: such loops then end in FuelExhausted.
    bool proveGrowth = false;
    std::function<void(const TraceEvent&)> trace;
};

RunOptions withFuel(std::uint64_t fuel, bool proveGrowth = false);

/// Runs extract(x) against c.
EvalOutcome run(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts = {});
/// Runs a (possibly hand-built) regular thread against c.
EvalOutcome runThread(const RegularThread& t, const ServiceFamily& c, const RunOptions& opts = {});

/// "T <family>", "F <family>", "D(<cause>)" or "UNKNOWN(<steps>)".
std::string renderOutcome(const EvalOutcome& o);

std::uint64_t stepsOf(const EvalOutcome& o);

/// A thread position together with the current service family.
struct MachineConfiguration {
    NodeId node;
    ServiceFamily family;

    friend bool operator==(const MachineConfiguration&, const MachineConfiguration&) = default;
};

/// Performs exactly n steps from c with no divergence detection;
/// std::nullopt when the thread stops (terminates or gets stuck) earlier.
std::optional<MachineConfiguration> advance(const RegularThread& t, MachineConfiguration c, std::uint64_t n);

enum class Tristate : std::uint8_t { Yes, No, Unknown };
std::string_view tristateName(Tristate t);

/// std::nullopt means Unknown (fuel ran out).
std::optional<Reply> replyOf(const EvalOutcome& o);
std::optional<ServiceFamily> applyOf(const EvalOutcome& o);
Tristate convergesOf(const EvalOutcome& o);

std::optional<Reply> reply(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts = {});
std::optional<ServiceFamily> apply(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts = {});
Tristate converges(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts = {});

}  // namespace pglb
