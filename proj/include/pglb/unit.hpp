#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pglb/syntax.hpp"

namespace pglb {

using Natural = std::uint64_t;

/// A tape content `left <> right` over {0,1,:}; the head sits on the first
/// symbol of `right`. There are no blanks: both ends are hard ends.
struct TapeState {
    std::string left;
    std::string right;

    TapeState() = default;
    /// Throws LiteralError on symbols outside {0,1,:}.
    TapeState(std::string left, std::string right);

    /// `<> content`
    static TapeState atStart(std::string content) { return TapeState("", std::move(content)); }

    std::string content() const { return left + right; }
    TapeState rewound() const { return atStart(content()); }
    std::size_t colonCount() const noexcept;
    std::size_t length() const noexcept { return left.size() + right.size(); }

    /// Literal "left|right", e.g. "10|0:11".
    std::string render() const { return left + "|" + right; }
    static TapeState parse(std::string_view literal);

    friend bool operator==(const TapeState&, const TapeState&) = default;
    friend auto operator<=>(const TapeState&, const TapeState&) = default;
};

bool isTapeSymbol(char c) noexcept;

enum class StateSpace : std::uint8_t { Counter, Tape };

std::string_view stateSpaceName(StateSpace space);

using UnitState = std::variant<Natural, TapeState>;

StateSpace spaceOf(const UnitState& s) noexcept;
std::string renderState(const UnitState& s);
/// Counter states are decimal naturals; tape states use the "left|right" literal.
UnitState parseState(StateSpace space, std::string_view literal);

struct StepResult {
    bool reply;
    UnitState state;

    friend bool operator==(const StepResult&, const StepResult&) = default;
};

/// A named total function S -> B x S, with declared metadata.
struct MethodOperation {
    std::string name;
    std::function<StepResult(const UnitState&)> step;
    /// Declared: some state gains colons under this operation.
    bool increasesColons = false;
    /// Declared: the reply is this value on every state.
    std::optional<bool> constantReply;
};

class FunctionalUnit;
using UnitRef = std::shared_ptr<const FunctionalUnit>;

/// A finite set of named method operations over one state space.
class FunctionalUnit {
public:
    /// Throws std::invalid_argument on duplicate or lexically invalid names.
    /// `lineage` names the standard unit whose operation semantics this unit
    /// shares (kept by restriction, dropped by extension).
    FunctionalUnit(std::string name, StateSpace space, std::vector<MethodOperation> operations, std::string lineage = {});

    const std::string& name() const noexcept { return name_; }
    StateSpace stateSpace() const noexcept { return space_; }
    const std::string& lineage() const noexcept { return lineage_; }

    std::set<std::string> interface() const;
    bool has(const std::string& method) const { return operations_.contains(method); }
    /// Throws NotInInterface.
    const MethodOperation& operation(const std::string& method) const;
    const std::map<std::string, MethodOperation>& operations() const noexcept { return operations_; }

    /// Runs operation `method` on `state`. Throws NotInInterface or
    /// StateSpaceMismatch.
    StepResult apply(const std::string& method, const UnitState& state) const;

private:
    std::string name_;
    StateSpace space_;
    std::map<std::string, MethodOperation> operations_;
    std::string lineage_;
};

UnitRef makeUnit(std::string name, StateSpace space, std::vector<MethodOperation> operations, std::string lineage = {});

/// The unit with empty interface.
UnitRef emptyUnit(StateSpace space);

inline std::set<std::string> interface(const FunctionalUnit& h) { return h.interface(); }

/// The restriction <I, H>. Throws NotInInterface unless I is a subset of
/// interface(H).
UnitRef restrict(const UnitRef& h, const std::set<std::string>& methods);

/// An extension of H by further operations. Throws std::invalid_argument
/// when a name is already in the interface.
UnitRef extend(const UnitRef& h, std::vector<MethodOperation> extra, std::string name = {});

/// Unbounded counter: setzero, succ, pred, iszero.
UnitRef counterUnit();

/// Duplicates the bit sequence in front of the first colon, after
/// rewinding the head to the far left.
StepResult dupOp(const TapeState& v);
MethodOperation dupOperation();
/// The unit {<dup, Dup>}.
UnitRef dupUnit();

/// Elementary tape steps: mvl, mvr, test:0, test:1, test:colon, test:end,
/// write:0, write:1, write:colon, delete.
UnitRef tapeBasicUnit();

/// An instruction sequence over tapeBasicUnit() whose derived method
/// operation coincides with Dup.
InstructionSequence dupWitnessProgram(const std::string& focus = "f");

/// Sampled check of the increasesColons declarations: names of operations
/// declared non-increasing that increase the colon count on some sample.
std::vector<std::string> colonDeclarationViolations(const FunctionalUnit& h, const std::vector<TapeState>& samples);

/// Every tape state with |left| + |right| <= maxLength.
std::vector<TapeState> allTapeStates(std::size_t maxLength);

}  // namespace pglb
