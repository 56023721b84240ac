#pragma once

#include <string>
#include <variant>

#include "pglb/eval.hpp"
#include "pglb/unit.hpp"

namespace pglb {

struct DerivedConverged {
    bool reply;
    UnitState state;
    std::uint64_t steps;
};
struct DerivedUndefined {
    DivergenceCause cause;
};
struct DerivedUnknown {
    std::uint64_t steps;
};

using DerivedOutcome = std::variant<DerivedConverged, DerivedUndefined, DerivedUnknown>;

/// Pointwise evaluator for the partial method operation |x|_H: runs x
/// against the single service focus.H(s).
class DerivedOperation {
public:
    /// Throws WrongFocus if x mentions another focus, UnknownMethod if it
    /// uses a method outside interface(H).
    DerivedOperation(InstructionSequence x, UnitRef h, RunOptions opts = {}, std::string focus = "f");

    DerivedOutcome operator()(const UnitState& s) const;

    const InstructionSequence& program() const noexcept { return x_; }
    const UnitRef& unit() const noexcept { return h_; }

private:
    InstructionSequence x_;
    RegularThread thread_;
    UnitRef h_;
    RunOptions opts_;
    std::string focus_;
};

}  // namespace pglb
