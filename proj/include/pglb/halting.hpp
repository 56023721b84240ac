#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pglb/eval.hpp"
#include "pglb/syntax.hpp"
#include "pglb/unit.hpp"

namespace pglb {

// ---- program transformations

/// Exchanges !t and !f.
InstructionSequence swap(const InstructionSequence& x);
/// Replaces every !f by #0.
InstructionSequence f2d(const InstructionSequence& x);
/// f.dup ; swap(x)
InstructionSequence diagInterpreter(const InstructionSequence& x);
/// f.dup ; f2d(swap(x))
InstructionSequence diagSolver(const InstructionSequence& x);
/// f2d(swap(f.dup ; x)). Equal to diagSolver(x) as a sequence, since both
/// transformations leave basic instructions alone.
InstructionSequence diagSolverAlt(const InstructionSequence& x);

// ---- decision procedures

/// Whether x converges on f.Dup(v). x must only use f.dup (NotDupProgram
/// otherwise). The answer does not depend on v.
bool decideHaltingDup(const InstructionSequence& x, const TapeState& v);

/// The Halting operation over the empty unit extended with "halting".
StepResult haltingOp(const TapeState& v);
/// The unit {<halting, haltingOp>} on tape states.
UnitRef haltingEmptyUnit();

/// Whether x converges on f.H'(v) for H' = haltingEmptyUnit(). x must only
/// use f.halting (NotHaltingProgram otherwise). Recurses through haltingOp
/// on states with fewer colons, so it always terminates.
bool decideHaltingEmptyExt(const InstructionSequence& x, const TapeState& v);

/// Whether chasing jumps from position 1 lands on position i. Throws
/// PositionOutOfRange when i is not a position of x.
bool leadsToFirstApplication(const InstructionSequence& x, std::size_t i);

// ---- solvers and interpreters

struct HaltingInstance {
    UnitRef unit;
    std::set<std::string> programMethods;
    std::string focus = "f";

    /// Throws HypothesisViolation unless dup is in programMethods, the unit
    /// offers dup behaving as dupOp (checked on all states up to length 3),
    /// and programMethods is part of the interface.
    void requireDup() const;
};

/// {dup} over dupUnit().
HaltingInstance dupInstance();

enum class DiagonalForm : std::uint8_t { First, Second };

/// The candidate diverges on witnessState = <>y:y.
struct RefutedByDivergence {
    InstructionSequence witnessProgram;
    TapeState witnessState;
    DivergenceCause cause;
    std::uint64_t steps;
};

/// On input <>y:v the candidate replies `claimed`, but y run on
/// witnessState = v has convergence status `actual`.
struct RefutedByWrongReply {
    InstructionSequence witnessProgram;
    TapeState witnessState;
    Reply claimed;
    Tristate actual;
    std::uint64_t steps;
};

struct NotRefuted {
    std::uint64_t budget;
};

using SolverVerdict = std::variant<RefutedByDivergence, RefutedByWrongReply, NotRefuted>;

std::string_view verdictName(const SolverVerdict& v);  // "RefutedByDivergence", ...
inline bool isRefuted(const SolverVerdict& v) { return !std::holds_alternative<NotRefuted>(v); }

/// Tries to refute x as a solution of the halting problem for the
/// instance, using the diagonal program built from x. Never endorses x:
/// NotRefuted only means the fuel ran out.
SolverVerdict validateSolver(const InstructionSequence& x, const HaltingInstance& inst, std::uint64_t fuel,
                             DiagonalForm form = DiagonalForm::First);

/// Re-runs the evaluator on a refutation's witness and reports whether the
/// discrepancy shows up again.
bool replayVerdict(const InstructionSequence& x, const HaltingInstance& inst, const SolverVerdict& verdict,
                   std::uint64_t fuel);

enum class SampleStatus : std::uint8_t { Pass, Fail, Unknown, Vacuous };
std::string_view sampleStatusName(SampleStatus s);

struct SampleReport {
    InstructionSequence program;
    TapeState state;
    SampleStatus status;
    std::string detail;
};

struct DiagonalReport {
    InstructionSequence program;  // y0 = diagInterpreter(x)
    TapeState input;              // <>y0:y0
    EvalOutcome candidate;        // x on input
    EvalOutcome direct;           // y0 on <>y0
    bool fails;
    std::string detail;
};

struct InterpreterReport {
    std::vector<SampleReport> samples;
    DiagonalReport diagonal;

    /// No sample failed and the diagonal input exposed nothing.
    bool passed() const;
};

/// Programs over {dup} of length <= 2 on <>, <>1 and <>10:1.
std::vector<std::pair<InstructionSequence, TapeState>> defaultInterpreterSamples();

InterpreterReport checkInterpreter(const InstructionSequence& x, const HaltingInstance& inst,
                                   const std::vector<std::pair<InstructionSequence, TapeState>>& samples,
                                   std::uint64_t fuel);

// ---- enumeration and sweeps

/// Every program of length 1..maxLen over focus.m (m in methods, plain and
/// both tests), !t, !f, and jumps #l, \#l with 0 <= l <= maxLen.
std::vector<InstructionSequence> enumeratePrograms(const std::set<std::string>& methods, std::size_t maxLen,
                                                   const std::string& focus = "f");

/// Tape contents with at most `maxColons` colons whose colon-separated
/// segments are bit strings of length <= maxSegment; head at the left.
std::vector<TapeState> segmentedStates(std::size_t maxColons, std::size_t maxSegment);

/// States for the empty-halting sweep: short segmented states plus states
/// whose first segment encodes a small halting program.
std::vector<TapeState> emptyHaltingSweepStates();

struct SweepResult {
    std::string suite;
    std::uint64_t programs = 0;
    std::uint64_t agree = 0;
    std::uint64_t disagree = 0;
    std::uint64_t refuted = 0;
    std::uint64_t notRefuted = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return disagree == 0 && notRefuted == 0; }
    /// "agree=<n> disagree=<m>" or, for the diagonal suite,
    /// "refuted=<n> not-refuted=<m>".
    std::string summary() const;
};

SweepResult sweepDupDecider(std::size_t maxLen, std::uint64_t fuel);
SweepResult sweepEmptyHalting(std::size_t maxLen, std::uint64_t fuel);
SweepResult sweepDiagonal(std::size_t maxLen, std::uint64_t fuel);

}  // namespace pglb
