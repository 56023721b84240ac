#include "pglb/halting.hpp"

#include <set>

#include "pglb/errors.hpp"
#include "pglb/service.hpp"
#include "pglb/thread.hpp"

namespace pglb {

namespace {

InstructionSequence mapTerminators(const InstructionSequence& x, InstrKind from, const PrimitiveInstruction& to,
                                   std::optional<std::pair<InstrKind, PrimitiveInstruction>> also = std::nullopt) {
    std::vector<PrimitiveInstruction> out;
    out.reserve(x.size());
    for (const auto& u : x) {
        if (u.kind() == from)
            out.push_back(to);
        else if (also && u.kind() == also->first)
            out.push_back(also->second);
        else
            out.push_back(u);
    }
    return InstructionSequence(std::move(out));
}

InstructionSequence dupPrefix(const std::string& focus) {
    return InstructionSequence({PrimitiveInstruction::plain(BasicInstruction(focus, "dup"))});
}

InstructionSequence diagSolverWith(const InstructionSequence& x, const std::string& focus, DiagonalForm form) {
    if (form == DiagonalForm::First) return dupPrefix(focus).then(f2d(swap(x)));
    return f2d(swap(dupPrefix(focus).then(x)));
}

// Next position after the basic instruction at q when it replies r.
std::size_t successor(InstrKind k, std::size_t q, bool r) {
    switch (k) {
        case InstrKind::PosTest: return r ? q + 1 : q + 2;
        case InstrKind::NegTest: return r ? q + 2 : q + 1;
        default: return q + 1;
    }
}

// Control-flow convergence from `start` when every basic instruction
// replies `r`: the replacement program with each occurrence turned into the
// jump it amounts to, run against the empty family.
bool fixedReplyConverges(const InstructionSequence& x, std::size_t start, bool r) {
    std::set<std::size_t> seen;
    std::size_t pos = start;
    while (true) {
        const auto q = chaseJumps(x, pos);
        if (!q) return false;
        const PrimitiveInstruction& u = x.at(*q);
        if (u.isTermination()) return true;
        if (!seen.insert(*q).second) return false;
        pos = successor(u.kind(), *q, r);
    }
}

TapeState withPrefix(const std::string& bits, const std::string& rest) { return TapeState::atStart(bits + ":" + rest); }

}  // namespace

InstructionSequence swap(const InstructionSequence& x) {
    return mapTerminators(x, InstrKind::TermTrue, PrimitiveInstruction::termFalse(),
                          std::make_pair(InstrKind::TermFalse, PrimitiveInstruction::termTrue()));
}

InstructionSequence f2d(const InstructionSequence& x) {
    return mapTerminators(x, InstrKind::TermFalse, PrimitiveInstruction::fwdJump(0));
}

InstructionSequence diagInterpreter(const InstructionSequence& x) { return dupPrefix("f").then(swap(x)); }

InstructionSequence diagSolver(const InstructionSequence& x) { return diagSolverWith(x, "f", DiagonalForm::First); }

InstructionSequence diagSolverAlt(const InstructionSequence& x) {
    return diagSolverWith(x, "f", DiagonalForm::Second);
}

bool decideHaltingDup(const InstructionSequence& x, const TapeState&) {
    if (!x.isOver("f", {"dup"})) throw NotDupProgram("'" + render(x) + "' is not a program over f.dup");
    return fixedReplyConverges(x, 1, true);
}

StepResult haltingOp(const TapeState& v) {
    const std::string c = v.content();
    const std::size_t colon = c.find(':');
    if (colon == std::string::npos) return {false, TapeState()};
    const auto x = decode(std::string_view(c).substr(0, colon));
    if (!x || !x->isOver("f", {"halting"})) return {false, TapeState()};
    return {decideHaltingEmptyExt(*x, TapeState::atStart(c.substr(colon + 1))), TapeState()};
}

UnitRef haltingEmptyUnit() {
    static const UnitRef unit =
        extend(emptyUnit(StateSpace::Tape),
               {MethodOperation{"halting", [](const UnitState& s) { return haltingOp(std::get<TapeState>(s)); }, false, std::nullopt}},
               "halting-empty");
    return unit;
}

bool decideHaltingEmptyExt(const InstructionSequence& x, const TapeState& v) {
    if (!x.isOver("f", {"halting"}))
        throw NotHaltingProgram("'" + render(x) + "' is not a program over f.halting");
    const auto q = chaseJumps(x, 1);
    if (!q) return false;
    const PrimitiveInstruction& u = x.at(*q);
    if (u.isTermination()) return true;
    // After the first application the tape is <>, where Halting replies False.
    const bool r = haltingOp(v).reply;
    return fixedReplyConverges(x, successor(u.kind(), *q, r), false);
}

bool leadsToFirstApplication(const InstructionSequence& x, std::size_t i) {
    x.at(i);
    return chaseJumps(x, 1) == i;
}

void HaltingInstance::requireDup() const {
    if (!unit) throw HypothesisViolation("no unit");
    if (!programMethods.contains("dup")) throw HypothesisViolation("dup is not among the program methods");
    if (!unit->has("dup")) throw HypothesisViolation("unit " + unit->name() + " has no dup");
    if (unit->stateSpace() != StateSpace::Tape) throw HypothesisViolation("unit " + unit->name() + " is not a tape unit");
    for (const auto& m : programMethods)
        if (!unit->has(m)) throw HypothesisViolation("'" + m + "' is not in the interface of " + unit->name());
    for (const auto& s : allTapeStates(3))
        if (!(unit->apply("dup", s) == dupOp(s)))
            throw HypothesisViolation("dup of " + unit->name() + " differs from Dup on " + s.render());
}

HaltingInstance dupInstance() { return {dupUnit(), {"dup"}, "f"}; }

std::string_view verdictName(const SolverVerdict& v) {
    if (std::holds_alternative<RefutedByDivergence>(v)) return "RefutedByDivergence";
    if (std::holds_alternative<RefutedByWrongReply>(v)) return "RefutedByWrongReply";
    return "NotRefuted";
}

SolverVerdict validateSolver(const InstructionSequence& x, const HaltingInstance& inst, std::uint64_t fuel,
                             DiagonalForm form) {
    inst.requireDup();
    if (!x.isOver(inst.focus, inst.unit->interface()))
        throw HypothesisViolation("candidate '" + render(x) + "' leaves the instance's interface");
    const InstructionSequence y = diagSolverWith(x, inst.focus, form);
    const std::string yb = encode(y).str();
    const TapeState input = withPrefix(yb, yb);
    const TapeState v = TapeState::atStart(yb);
    const RunOptions opts = withFuel(fuel, true);

    const EvalOutcome ox = run(x, singleton(inst.focus, Service(inst.unit, input)), opts);
    if (const auto* pd = std::get_if<ProvenDivergent>(&ox)) return RefutedByDivergence{y, input, pd->cause, pd->steps};
    if (std::holds_alternative<FuelExhausted>(ox)) return NotRefuted{fuel};
    const Reply claimed = std::get<Converged>(ox).reply;

    const EvalOutcome oy = run(y, singleton(inst.focus, Service(inst.unit, v)), opts);
    const Tristate actual = convergesOf(oy);
    if (actual == Tristate::Unknown) return NotRefuted{fuel};
    if ((claimed == Reply::True) != (actual == Tristate::Yes))
        return RefutedByWrongReply{y, v, claimed, actual, stepsOf(ox) + stepsOf(oy)};
    return NotRefuted{fuel};
}

bool replayVerdict(const InstructionSequence& x, const HaltingInstance& inst, const SolverVerdict& verdict,
                   std::uint64_t fuel) {
    const RunOptions opts = withFuel(fuel, true);
    if (const auto* d = std::get_if<RefutedByDivergence>(&verdict)) {
        const EvalOutcome o = run(x, singleton(inst.focus, Service(inst.unit, d->witnessState)), opts);
        const auto* pd = std::get_if<ProvenDivergent>(&o);
        return pd != nullptr && pd->cause == d->cause;
    }
    if (const auto* w = std::get_if<RefutedByWrongReply>(&verdict)) {
        const std::string yb = encode(w->witnessProgram).str();
        const EvalOutcome ox =
            run(x, singleton(inst.focus, Service(inst.unit, withPrefix(yb, w->witnessState.content()))), opts);
        const EvalOutcome oy = run(w->witnessProgram, singleton(inst.focus, Service(inst.unit, w->witnessState)), opts);
        const auto claimed = replyOf(ox);
        const Tristate actual = convergesOf(oy);
        return claimed == w->claimed && actual == w->actual && actual != Tristate::Unknown &&
               (w->claimed == Reply::True) != (actual == Tristate::Yes);
    }
    return false;
}

std::string_view sampleStatusName(SampleStatus s) {
    switch (s) {
        case SampleStatus::Pass: return "pass";
        case SampleStatus::Fail: return "fail";
        case SampleStatus::Unknown: return "unknown";
        case SampleStatus::Vacuous: return "vacuous";
    }
    return "?";
}

bool InterpreterReport::passed() const {
    if (diagonal.fails) return false;
    for (const auto& s : samples)
        if (s.status == SampleStatus::Fail) return false;
    return true;
}

std::vector<std::pair<InstructionSequence, TapeState>> defaultInterpreterSamples() {
    std::vector<std::pair<InstructionSequence, TapeState>> out;
    const std::vector<TapeState> states{TapeState(), TapeState::atStart("1"), TapeState::atStart("10:1")};
    for (const auto& y : enumeratePrograms({"dup"}, 2))
        for (const auto& v : states) out.emplace_back(y, v);
    return out;
}

InterpreterReport checkInterpreter(const InstructionSequence& x, const HaltingInstance& inst,
                                   const std::vector<std::pair<InstructionSequence, TapeState>>& samples,
                                   std::uint64_t fuel) {
    inst.requireDup();
    const RunOptions opts = withFuel(fuel, true);
    const RegularThread tx = extract(x);
    auto runOn = [&](const RegularThread& t, const TapeState& s) {
        return runThread(t, singleton(inst.focus, Service(inst.unit, s)), opts);
    };

    InterpreterReport report{{}, {diagInterpreter(x), TapeState(), FuelExhausted{0}, FuelExhausted{0}, false, {}}};
    for (const auto& [y, v] : samples) {
        if (!y.isOver(inst.focus, inst.programMethods))
            throw HypothesisViolation("sample '" + render(y) + "' leaves the instance's program methods");
        SampleReport r{y, v, SampleStatus::Pass, {}};
        const EvalOutcome oy = runOn(extract(y), v.rewound());
        if (std::holds_alternative<ProvenDivergent>(oy)) {
            r.status = SampleStatus::Vacuous;
            r.detail = "sample program diverges";
        } else if (std::holds_alternative<FuelExhausted>(oy)) {
            r.status = SampleStatus::Unknown;
            r.detail = "sample program unresolved";
        } else {
            const EvalOutcome ox = runOn(tx, withPrefix(encode(y).str(), v.content()));
            const auto& cy = std::get<Converged>(oy);
            if (std::holds_alternative<ProvenDivergent>(ox)) {
                r.status = SampleStatus::Fail;
                r.detail = "divergent";
            } else if (std::holds_alternative<FuelExhausted>(ox)) {
                r.status = SampleStatus::Unknown;
                r.detail = "candidate unresolved";
            } else if (std::get<Converged>(ox).family != cy.family) {
                r.status = SampleStatus::Fail;
                r.detail = "apply differs: " + std::get<Converged>(ox).family.render() + " vs " + cy.family.render();
            } else if (std::get<Converged>(ox).reply != cy.reply) {
                r.status = SampleStatus::Fail;
                r.detail = "reply differs";
            }
        }
        report.samples.push_back(std::move(r));
    }

    DiagonalReport& d = report.diagonal;
    d.program = dupPrefix(inst.focus).then(swap(x));
    const std::string yb = encode(d.program).str();
    d.input = withPrefix(yb, yb);
    d.candidate = runOn(tx, d.input);
    d.direct = runOn(extract(d.program), TapeState::atStart(yb));
    if (std::holds_alternative<ProvenDivergent>(d.candidate)) {
        d.fails = true;
        d.detail = "candidate diverges on the diagonal input";
    } else if (std::holds_alternative<FuelExhausted>(d.candidate) || std::holds_alternative<FuelExhausted>(d.direct)) {
        d.detail = "unresolved within fuel";
    } else if (std::holds_alternative<ProvenDivergent>(d.direct)) {
        d.detail = "diagonal program diverges";
    } else {
        const auto& cx = std::get<Converged>(d.candidate);
        const auto& cy = std::get<Converged>(d.direct);
        if (cx.reply != cy.reply) {
            d.fails = true;
            d.detail = "replies differ on the diagonal input";
        } else if (cx.family != cy.family) {
            d.fails = true;
            d.detail = "apply differs on the diagonal input";
        } else {
            d.detail = "agrees";
        }
    }
    return report;
}

std::vector<InstructionSequence> enumeratePrograms(const std::set<std::string>& methods, std::size_t maxLen,
                                                   const std::string& focus) {
    std::vector<PrimitiveInstruction> alphabet;
    for (const auto& m : methods) {
        const BasicInstruction b(focus, m);
        alphabet.push_back(PrimitiveInstruction::plain(b));
        alphabet.push_back(PrimitiveInstruction::posTest(b));
        alphabet.push_back(PrimitiveInstruction::negTest(b));
    }
    alphabet.push_back(PrimitiveInstruction::termTrue());
    alphabet.push_back(PrimitiveInstruction::termFalse());
    for (std::uint64_t l = 0; l <= maxLen; ++l) alphabet.push_back(PrimitiveInstruction::fwdJump(l));
    for (std::uint64_t l = 0; l <= maxLen; ++l) alphabet.push_back(PrimitiveInstruction::bwdJump(l));

    std::vector<InstructionSequence> out;
    std::vector<std::vector<PrimitiveInstruction>> layer{{}};
    for (std::size_t len = 1; len <= maxLen; ++len) {
        std::vector<std::vector<PrimitiveInstruction>> next;
        next.reserve(layer.size() * alphabet.size());
        for (const auto& prefix : layer)
            for (const auto& u : alphabet) {
                auto p = prefix;
                p.push_back(u);
                out.emplace_back(p);
                next.push_back(std::move(p));
            }
        layer = std::move(next);
    }
    return out;
}

std::vector<TapeState> segmentedStates(std::size_t maxColons, std::size_t maxSegment) {
    std::vector<std::string> bits{""};
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i].size() < maxSegment) {
            bits.push_back(bits[i] + "0");
            bits.push_back(bits[i] + "1");
        }
    std::vector<TapeState> out;
    std::vector<std::string> layer = bits;
    for (std::size_t colons = 0; colons <= maxColons; ++colons) {
        for (const auto& c : layer) out.push_back(TapeState::atStart(c));
        if (colons == maxColons) break;
        std::vector<std::string> next;
        for (const auto& c : layer)
            for (const auto& b : bits) next.push_back(c + ":" + b);
        layer = std::move(next);
    }
    return out;
}

std::vector<TapeState> emptyHaltingSweepStates() {
    std::vector<TapeState> out = segmentedStates(2, 2);
    const std::vector<std::string> programs{"!t",  "!f", "#0", "f.halting;!t", "+f.halting;!t;#0", "-f.halting;!t;#0",
                                            "f.halting;\\#1"};
    const std::vector<std::string> tails{"", "1", "01:1"};
    for (const auto& p : programs) {
        const std::string z = encode(parse(p)).str();
        out.push_back(TapeState::atStart(z));
        for (const auto& t : tails) out.push_back(withPrefix(z, t));
        for (const auto& q : programs) {
            const std::string zq = encode(parse(q)).str();
            out.push_back(withPrefix(z, zq + ":"));
            out.push_back(withPrefix(z, zq + ":" + z + ":1"));
        }
        // head away from the left end
        out.push_back(TapeState(z.substr(0, 3), z.substr(3) + ":1"));
    }
    return out;
}

std::string SweepResult::summary() const {
    if (suite == "diagonal")
        return "refuted=" + std::to_string(refuted) + " not-refuted=" + std::to_string(notRefuted) +
               (disagree ? " replay-failures=" + std::to_string(disagree) : "");
    return "agree=" + std::to_string(agree) + " disagree=" + std::to_string(disagree);
}

SweepResult sweepDupDecider(std::size_t maxLen, std::uint64_t fuel) {
    SweepResult r;
    r.suite = "dup-decider";
    const std::vector<TapeState> states{TapeState(), TapeState::atStart("1"), TapeState::atStart("10:1")};
    const RunOptions opts = withFuel(fuel, true);
    for (const auto& x : enumeratePrograms({"dup"}, maxLen)) {
        ++r.programs;
        const RegularThread t = extract(x);
        const bool first = decideHaltingDup(x, states.front());
        for (const auto& v : states) {
            const bool decided = decideHaltingDup(x, v);
            const Tristate oracle = convergesOf(runThread(t, singleton("f", Service(dupUnit(), v)), opts));
            if (oracle != Tristate::Unknown && decided == (oracle == Tristate::Yes) && decided == first) {
                ++r.agree;
            } else {
                ++r.disagree;
                r.counterexamples.push_back(render(x) + " on " + v.render() + ": decided=" + (decided ? "T" : "F") +
                                            " oracle=" + std::string(tristateName(oracle)));
            }
        }
    }
    return r;
}

SweepResult sweepEmptyHalting(std::size_t maxLen, std::uint64_t fuel) {
    SweepResult r;
    r.suite = "empty-halting";
    const std::vector<TapeState> states = emptyHaltingSweepStates();
    const RunOptions opts = withFuel(fuel, true);
    for (const auto& y : enumeratePrograms({"halting"}, maxLen)) {
        ++r.programs;
        const RegularThread t = extract(y);
        for (const auto& v : states) {
            const bool decided = decideHaltingEmptyExt(y, v);
            const Tristate oracle = convergesOf(runThread(t, singleton("f", Service(haltingEmptyUnit(), v)), opts));
            if (oracle != Tristate::Unknown && decided == (oracle == Tristate::Yes)) {
                ++r.agree;
            } else {
                ++r.disagree;
                r.counterexamples.push_back(render(y) + " on " + v.render() + ": decided=" + (decided ? "T" : "F") +
                                            " oracle=" + std::string(tristateName(oracle)));
            }
        }
    }
    return r;
}

SweepResult sweepDiagonal(std::size_t maxLen, std::uint64_t fuel) {
    SweepResult r;
    r.suite = "diagonal";
    const HaltingInstance inst = dupInstance();
    for (const auto& x : enumeratePrograms({"dup"}, maxLen)) {
        ++r.programs;
        for (const DiagonalForm form : {DiagonalForm::First, DiagonalForm::Second}) {
            const SolverVerdict v = validateSolver(x, inst, fuel, form);
            const std::string tag = form == DiagonalForm::First ? "first" : "second";
            if (!isRefuted(v)) {
                ++r.notRefuted;
                r.counterexamples.push_back(render(x) + " (" + tag + " form): not refuted");
            } else if (!replayVerdict(x, inst, v, fuel)) {
                ++r.disagree;
                r.counterexamples.push_back(render(x) + " (" + tag + " form): witness does not replay");
            } else {
                ++r.refuted;
            }
        }
    }
    return r;
}

}  // namespace pglb
