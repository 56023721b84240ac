#include "pglb/unit.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "pglb/errors.hpp"

namespace pglb {

bool isTapeSymbol(char c) noexcept { return c == '0' || c == '1' || c == ':'; }

TapeState::TapeState(std::string l, std::string r) : left(std::move(l)), right(std::move(r)) {
    const auto bad = [](const std::string& s) { return std::any_of(s.begin(), s.end(), [](char c) { return !isTapeSymbol(c); }); };
    if (bad(left) || bad(right)) throw LiteralError("tape symbols are 0, 1 and ':'");
}

std::size_t TapeState::colonCount() const noexcept {
    return static_cast<std::size_t>(std::count(left.begin(), left.end(), ':') + std::count(right.begin(), right.end(), ':'));
}

TapeState TapeState::parse(std::string_view literal) {
    const std::size_t bar = literal.find('|');
    if (bar == std::string_view::npos || literal.find('|', bar + 1) != std::string_view::npos)
        throw LiteralError("tape literal needs exactly one '|' head marker: '" + std::string(literal) + "'");
    return TapeState(std::string(literal.substr(0, bar)), std::string(literal.substr(bar + 1)));
}

std::string_view stateSpaceName(StateSpace space) {
    return space == StateSpace::Counter ? "counter" : "tape";
}

StateSpace spaceOf(const UnitState& s) noexcept {
    return std::holds_alternative<Natural>(s) ? StateSpace::Counter : StateSpace::Tape;
}

std::string renderState(const UnitState& s) {
    if (const auto* n = std::get_if<Natural>(&s)) return std::to_string(*n);
    return std::get<TapeState>(s).render();
}

UnitState parseState(StateSpace space, std::string_view literal) {
    if (space == StateSpace::Tape) return TapeState::parse(literal);
    Natural value = 0;
    const auto* end = literal.data() + literal.size();
    const auto [ptr, ec] = std::from_chars(literal.data(), end, value);
    if (literal.empty() || ec != std::errc() || ptr != end)
        throw LiteralError("counter state must be a natural number: '" + std::string(literal) + "'");
    return value;
}

FunctionalUnit::FunctionalUnit(std::string name, StateSpace space, std::vector<MethodOperation> operations,
                               std::string lineage)
    : name_(std::move(name)), space_(space), lineage_(std::move(lineage)) {
    for (auto& op : operations) {
        if (!isValidMethod(op.name)) throw std::invalid_argument("invalid method name '" + op.name + "'");
        if (!op.step) throw std::invalid_argument("method '" + op.name + "' has no operation");
        const std::string key = op.name;
        if (!operations_.emplace(key, std::move(op)).second)
            throw std::invalid_argument("duplicate method name '" + key + "'");
    }
}

std::set<std::string> FunctionalUnit::interface() const {
    std::set<std::string> out;
    for (const auto& [m, op] : operations_) out.insert(m);
    return out;
}

const MethodOperation& FunctionalUnit::operation(const std::string& method) const {
    const auto it = operations_.find(method);
    if (it == operations_.end()) throw NotInInterface("'" + method + "' is not in the interface of " + name_);
    return it->second;
}

StepResult FunctionalUnit::apply(const std::string& method, const UnitState& state) const {
    if (spaceOf(state) != space_)
        throw StateSpaceMismatch("unit " + name_ + " works on " + std::string(stateSpaceName(space_)) + " states");
    return operation(method).step(state);
}

UnitRef makeUnit(std::string name, StateSpace space, std::vector<MethodOperation> operations, std::string lineage) {
    return std::make_shared<const FunctionalUnit>(std::move(name), space, std::move(operations), std::move(lineage));
}

UnitRef emptyUnit(StateSpace space) {
    static const UnitRef counter = makeUnit("empty", StateSpace::Counter, {});
    static const UnitRef tape = makeUnit("empty", StateSpace::Tape, {});
    return space == StateSpace::Counter ? counter : tape;
}

UnitRef restrict(const UnitRef& h, const std::set<std::string>& methods) {
    std::vector<MethodOperation> kept;
    for (const auto& m : methods) kept.push_back(h->operation(m));
    if (methods == h->interface()) return h;
    std::string name = h->name() + "[";
    bool first = true;
    for (const auto& m : methods) {
        name += (first ? "" : ",") + m;
        first = false;
    }
    return makeUnit(name + "]", h->stateSpace(), std::move(kept), h->lineage());
}

UnitRef extend(const UnitRef& h, std::vector<MethodOperation> extra, std::string name) {
    std::vector<MethodOperation> all;
    for (const auto& [m, op] : h->operations()) all.push_back(op);
    std::string suffix;
    for (auto& op : extra) {
        if (h->has(op.name)) throw std::invalid_argument("'" + op.name + "' is already in the interface");
        suffix += "+" + op.name;
        all.push_back(std::move(op));
    }
    if (name.empty()) name = h->name() + suffix;
    return makeUnit(std::move(name), h->stateSpace(), std::move(all));
}

namespace {

using CounterFn = StepResult (*)(Natural);
using TapeFn = std::function<StepResult(const TapeState&)>;

MethodOperation counterOp(std::string name, CounterFn fn, std::optional<bool> constant = std::nullopt) {
    return {std::move(name), [fn](const UnitState& s) { return fn(std::get<Natural>(s)); }, false, constant};
}

MethodOperation tapeOp(std::string name, TapeFn fn, bool increasesColons = false,
                       std::optional<bool> constant = std::nullopt) {
    return {std::move(name), [fn = std::move(fn)](const UnitState& s) { return fn(std::get<TapeState>(s)); },
            increasesColons, constant};
}

StepResult tapeWrite(const TapeState& v, char symbol) {
    TapeState out = v;
    if (out.right.empty())
        out.right.push_back(symbol);
    else
        out.right.front() = symbol;
    return {true, out};
}

StepResult tapeTest(const TapeState& v, char symbol) { return {!v.right.empty() && v.right.front() == symbol, v}; }

}  // namespace

UnitRef counterUnit() {
    static const UnitRef unit = makeUnit(
        "counter", StateSpace::Counter,
        {counterOp("setzero", [](Natural) { return StepResult{true, Natural{0}}; }, true),
         counterOp(
             "succ",
             [](Natural n) {
                 if (n == std::numeric_limits<Natural>::max()) throw std::overflow_error("counter overflow");
                 return StepResult{true, n + 1};
             },
             true),
         counterOp("pred", [](Natural n) { return n == 0 ? StepResult{false, Natural{0}} : StepResult{true, n - 1}; }),
         counterOp("iszero", [](Natural n) { return StepResult{n == 0, n}; })},
        "counter");
    return unit;
}

StepResult dupOp(const TapeState& v) {
    const std::string content = v.content();
    const std::string bits = content.substr(0, content.find(':'));
    return {true, TapeState::atStart(bits + ":" + content)};
}

MethodOperation dupOperation() { return tapeOp("dup", dupOp, true, true); }

UnitRef dupUnit() {
    static const UnitRef unit = makeUnit("dup", StateSpace::Tape, {dupOperation()}, "dup");
    return unit;
}

UnitRef tapeBasicUnit() {
    static const UnitRef unit = makeUnit(
        "tapebasic", StateSpace::Tape,
        {tapeOp("mvl",
                [](const TapeState& v) {
                    if (v.left.empty()) return StepResult{false, v};
                    TapeState out = v;
                    out.right.insert(out.right.begin(), out.left.back());
                    out.left.pop_back();
                    return StepResult{true, out};
                }),
         tapeOp("mvr",
                [](const TapeState& v) {
                    if (v.right.empty()) return StepResult{false, v};
                    TapeState out = v;
                    out.left.push_back(out.right.front());
                    out.right.erase(out.right.begin());
                    return StepResult{true, out};
                }),
         tapeOp("test:0", [](const TapeState& v) { return tapeTest(v, '0'); }),
         tapeOp("test:1", [](const TapeState& v) { return tapeTest(v, '1'); }),
         tapeOp("test:colon", [](const TapeState& v) { return tapeTest(v, ':'); }),
         tapeOp("test:end", [](const TapeState& v) { return StepResult{v.right.empty(), v}; }),
         tapeOp("write:0", [](const TapeState& v) { return tapeWrite(v, '0'); }, false, true),
         tapeOp("write:1", [](const TapeState& v) { return tapeWrite(v, '1'); }, false, true),
         tapeOp("write:colon", [](const TapeState& v) { return tapeWrite(v, ':'); }, true, true),
         tapeOp("delete",
                [](const TapeState& v) {
                    if (v.right.empty()) return StepResult{false, v};
                    TapeState out = v;
                    out.right.erase(out.right.begin());
                    return StepResult{true, out};
                })},
        "tapebasic");
    return unit;
}

namespace {

// Assembles the Dup witness. Strategy: make sure a separator follows the
// leading bit block b, then insert the bits of b right after that separator
// in reverse order. The bit currently being copied is marked by temporarily
// overwriting it with ':' (the only colon inside b), which makes it findable
// again after each insertion.
class DupWitness {
public:
    explicit DupWitness(std::string focus) : f_(std::move(focus)) {}

    InstructionSequence build() {
        rewind();
        b_.label("scan0");
        b_.posTest(f_, "test:colon").jump("hascolon");
        b_.posTest(f_, "test:end").jump("nocolon");
        b_.plain(f_, "mvr").jump("scan0");

        b_.label("nocolon");
        b_.plain(f_, "write:colon").jump("bits");

        b_.label("hascolon");
        b_.plain(f_, "mvr").jump("sep.ins:");
        inserter("sep", "bits");

        b_.label("bits");
        rewind();
        scanToColon("at");
        b_.label("at");
        b_.posTest(f_, "mvl").jump("mark").jump("done");

        b_.label("mark");
        b_.posTest(f_, "test:0").jump("m0").jump("m1");
        for (const char bit : {'0', '1'}) {
            const std::string s(1, bit);
            const std::string copy = "copy" + s;
            b_.label("m" + s);
            b_.plain(f_, "write:colon").plain(f_, "mvr");
            scanToColon(copy + ".found");
            b_.label(copy + ".found");
            b_.plain(f_, "mvr").jump(copy + ".ins" + s);
            inserter(copy, "restore" + s);
            b_.label("restore" + s);
            rewind();
            scanToColon("restore" + s + ".at");
            b_.label("restore" + s + ".at");
            b_.plain(f_, "write:" + symbolName(bit));
            b_.posTest(f_, "mvl").jump("mark").jump("done");
        }

        b_.label("done");
        rewind();
        b_.emit(PrimitiveInstruction::termTrue());
        return b_.build();
    }

private:
    static std::string symbolName(char c) { return c == ':' ? "colon" : std::string(1, c); }

    void rewind() {
        const std::string l = "rewind" + std::to_string(fresh_++);
        b_.label(l).posTest(f_, "mvl").jump(l);
    }

    // Moves right until the head is on a colon; assumes one exists.
    void scanToColon(const std::string& found) {
        const std::string l = "scan" + std::to_string(fresh_++);
        b_.label(l).posTest(f_, "test:colon").jump(found);
        b_.plain(f_, "mvr").jump(l);
    }

    // Inserts the carried symbol at the head, shifting the rest of the tape
    // right by one, then continues at `next`. Entry points: prefix.ins0,
    // prefix.ins1, prefix.ins: (the suffix is the carried symbol).
    void inserter(const std::string& prefix, const std::string& next) {
        for (const char carry : {'0', '1', ':'}) {
            const std::string c(1, carry);
            const std::string ins = prefix + ".ins" + c;
            b_.label(ins);
            b_.posTest(f_, "test:end").jump(ins + ".append");
            b_.posTest(f_, "test:0").jump(ins + ".over0");
            b_.posTest(f_, "test:1").jump(ins + ".over1");
            // head is on a colon
            b_.plain(f_, "write:" + symbolName(carry)).plain(f_, "mvr").jump(prefix + ".ins:");
            for (const char seen : {'0', '1'}) {
                b_.label(ins + ".over" + std::string(1, seen));
                b_.plain(f_, "write:" + symbolName(carry)).plain(f_, "mvr").jump(prefix + ".ins" + std::string(1, seen));
            }
            b_.label(ins + ".append");
            b_.plain(f_, "write:" + symbolName(carry)).jump(next);
        }
    }

    std::string f_;
    ProgramBuilder b_;
    int fresh_ = 0;
};

}  // namespace

InstructionSequence dupWitnessProgram(const std::string& focus) { return DupWitness(focus).build(); }

std::vector<std::string> colonDeclarationViolations(const FunctionalUnit& h, const std::vector<TapeState>& samples) {
    std::vector<std::string> out;
    if (h.stateSpace() != StateSpace::Tape) return out;
    for (const auto& [m, op] : h.operations()) {
        if (op.increasesColons) continue;
        for (const auto& v : samples) {
            const StepResult r = op.step(v);
            if (std::get<TapeState>(r.state).colonCount() > v.colonCount()) {
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

std::vector<TapeState> allTapeStates(std::size_t maxLength) {
    std::vector<TapeState> out;
    std::vector<std::string> contents{""};
    for (std::size_t len = 0; len <= maxLength; ++len) {
        for (const auto& c : contents)
            for (std::size_t head = 0; head <= c.size(); ++head) out.emplace_back(c.substr(0, head), c.substr(head));
        std::vector<std::string> longer;
        longer.reserve(contents.size() * 3);
        for (const auto& c : contents)
            for (const char s : {'0', '1', ':'}) longer.push_back(c + s);
        contents = std::move(longer);
    }
    return out;
}

}  // namespace pglb
