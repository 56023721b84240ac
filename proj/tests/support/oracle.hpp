#pragma once

// Reference interpreter used only by tests. It walks the instruction
// sequence with a program counter, never builds a thread, and detects
// divergence by remembering every configuration it has seen.

#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "pglb/service.hpp"
#include "pglb/syntax.hpp"

namespace oracle {

enum class Kind { True, False, Divergent, Unknown };

struct Result {
    Kind kind;
    pglb::ServiceFamily family;  // final family on convergence, {} on divergence
    std::uint64_t actions = 0;
};

inline Result run(const pglb::InstructionSequence& x, const pglb::ServiceFamily& start, std::uint64_t bound = 100000) {
    using pglb::InstrKind;
    const auto k = static_cast<std::int64_t>(x.size());
    std::int64_t pc = 1;
    pglb::ServiceFamily fam = start;
    std::set<std::string> seen;
    std::uint64_t actions = 0;
    for (std::uint64_t tick = 0; tick < bound; ++tick) {
        if (pc < 1 || pc > k) return {Kind::Divergent, {}, actions};
        if (!seen.insert(std::to_string(pc) + "#" + fam.render()).second) return {Kind::Divergent, {}, actions};
        const auto& u = x.instructions()[static_cast<std::size_t>(pc - 1)];
        switch (u.kind()) {
            case InstrKind::TermTrue: return {Kind::True, fam, actions};
            case InstrKind::TermFalse: return {Kind::False, fam, actions};
            case InstrKind::FwdJump:
                if (u.counter() == 0) return {Kind::Divergent, {}, actions};
                pc += static_cast<std::int64_t>(u.counter());
                continue;
            case InstrKind::BwdJump:
                if (u.counter() == 0) return {Kind::Divergent, {}, actions};
                pc -= static_cast<std::int64_t>(u.counter());
                continue;
            default: break;
        }
        const auto& b = u.basic();
        const pglb::Service* s = fam.find(b.focus);
        if (s == nullptr || s->isEmpty() || !s->unit()->has(b.method)) return {Kind::Divergent, {}, actions};
        const pglb::StepResult r = s->unit()->operation(b.method).step(s->state());
        ++actions;
        fam = fam.with(b.focus, pglb::Service(s->unit(), r.state));
        if (u.kind() == InstrKind::Plain)
            pc += 1;
        else if (u.kind() == InstrKind::PosTest)
            pc += r.reply ? 1 : 2;
        else
            pc += r.reply ? 2 : 1;
    }
    return {Kind::Unknown, {}, actions};
}

inline std::string kindName(Kind k) {
    switch (k) {
        case Kind::True: return "T";
        case Kind::False: return "F";
        case Kind::Divergent: return "D";
        case Kind::Unknown: return "?";
    }
    return "";
}

/// Bits of the ASCII text, most significant bit first.
inline std::string asciiBits(const std::string& text) {
    std::string out;
    for (unsigned char c : text) out += std::bitset<8>(c).to_string();
    return out;
}

}  // namespace oracle
