#pragma once

// Seeded generators for property tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "pglb/service.hpp"
#include "pglb/syntax.hpp"
#include "pglb/thread.hpp"
#include "pglb/unit.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline pglb::PrimitiveInstruction instruction(Rng& rng, const std::vector<std::string>& methods, std::size_t maxJump,
                                              const std::string& focus = "f") {
    using pglb::PrimitiveInstruction;
    switch (below(rng, 7)) {
        case 0: return PrimitiveInstruction::plain({focus, methods[below(rng, methods.size())]});
        case 1: return PrimitiveInstruction::posTest({focus, methods[below(rng, methods.size())]});
        case 2: return PrimitiveInstruction::negTest({focus, methods[below(rng, methods.size())]});
        case 3: return PrimitiveInstruction::fwdJump(below(rng, maxJump + 1));
        case 4: return PrimitiveInstruction::bwdJump(below(rng, maxJump + 1));
        case 5: return PrimitiveInstruction::termTrue();
        default: return PrimitiveInstruction::termFalse();
    }
}

inline pglb::InstructionSequence program(Rng& rng, const std::vector<std::string>& methods, std::size_t maxLen,
                                         const std::string& focus = "f") {
    const std::size_t len = 1 + below(rng, maxLen);
    std::vector<pglb::PrimitiveInstruction> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(instruction(rng, methods, len + 1, focus));
    return pglb::InstructionSequence(std::move(out));
}

inline std::string bits(Rng& rng, std::size_t maxLen) {
    std::string out;
    const std::size_t len = below(rng, maxLen + 1);
    for (std::size_t i = 0; i < len; ++i) out.push_back(below(rng, 2) ? '1' : '0');
    return out;
}

inline pglb::TapeState tape(Rng& rng, std::size_t maxLen) {
    static const char symbols[] = {'0', '1', ':'};
    std::string c;
    const std::size_t len = below(rng, maxLen + 1);
    for (std::size_t i = 0; i < len; ++i) c.push_back(symbols[below(rng, 3)]);
    const std::size_t head = below(rng, len + 1);
    return {c.substr(0, head), c.substr(head)};
}

inline pglb::Service service(Rng& rng) {
    switch (below(rng, 4)) {
        case 0: return pglb::Service::empty();
        case 1: return {pglb::counterUnit(), pglb::Natural{below(rng, 4)}};
        case 2: return {pglb::dupUnit(), tape(rng, 4)};
        default: return {pglb::tapeBasicUnit(), tape(rng, 4)};
    }
}

/// Up to four entries over the foci f, g, h, k.
inline pglb::ServiceFamily family(Rng& rng) {
    static const std::vector<std::string> foci{"f", "g", "h", "k"};
    pglb::ServiceFamily out;
    for (const auto& f : foci)
        if (below(rng, 2)) out = pglb::compose(out, pglb::singleton(f, service(rng)));
    return out;
}

inline std::set<std::string> fociSubset(Rng& rng) {
    std::set<std::string> out;
    for (const char* f : {"f", "g", "h", "k", "z"})
        if (below(rng, 2)) out.insert(f);
    return out;
}

/// A random closed regular thread with `n` postconditional nodes plus the
/// three terminal nodes; actions drawn from `actions` (may include Tau).
inline pglb::RegularThread thread(Rng& rng, std::size_t n, const std::vector<pglb::Action>& actions) {
    std::vector<pglb::ThreadNode> nodes;
    const std::size_t total = n + 3;
    for (std::size_t i = 0; i < n; ++i)
        nodes.push_back(pglb::ThreadNode::postCond(actions[below(rng, actions.size())], below(rng, total), below(rng, total)));
    nodes.push_back(pglb::ThreadNode::deadlock());
    nodes.push_back(pglb::ThreadNode::stopTrue());
    nodes.push_back(pglb::ThreadNode::stopFalse());
    return pglb::RegularThread(std::move(nodes), n == 0 ? below(rng, 3) : below(rng, n));
}

}  // namespace gen
