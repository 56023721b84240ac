#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pglb {

/// A basic instruction `focus.method`: asks the service named `focus` to
/// process `method`.
struct BasicInstruction {
    std::string focus;
    std::string method;

    /// Throws SyntaxError unless both parts satisfy the lexical rules.
    BasicInstruction(std::string focus, std::string method);

    std::string render() const { return focus + "." + method; }

    friend bool operator==(const BasicInstruction&, const BasicInstruction&) = default;
    friend auto operator<=>(const BasicInstruction&, const BasicInstruction&) = default;
};

/// Foci: a lowercase letter followed by lowercase letters or digits.
bool isValidFocus(std::string_view text);
/// Methods: like foci, optionally followed by `:`-separated alphanumeric
/// segments (`test:0`, `write:colon`).
bool isValidMethod(std::string_view text);

enum class InstrKind : std::uint8_t { Plain, PosTest, NegTest, FwdJump, BwdJump, TermTrue, TermFalse };

class PrimitiveInstruction {
public:
    static PrimitiveInstruction plain(BasicInstruction b) { return {InstrKind::Plain, std::move(b), 0}; }
    static PrimitiveInstruction posTest(BasicInstruction b) { return {InstrKind::PosTest, std::move(b), 0}; }
    static PrimitiveInstruction negTest(BasicInstruction b) { return {InstrKind::NegTest, std::move(b), 0}; }
    static PrimitiveInstruction fwdJump(std::uint64_t l) { return {InstrKind::FwdJump, std::nullopt, l}; }
    static PrimitiveInstruction bwdJump(std::uint64_t l) { return {InstrKind::BwdJump, std::nullopt, l}; }
    static PrimitiveInstruction termTrue() { return {InstrKind::TermTrue, std::nullopt, 0}; }
    static PrimitiveInstruction termFalse() { return {InstrKind::TermFalse, std::nullopt, 0}; }

    InstrKind kind() const noexcept { return kind_; }
    bool isBasic() const noexcept {
        return kind_ == InstrKind::Plain || kind_ == InstrKind::PosTest || kind_ == InstrKind::NegTest;
    }
    bool isJump() const noexcept { return kind_ == InstrKind::FwdJump || kind_ == InstrKind::BwdJump; }
    bool isTermination() const noexcept { return kind_ == InstrKind::TermTrue || kind_ == InstrKind::TermFalse; }

    /// Only valid when isBasic().
    const BasicInstruction& basic() const { return *basic_; }
    /// Jump counter; only meaningful when isJump().
    std::uint64_t counter() const noexcept { return counter_; }

    std::string render() const;

    friend bool operator==(const PrimitiveInstruction&, const PrimitiveInstruction&) = default;
    friend auto operator<=>(const PrimitiveInstruction&, const PrimitiveInstruction&) = default;

private:
    PrimitiveInstruction(InstrKind k, std::optional<BasicInstruction> b, std::uint64_t l)
        : kind_(k), basic_(std::move(b)), counter_(l) {}

    InstrKind kind_;
    std::optional<BasicInstruction> basic_;
    std::uint64_t counter_;
};

/// A non-empty PGLBbt program u_1;...;u_k. Positions are 1-based.
class InstructionSequence {
public:
    /// Throws EmptyProgram when `instructions` is empty.
    explicit InstructionSequence(std::vector<PrimitiveInstruction> instructions);

    std::size_t size() const noexcept { return instructions_.size(); }
    /// 1-based access; throws PositionOutOfRange outside 1..size().
    const PrimitiveInstruction& at(std::size_t position) const;
    const std::vector<PrimitiveInstruction>& instructions() const noexcept { return instructions_; }

    auto begin() const noexcept { return instructions_.begin(); }
    auto end() const noexcept { return instructions_.end(); }

    /// Concatenation `this ; other`.
    InstructionSequence then(const InstructionSequence& other) const;

    /// Foci / methods mentioned by any basic instruction.
    std::set<std::string> foci() const;
    std::set<std::string> methods() const;
    /// True when every basic instruction is `focus.m` with m in `methods`.
    bool isOver(std::string_view focus, const std::set<std::string>& methods) const;

    friend bool operator==(const InstructionSequence&, const InstructionSequence&) = default;
    friend auto operator<=>(const InstructionSequence&, const InstructionSequence&) = default;

private:
    std::vector<PrimitiveInstruction> instructions_;
};

/// Parses the canonical text syntax. Whitespace around instructions is
/// tolerated; jump counters must be written without leading zeros.
InstructionSequence parse(std::string_view text);

/// Canonical rendering: instructions joined by ";" with no whitespace.
std::string render(const InstructionSequence& x);

std::ostream& operator<<(std::ostream& os, const InstructionSequence& x);

/// A string over {0,1}.
class BitString {
public:
    BitString() = default;
    /// Throws SyntaxError on any character other than '0' or '1'.
    static BitString fromString(std::string_view text);

    const std::string& str() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    explicit BitString(std::string bits) : bits_(std::move(bits)) {}
    friend BitString encode(const InstructionSequence& x);

    std::string bits_;
};

/// MSB-first ASCII bytes of render(x).
BitString encode(const InstructionSequence& x);

/// Inverse of encode on its image; std::nullopt marks a non-encoding
/// (length not a multiple of 8, non-ASCII byte, parse failure, or text that
/// is not the canonical rendering of what it parses to).
std::optional<InstructionSequence> decode(const BitString& bits);
std::optional<InstructionSequence> decode(std::string_view bits);

/// Assembles programs with symbolic jump targets; labels resolve to
/// forward or backward relative jumps when built.
class ProgramBuilder {
public:
    ProgramBuilder& emit(PrimitiveInstruction instr);
    ProgramBuilder& plain(const std::string& focus, const std::string& method);
    ProgramBuilder& posTest(const std::string& focus, const std::string& method);
    ProgramBuilder& negTest(const std::string& focus, const std::string& method);
    ProgramBuilder& jump(const std::string& label);
    ProgramBuilder& label(const std::string& name);

    /// Position (1-based) the next emitted instruction will occupy.
    std::size_t nextPosition() const noexcept { return slots_.size() + 1; }

    /// Throws std::logic_error on undefined or duplicate labels, or on a jump
    /// whose label resolves to its own position.
    InstructionSequence build() const;

private:
    struct Slot {
        std::optional<PrimitiveInstruction> instr;
        std::string target;
    };
    std::vector<Slot> slots_;
    std::map<std::string, std::size_t> labels_;
    std::vector<std::string> duplicates_;
};

}  // namespace pglb
