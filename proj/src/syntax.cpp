#include "pglb/syntax.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "pglb/errors.hpp"

namespace pglb {

namespace {

bool isLower(char c) { return c >= 'a' && c <= 'z'; }
bool isDigit(char c) { return c >= '0' && c <= '9'; }
bool isAlnum(char c) { return isLower(c) || isDigit(c); }

bool isIdentifier(std::string_view text) {
    if (text.empty() || !isLower(text.front())) return false;
    for (char c : text.substr(1))
        if (!isAlnum(c)) return false;
    return true;
}

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    InstructionSequence run() {
        skipSpace();
        if (pos_ == text_.size()) throw EmptyProgram();
        std::vector<PrimitiveInstruction> out;
        while (true) {
            skipSpace();
            out.push_back(instruction());
            skipSpace();
            if (pos_ == text_.size()) break;
            if (text_[pos_] != ';') fail("expected ';'");
            ++pos_;
        }
        return InstructionSequence(std::move(out));
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

    void skipSpace() {
        while (pos_ < text_.size() && isSpace(text_[pos_])) ++pos_;
    }

    bool peek(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    PrimitiveInstruction instruction() {
        if (pos_ == text_.size() || text_[pos_] == ';') fail("empty instruction slot");
        if (peek("!t")) {
            pos_ += 2;
            return PrimitiveInstruction::termTrue();
        }
        if (peek("!f")) {
            pos_ += 2;
            return PrimitiveInstruction::termFalse();
        }
        if (peek("\\#")) {
            pos_ += 2;
            return PrimitiveInstruction::bwdJump(counter());
        }
        if (peek("#")) {
            pos_ += 1;
            return PrimitiveInstruction::fwdJump(counter());
        }
        if (peek("+")) {
            ++pos_;
            return PrimitiveInstruction::posTest(basic());
        }
        if (peek("-")) {
            ++pos_;
            return PrimitiveInstruction::negTest(basic());
        }
        return PrimitiveInstruction::plain(basic());
    }

    std::uint64_t counter() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && isDigit(text_[pos_])) ++pos_;
        if (pos_ == start) fail("expected jump counter");
        if (pos_ - start > 1 && text_[start] == '0') {
            pos_ = start;
            fail("leading zero in jump counter");
        }
        std::uint64_t value = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            const std::uint64_t digit = static_cast<std::uint64_t>(text_[i] - '0');
            if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
                pos_ = start;
                fail("jump counter out of range");
            }
            value = value * 10 + digit;
        }
        return value;
    }

    BasicInstruction basic() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && isAlnum(text_[pos_])) ++pos_;
        const std::string_view focus = text_.substr(start, pos_ - start);
        if (!isValidFocus(focus)) {
            pos_ = start;
            fail("expected focus");
        }
        if (pos_ == text_.size() || text_[pos_] != '.') fail("expected '.' after focus");
        ++pos_;
        const std::size_t mstart = pos_;
        while (pos_ < text_.size() && (isAlnum(text_[pos_]) || text_[pos_] == ':')) ++pos_;
        const std::string_view method = text_.substr(mstart, pos_ - mstart);
        if (!isValidMethod(method)) {
            pos_ = mstart;
            fail("expected method");
        }
        return BasicInstruction(std::string(focus), std::string(method));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

bool isValidFocus(std::string_view text) { return isIdentifier(text); }

bool isValidMethod(std::string_view text) {
    std::size_t colon = text.find(':');
    if (!isIdentifier(text.substr(0, colon))) return false;
    while (colon != std::string_view::npos) {
        const std::size_t start = colon + 1;
        colon = text.find(':', start);
        const std::string_view seg = text.substr(start, colon == std::string_view::npos ? colon : colon - start);
        if (seg.empty()) return false;
        for (char c : seg)
            if (!isAlnum(c)) return false;
    }
    return true;
}

BasicInstruction::BasicInstruction(std::string f, std::string m) : focus(std::move(f)), method(std::move(m)) {
    if (!isValidFocus(focus)) throw SyntaxError(0, "invalid focus '" + focus + "'");
    if (!isValidMethod(method)) throw SyntaxError(focus.size() + 1, "invalid method '" + method + "'");
}

std::string PrimitiveInstruction::render() const {
    switch (kind_) {
        case InstrKind::Plain: return basic_->render();
        case InstrKind::PosTest: return "+" + basic_->render();
        case InstrKind::NegTest: return "-" + basic_->render();
        case InstrKind::FwdJump: return "#" + std::to_string(counter_);
        case InstrKind::BwdJump: return "\\#" + std::to_string(counter_);
        case InstrKind::TermTrue: return "!t";
        case InstrKind::TermFalse: return "!f";
    }
    return {};
}

InstructionSequence::InstructionSequence(std::vector<PrimitiveInstruction> instructions)
    : instructions_(std::move(instructions)) {
    if (instructions_.empty()) throw EmptyProgram();
}

const PrimitiveInstruction& InstructionSequence::at(std::size_t position) const {
    if (position < 1 || position > instructions_.size())
        throw PositionOutOfRange("position " + std::to_string(position) + " outside 1.." +
                                 std::to_string(instructions_.size()));
    return instructions_[position - 1];
}

InstructionSequence InstructionSequence::then(const InstructionSequence& other) const {
    std::vector<PrimitiveInstruction> joined = instructions_;
    joined.insert(joined.end(), other.instructions_.begin(), other.instructions_.end());
    return InstructionSequence(std::move(joined));
}

std::set<std::string> InstructionSequence::foci() const {
    std::set<std::string> out;
    for (const auto& u : instructions_)
        if (u.isBasic()) out.insert(u.basic().focus);
    return out;
}

std::set<std::string> InstructionSequence::methods() const {
    std::set<std::string> out;
    for (const auto& u : instructions_)
        if (u.isBasic()) out.insert(u.basic().method);
    return out;
}

bool InstructionSequence::isOver(std::string_view focus, const std::set<std::string>& methods) const {
    for (const auto& u : instructions_) {
        if (!u.isBasic()) continue;
        if (u.basic().focus != focus || !methods.contains(u.basic().method)) return false;
    }
    return true;
}

InstructionSequence parse(std::string_view text) { return Parser(text).run(); }

std::string render(const InstructionSequence& x) {
    std::string out;
    for (const auto& u : x) {
        if (!out.empty()) out += ';';
        out += u.render();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const InstructionSequence& x) { return os << render(x); }

BitString BitString::fromString(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] != '0' && text[i] != '1') throw SyntaxError(i, "bit strings contain only '0' and '1'");
    BitString b;
    b.bits_ = std::string(text);
    return b;
}

BitString encode(const InstructionSequence& x) {
    const std::string text = render(x);
    std::string bits;
    bits.reserve(text.size() * 8);
    for (unsigned char c : text)
        for (int i = 7; i >= 0; --i) bits.push_back(((c >> i) & 1U) ? '1' : '0');
    return BitString(std::move(bits));
}

std::optional<InstructionSequence> decode(std::string_view bits) {
    if (bits.empty() || bits.size() % 8 != 0) return std::nullopt;
    std::string text;
    text.reserve(bits.size() / 8);
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        unsigned value = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            const char b = bits[i + j];
            if (b != '0' && b != '1') return std::nullopt;
            value = (value << 1) | (b == '1' ? 1U : 0U);
        }
        if (value > 0x7F) return std::nullopt;
        text.push_back(static_cast<char>(value));
    }
    try {
        InstructionSequence x = parse(text);
        if (render(x) != text) return std::nullopt;
        return x;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<InstructionSequence> decode(const BitString& bits) { return decode(std::string_view(bits.str())); }

ProgramBuilder& ProgramBuilder::emit(PrimitiveInstruction instr) {
    slots_.push_back({std::move(instr), {}});
    return *this;
}

ProgramBuilder& ProgramBuilder::plain(const std::string& focus, const std::string& method) {
    return emit(PrimitiveInstruction::plain(BasicInstruction(focus, method)));
}

ProgramBuilder& ProgramBuilder::posTest(const std::string& focus, const std::string& method) {
    return emit(PrimitiveInstruction::posTest(BasicInstruction(focus, method)));
}

ProgramBuilder& ProgramBuilder::negTest(const std::string& focus, const std::string& method) {
    return emit(PrimitiveInstruction::negTest(BasicInstruction(focus, method)));
}

ProgramBuilder& ProgramBuilder::jump(const std::string& label) {
    slots_.push_back({std::nullopt, label});
    return *this;
}

ProgramBuilder& ProgramBuilder::label(const std::string& name) {
    if (!labels_.emplace(name, nextPosition()).second) duplicates_.push_back(name);
    return *this;
}

InstructionSequence ProgramBuilder::build() const {
    if (!duplicates_.empty()) throw std::logic_error("duplicate label '" + duplicates_.front() + "'");
    std::vector<PrimitiveInstruction> out;
    out.reserve(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Slot& s = slots_[i];
        if (s.instr) {
            out.push_back(*s.instr);
            continue;
        }
        const auto it = labels_.find(s.target);
        if (it == labels_.end()) throw std::logic_error("undefined label '" + s.target + "'");
        const std::size_t here = i + 1;
        const std::size_t there = it->second;
        if (there == here) throw std::logic_error("jump to itself at label '" + s.target + "'");
        out.push_back(there > here ? PrimitiveInstruction::fwdJump(there - here)
                                   : PrimitiveInstruction::bwdJump(here - there));
    }
    return InstructionSequence(std::move(out));
}

}  // namespace pglb
