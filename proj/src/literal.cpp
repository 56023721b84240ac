#include "pglb/literal.hpp"

#include "pglb/errors.hpp"
#include "pglb/halting.hpp"

namespace pglb {

UnitRef unitByName(std::string_view name) {
    if (name == "counter") return counterUnit();
    if (name == "tapebasic" || name == "tape") return tapeBasicUnit();
    if (name == "dup") return dupUnit();
    if (name == "halting-empty") return haltingEmptyUnit();
    throw LiteralError("unknown unit '" + std::string(name) + "'");
}

std::vector<std::string> unitNames() { return {"counter", "dup", "halting-empty", "tapebasic"}; }

Service parseService(std::string_view literal) {
    if (literal == "empty") return Service::empty();
    const std::size_t colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw LiteralError("service literal must be 'empty' or '<unit>:<state>': '" + std::string(literal) + "'");
    const UnitRef unit = unitByName(literal.substr(0, colon));
    return Service(unit, parseState(unit->stateSpace(), literal.substr(colon + 1)));
}

ServiceFamily parseFamily(std::string_view literal) {
    ServiceFamily out;
    if (literal.empty() || literal == "{}") return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = literal.find(',', start);
        const std::string_view entry = literal.substr(start, comma == std::string_view::npos ? comma : comma - start);
        const std::size_t eq = entry.find('=');
        if (eq == std::string_view::npos)
            throw LiteralError("family entry must be 'focus=service': '" + std::string(entry) + "'");
        const std::string focus(entry.substr(0, eq));
        if (!isValidFocus(focus)) throw LiteralError("invalid focus '" + focus + "'");
        out = compose(out, singleton(focus, parseService(entry.substr(eq + 1))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace pglb
