#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pglb/service.hpp"

namespace pglb {

/// Standard units by name: counter, tapebasic (alias tape), dup,
/// halting-empty. Throws LiteralError on an unknown name.
UnitRef unitByName(std::string_view name);
std::vector<std::string> unitNames();

/// "empty" or "<unit>:<state>", e.g. "counter:3", "dup:|10".
Service parseService(std::string_view literal);

/// Comma separated "focus=service" entries; "" and "{}" are the empty
/// family. A focus given twice collapses to the empty service, as in
/// compose. Throws LiteralError.
ServiceFamily parseFamily(std::string_view literal);

}  // namespace pglb
