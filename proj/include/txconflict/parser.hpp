#pragma once

#include "txconflict/model.hpp"

#include <string>
#include <string_view>

namespace txconflict {

/// Parses one Solidity file into a SourceUnit.
///
/// Accepts single-file, non-inheriting contracts whose function bodies use
/// declarations, (compound) assignments, ++/--, `delete`, calls, `emit`,
/// `require`/`assert`/`revert`, `return`, `if`/`else`, loops and blocks.
///
/// Throws LexError or ParseError on malformed input and UnsupportedConstruct
/// for inheritance, interfaces, libraries, `using ... for`, imports, inline
/// assembly and try/catch. No other exception escapes.
SourceUnit parse(std::string_view source, std::string path = std::string(kSyntheticSourceName));

/// Renders a SourceUnit back to Solidity. Declarations are printed from the
/// model, bodies from their token streams, so `parse(print(u)) == u`.
std::string print_source(const SourceUnit& unit);

}  // namespace txconflict
