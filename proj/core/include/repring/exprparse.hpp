#pragma once

#include <string>

#include "repring/ring.hpp"

namespace repring {

/// Parses and evaluates an element expression against a ring.
///
/// Grammar (whitespace insignificant):
///   EXPR   := TERM (('+'|'-') TERM)*
///   TERM   := FACTOR ('*' FACTOR)*
///   FACTOR := INT | LABEL | '(' EXPR ')' | FACTOR '^' UINT | FACTOR '~'
///
/// `~` is the star involution; `^` takes non-negative integer powers.
/// Throws SyntaxError with a position, or UnknownIndex for bad labels.
Element parse_element(const std::string& src, const RingSpec& ring);

}  // namespace repring
