#pragma once

#include <string>
#include <string_view>

#include "kpinf/kp_algebra.hpp"

namespace kpinf {

/// Parses the element grammar:
///   expr    := ['-'] product (('+' | '-') product)*
///   product := (scalar '*')* factor+          juxtaposition is multiplication
///   factor  := pathref ['^*'] | '(' expr ')'
///   pathref := vertex-id | edge-id ('.' edge-id)*
///   scalar  := integer ['/' integer]
/// A lone `0` is the zero element. Throws ParseError (line/column) on bad input.
KPElement parse_expression(std::shared_ptr<const KGraph> g, Field f, std::string_view text);

/// Prints an element back in the same grammar, e.g. `3/2*a b^* - v`.
std::string to_expression(const KPElement& a);

}  // namespace kpinf
