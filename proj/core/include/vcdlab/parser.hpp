#pragma once

#include <string>
#include <string_view>

#include "vcdlab/formula.hpp"
#include "vcdlab/structure.hpp"

namespace vcdlab {

/// Parsing context: the structure supplies the signature (relation names and
/// arities) and the label table for @label constants. "<" in infix position
/// is sugar for `order_rel`.
struct ParseContext {
  const FiniteStructure* structure = nullptr;
  std::string order_rel = "<";
};

/// Recursive-descent parser for the formula DSL.
///
///   formula := iff
///   iff     := imp ("<->" imp)*           (left-associative)
///   imp     := or ("->" or)*              (right-associative)
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | quant | atom | "(" formula ")"
///   quant   := ("exists" | "forall") ["[>=" INT "]"] VAR "." unary
///   atom    := REL "(" term {"," term} ")" | term ("<" | "=") term
///   term    := VAR | "@" (INT | LABEL)
///
/// Throws ParseError with the byte offset of the failure.
Formula parse_formula(std::string_view src, const ParseContext& ctx);

}  // namespace vcdlab
