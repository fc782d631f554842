#pragma once

#include "probe/ast.hpp"

#include <string>
#include <string_view>

namespace probe {

/// Parse a complete model. Throws ParseError carrying line/column.
///
/// Identifiers used as processes are resolved after all declarations are read:
/// a name with a `proc` equation becomes a ProcRef, anything else an Action
/// (undeclared actions are reported by validate()).
Spec parse_spec(std::string_view text);

/// Parse a standalone data expression, e.g. a scheduler parameter.
Expr parse_expr(std::string_view text);

/// Parse a density in the same grammar as inside `dist x:S[...]`.
DensitySpec parse_density(std::string_view text);

/// Parse a sort name or range, e.g. "Nat" or "[1..4]".
Sort parse_sort(std::string_view text);

} // namespace probe
