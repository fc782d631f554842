#pragma once

#include "probe/ast.hpp"

#include <string>

namespace probe {

/// Canonical source text; parse_spec(pretty_print(s)) is structurally equal to s.
std::string pretty_print(const Spec& spec);

std::string to_string(const ProcExpr& p);
std::string to_string(const Expr& e);
std::string to_string(const DensitySpec& d);

} // namespace probe
