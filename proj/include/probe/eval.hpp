#pragma once

#include "probe/expr.hpp"
#include "probe/sort.hpp"
#include "probe/value.hpp"

#include <vector>

namespace probe {

/// Evaluate a data expression. Arithmetic is exact while every leaf is an
/// integer or rational; a Real leaf switches the affected subterm to doubles.
/// Throws EvalError on unbound variables, sort mismatches, division by zero
/// and non-integral or negative exponents.
Value eval_expr(const Expr& expr, const Env& env);

/// Ascending values of a finite sort. Throws EvalError("infinite sort") for
/// Nat, Int and Real.
std::vector<Value> enumerate_sort(const Sort& sort);

} // namespace probe
