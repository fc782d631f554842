#pragma once

#include "probe/error.hpp"
#include "probe/value.hpp"

#include <memory>
#include <string>
#include <vector>

namespace probe {

enum class Op {
    Add, Sub, Mul, Div, Pow,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or,
    Not, Neg,
};

const char* op_symbol(Op op);

struct ExprNode;
/// Immutable, shareable data expression.
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Literal, Var, Unary, Binary, If };

    Kind kind = Kind::Literal;
    Value literal;
    std::string name;
    Op op = Op::Add;
    std::vector<Expr> args;
    /// Sorted, duplicate free.
    std::vector<std::string> free_vars;
    SourceLoc loc;
};

namespace ex {

Expr lit(Value v, SourceLoc loc = {});
Expr var(std::string name, SourceLoc loc = {});
Expr unary(Op op, Expr e, SourceLoc loc = {});
Expr binary(Op op, Expr l, Expr r, SourceLoc loc = {});
Expr if_(Expr c, Expr then_e, Expr else_e, SourceLoc loc = {});

/// Exact rational literal built from integer literals, e.g. 3/4 -> Binary(/, 3, 4).
Expr fraction(const mpq_class& q);

} // namespace ex

/// Structural equality (locations ignored).
bool equal(const Expr& a, const Expr& b);

} // namespace probe
