#include "probe/expr.hpp"

#include <algorithm>

namespace probe {

const char* op_symbol(Op op) {
    switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "^";
    case Op::Eq: return "=";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Not: return "!";
    case Op::Neg: return "-";
    }
    return "?";
}

namespace {

std::vector<std::string> merge_free(const std::vector<Expr>& args) {
    std::vector<std::string> out;
    for (const auto& a : args) out.insert(out.end(), a->free_vars.begin(), a->free_vars.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

namespace ex {

Expr lit(Value v, SourceLoc loc) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Literal;
    n->literal = std::move(v);
    n->loc = loc;
    return n;
}

Expr var(std::string name, SourceLoc loc) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Var;
    n->free_vars = {name};
    n->name = std::move(name);
    n->loc = loc;
    return n;
}

Expr unary(Op op, Expr e, SourceLoc loc) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Unary;
    n->op = op;
    n->args = {std::move(e)};
    n->free_vars = merge_free(n->args);
    n->loc = loc;
    return n;
}

Expr binary(Op op, Expr l, Expr r, SourceLoc loc) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->op = op;
    n->args = {std::move(l), std::move(r)};
    n->free_vars = merge_free(n->args);
    n->loc = loc;
    return n;
}

Expr if_(Expr c, Expr then_e, Expr else_e, SourceLoc loc) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::If;
    n->args = {std::move(c), std::move(then_e), std::move(else_e)};
    n->free_vars = merge_free(n->args);
    n->loc = loc;
    return n;
}

Expr fraction(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    Expr num = lit(Value::integer(mpz_class(abs(c.get_num()))));
    Expr e = c.get_den() == 1 ? num : binary(Op::Div, num, lit(Value::integer(mpz_class(c.get_den()))));
    return sgn(c) < 0 ? unary(Op::Neg, e) : e;
}

} // namespace ex

bool equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprNode::Kind::Literal:
        if (!(a->literal == b->literal)) return false;
        break;
    case ExprNode::Kind::Var:
        if (a->name != b->name) return false;
        break;
    case ExprNode::Kind::Unary:
    case ExprNode::Kind::Binary:
        if (a->op != b->op) return false;
        break;
    case ExprNode::Kind::If: break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

} // namespace probe
