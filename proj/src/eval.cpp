#include "probe/eval.hpp"

#include "probe/error.hpp"

#include <cmath>

namespace probe {

namespace {

Value arith(Op op, const Value& a, const Value& b) {
    if (!a.is_numeric() || !b.is_numeric())
        throw EvalError(std::string("sort mismatch: '") + op_symbol(op) + "' needs numbers, got " + a.str() + " and " +
                        b.str());
    if (op == Op::Pow) {
        if (b.kind() != Value::Kind::Int || sgn(b.as_int()) < 0)
            throw EvalError("exponent must be a non-negative integer, got " + b.str());
        if (!b.as_int().fits_ulong_p()) throw EvalError("exponent too large: " + b.str());
        unsigned long k = b.as_int().get_ui();
        if (a.kind() == Value::Kind::Real) return Value::real(std::pow(a.as_double(), static_cast<double>(k)));
        mpq_class base = a.as_rational();
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
        mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
        return Value::rational(mpq_class(num, den));
    }
    if (a.is_exact_number() && b.is_exact_number()) {
        mpq_class x = a.as_rational(), y = b.as_rational();
        switch (op) {
        case Op::Add: return Value::rational(x + y);
        case Op::Sub: return Value::rational(x - y);
        case Op::Mul: return Value::rational(x * y);
        case Op::Div:
            if (sgn(y) == 0) throw EvalError("division by zero");
            return Value::rational(x / y);
        default: break;
        }
    } else {
        double x = a.as_double(), y = b.as_double();
        switch (op) {
        case Op::Add: return Value::real(x + y);
        case Op::Sub: return Value::real(x - y);
        case Op::Mul: return Value::real(x * y);
        case Op::Div:
            if (y == 0.0) throw EvalError("division by zero");
            return Value::real(x / y);
        default: break;
        }
    }
    throw EvalError("internal: bad arithmetic operator");
}

// -1, 0, 1
int compare_numbers(const Value& a, const Value& b) {
    if (a.is_exact_number() && b.is_exact_number()) {
        int c = cmp(a.as_rational(), b.as_rational());
        return (c > 0) - (c < 0);
    }
    double x = a.as_double(), y = b.as_double();
    return x < y ? -1 : (x > y ? 1 : 0);
}

Value compare(Op op, const Value& a, const Value& b) {
    if (op == Op::Eq || op == Op::Ne) {
        bool eq;
        if (a.is_bool() && b.is_bool())
            eq = a.as_bool() == b.as_bool();
        else if (a.is_numeric() && b.is_numeric())
            eq = compare_numbers(a, b) == 0;
        else
            throw EvalError("sort mismatch: cannot compare " + a.str() + " with " + b.str());
        return Value::boolean(op == Op::Eq ? eq : !eq);
    }
    if (!a.is_numeric() || !b.is_numeric())
        throw EvalError(std::string("sort mismatch: '") + op_symbol(op) + "' needs numbers");
    int c = compare_numbers(a, b);
    switch (op) {
    case Op::Lt: return Value::boolean(c < 0);
    case Op::Le: return Value::boolean(c <= 0);
    case Op::Gt: return Value::boolean(c > 0);
    case Op::Ge: return Value::boolean(c >= 0);
    default: throw EvalError("internal: bad comparison operator");
    }
}

} // namespace

Value eval_expr(const Expr& e, const Env& env) {
    switch (e->kind) {
    case ExprNode::Kind::Literal: return e->literal;
    case ExprNode::Kind::Var: return lookup(env, e->name);
    case ExprNode::Kind::If:
        return eval_expr(e->args[0], env).as_bool() ? eval_expr(e->args[1], env) : eval_expr(e->args[2], env);
    case ExprNode::Kind::Unary: {
        Value v = eval_expr(e->args[0], env);
        if (e->op == Op::Not) return Value::boolean(!v.as_bool());
        if (v.is_exact_number()) return Value::rational(-v.as_rational());
        if (v.kind() == Value::Kind::Real) return Value::real(-v.as_double());
        throw EvalError("sort mismatch: cannot negate " + v.str());
    }
    case ExprNode::Kind::Binary: {
        if (e->op == Op::And) {
            return Value::boolean(eval_expr(e->args[0], env).as_bool() && eval_expr(e->args[1], env).as_bool());
        }
        if (e->op == Op::Or) {
            return Value::boolean(eval_expr(e->args[0], env).as_bool() || eval_expr(e->args[1], env).as_bool());
        }
        Value a = eval_expr(e->args[0], env);
        Value b = eval_expr(e->args[1], env);
        switch (e->op) {
        case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Pow: return arith(e->op, a, b);
        default: return compare(e->op, a, b);
        }
    }
    }
    throw EvalError("internal: bad expression");
}

std::vector<Value> enumerate_sort(const Sort& sort) {
    switch (sort.kind) {
    case Sort::Kind::Bool: return {Value::boolean(false), Value::boolean(true)};
    case Sort::Kind::Range: {
        std::vector<Value> out;
        out.reserve(static_cast<std::size_t>(sort.hi - sort.lo + 1));
        for (std::int64_t v = sort.lo; v <= sort.hi; ++v) out.push_back(Value::integer(static_cast<long long>(v)));
        return out;
    }
    default: throw EvalError("infinite sort " + sort.str() + " cannot be enumerated");
    }
}

} // namespace probe
