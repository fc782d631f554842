#include "probe/printer.hpp"

#include <sstream>

namespace probe {

namespace {

int precedence(const Expr& e) {
    if (e->kind == ExprNode::Kind::Unary) return 6;
    if (e->kind != ExprNode::Kind::Binary) return 8;
    switch (e->op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 3;
    case Op::Add: case Op::Sub: return 4;
    case Op::Mul: case Op::Div: return 5;
    case Op::Pow: return 7;
    default: return 8;
    }
}

std::string expr_str(const Expr& e, int min_prec) {
    int p = precedence(e);
    std::string s;
    switch (e->kind) {
    case ExprNode::Kind::Literal: {
        s = e->literal.str();
        // Negative literals only come from programmatic construction.
        if (!s.empty() && s[0] == '-') p = 6;
        break;
    }
    case ExprNode::Kind::Var: s = e->name; break;
    case ExprNode::Kind::If:
        s = "if(" + expr_str(e->args[0], 0) + ", " + expr_str(e->args[1], 0) + ", " + expr_str(e->args[2], 0) + ")";
        break;
    case ExprNode::Kind::Unary: s = std::string(op_symbol(e->op)) + expr_str(e->args[0], 6); break;
    case ExprNode::Kind::Binary: {
        int lmin = p, rmin = p + 1;
        if (p == 3) lmin = 4;
        if (e->op == Op::Pow) {
            lmin = 8;
            rmin = 6;
        }
        const char* sep = e->op == Op::Pow ? "^" : nullptr;
        s = expr_str(e->args[0], lmin) + (sep ? std::string(sep) : " " + std::string(op_symbol(e->op)) + " ") +
            expr_str(e->args[1], rmin);
        break;
    }
    }
    return p < min_prec ? "(" + s + ")" : s;
}

std::string args_str(const std::vector<Expr>& args) {
    if (args.empty()) return {};
    std::string s = "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ", ";
        s += expr_str(args[i], 0);
    }
    return s + ")";
}

bool is_atomic(const ProcExpr& p) {
    using K = ProcNode::Kind;
    return p->kind == K::Delta || p->kind == K::Action || p->kind == K::ProcRef;
}

// level 0: process, 1: term (operand of '.'), 2: factor.
std::string proc_str(const ProcExpr& p, int level) {
    using K = ProcNode::Kind;
    std::string s;
    int own = 2;
    switch (p->kind) {
    case K::Delta: s = "delta"; break;
    case K::Terminated: throw Error("the termination marker has no source syntax");
    case K::Action:
    case K::ProcRef: s = p->name + args_str(p->args); break;
    case K::Alt:
        own = 0;
        s = proc_str(p->children[0], 0) + " + " + proc_str(p->children[1], 1);
        break;
    case K::Seq:
        own = 1;
        s = proc_str(p->children[0], 1) + "." + proc_str(p->children[1], 2);
        break;
    case K::Cond: {
        const auto& then_p = p->children[0];
        const auto& else_p = p->children[1];
        s = "(" + expr_str(p->args[0], 0) + ") -> ";
        s += is_atomic(then_p) ? proc_str(then_p, 2) : "(" + proc_str(then_p, 0) + ")";
        if (else_p->kind != K::Delta) s += " <> " + proc_str(else_p, 2);
        break;
    }
    case K::Sum: s = "sum " + p->var + ":" + p->sort.str() + ". " + proc_str(p->children[0], 2); break;
    case K::Dist:
        s = "dist " + p->var + ":" + p->sort.str() + "[" + to_string(p->density) + "]. " +
            proc_str(p->children[0], 2);
        break;
    }
    return own < level ? "(" + s + ")" : s;
}

} // namespace

std::string to_string(const Expr& e) { return expr_str(e, 0); }

std::string to_string(const ProcExpr& p) { return proc_str(p, 0); }

std::string to_string(const DensitySpec& d) {
    switch (d.kind) {
    case DensitySpec::Kind::Pmf: return expr_str(d.params[0], 0);
    case DensitySpec::Kind::Uniform: return "Uniform" + args_str(d.params);
    case DensitySpec::Kind::Exponential: return "Exp" + args_str(d.params);
    case DensitySpec::Kind::NormalTrunc: return "NormalTrunc" + args_str(d.params);
    }
    return {};
}

std::string pretty_print(const Spec& spec) {
    std::ostringstream os;
    for (const auto& a : spec.actions) {
        os << "act " << a.name;
        for (std::size_t i = 0; i < a.sorts.size(); ++i) os << (i ? " # " : ": ") << a.sorts[i].str();
        os << ";\n";
    }
    for (const auto& [name, eq] : spec.equations) {
        os << "proc " << name;
        if (!eq.params.empty()) {
            os << "(";
            for (std::size_t i = 0; i < eq.params.size(); ++i)
                os << (i ? ", " : "") << eq.params[i].name << ": " << eq.params[i].sort.str();
            os << ")";
        }
        os << " = " << to_string(eq.body) << ";\n";
    }
    os << "init " << to_string(spec.init) << ";\n";
    return os.str();
}

} // namespace probe
