#include "probe/validate.hpp"

#include "probe/eval.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace probe {

std::string Diagnostic::str() const {
    std::string s;
    if (loc.line > 0) s = loc.str() + ": ";
    s += severity == Severity::Error ? "error: " : "warning: ";
    return s + message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

namespace {

using K = ProcNode::Kind;

// -- narrowing ---------------------------------------------------------------

void conjuncts(const Expr& e, std::vector<Expr>& out) {
    if (e->kind == ExprNode::Kind::Binary && e->op == Op::And) {
        conjuncts(e->args[0], out);
        conjuncts(e->args[1], out);
    } else {
        out.push_back(e);
    }
}

std::optional<mpz_class> closed_integer(const Expr& e) {
    if (!e->free_vars.empty()) return std::nullopt;
    try {
        Value v = eval_expr(e, {});
        if (v.kind() == Value::Kind::Int) return v.as_int();
    } catch (const Error&) {
    }
    return std::nullopt;
}

struct Bounds {
    std::optional<mpz_class> lo, hi;
    bool all_bounds = true;
};

Bounds collect_bounds(const Expr& cond, const std::string& var) {
    std::vector<Expr> cs;
    conjuncts(cond, cs);
    Bounds b;
    auto tighten_hi = [&](mpz_class v) { b.hi = b.hi ? std::min(*b.hi, v) : v; };
    auto tighten_lo = [&](mpz_class v) { b.lo = b.lo ? std::max(*b.lo, v) : v; };
    for (const auto& c : cs) {
        if (c->kind != ExprNode::Kind::Binary) {
            b.all_bounds = false;
            continue;
        }
        Op op = c->op;
        Expr l = c->args[0], r = c->args[1];
        // Orient as `var op k`.
        if (r->kind == ExprNode::Kind::Var && r->name == var && l->free_vars.empty()) {
            std::swap(l, r);
            switch (op) {
            case Op::Lt: op = Op::Gt; break;
            case Op::Le: op = Op::Ge; break;
            case Op::Gt: op = Op::Lt; break;
            case Op::Ge: op = Op::Le; break;
            default: break;
            }
        }
        if (!(l->kind == ExprNode::Kind::Var && l->name == var)) {
            b.all_bounds = false;
            continue;
        }
        auto k = closed_integer(r);
        if (!k) {
            b.all_bounds = false;
            continue;
        }
        switch (op) {
        case Op::Lt: tighten_hi(*k - 1); break;
        case Op::Le: tighten_hi(*k); break;
        case Op::Gt: tighten_lo(*k + 1); break;
        case Op::Ge: tighten_lo(*k); break;
        default: b.all_bounds = false; break;
        }
    }
    return b;
}

ProcExpr narrow(const ProcExpr& p, std::vector<Diagnostic>* diags) {
    switch (p->kind) {
    case K::Seq: return pr::seq(narrow(p->children[0], diags), narrow(p->children[1], diags), p->loc);
    case K::Alt: return pr::alt(narrow(p->children[0], diags), narrow(p->children[1], diags), p->loc);
    case K::Cond:
        return pr::cond(p->args[0], narrow(p->children[0], diags), narrow(p->children[1], diags), p->loc);
    case K::Dist: return pr::dist(p->var, p->sort, p->density, narrow(p->children[0], diags), p->loc);
    case K::Sum: {
        ProcExpr body = narrow(p->children[0], diags);
        bool integral = p->sort.kind == Sort::Kind::Nat || p->sort.kind == Sort::Kind::Int;
        if (integral && body->kind == K::Cond && body->children[1]->kind == K::Delta) {
            Bounds b = collect_bounds(body->args[0], p->var);
            if (p->sort.kind == Sort::Kind::Nat) b.lo = b.lo ? std::max(*b.lo, mpz_class(0)) : mpz_class(0);
            if (b.lo && b.hi) {
                if (*b.lo > *b.hi) {
                    if (diags)
                        diags->push_back({Diagnostic::Severity::Error,
                                          "condition on '" + p->var + "' leaves an empty range", p->loc});
                    return pr::sum(p->var, p->sort, body, p->loc);
                }
                if (!b.lo->fits_slong_p() || !b.hi->fits_slong_p()) {
                    if (diags)
                        diags->push_back({Diagnostic::Severity::Error, "narrowed range too large", p->loc});
                    return pr::sum(p->var, p->sort, body, p->loc);
                }
                // The condition stays; values outside the range would only contribute delta.
                return pr::sum(p->var, Sort::range(b.lo->get_si(), b.hi->get_si()), body, p->loc);
            }
        }
        return pr::sum(p->var, p->sort, body, p->loc);
    }
    default: return p;
    }
}

// -- checking ----------------------------------------------------------------

enum class Cat { Bool, Num, Unknown };

Cat cat_of(const Sort& s) { return s.kind == Sort::Kind::Bool ? Cat::Bool : Cat::Num; }

const char* cat_name(Cat c) { return c == Cat::Bool ? "Bool" : "a number"; }

class Checker {
public:
    explicit Checker(const Spec& s) : spec_(s) {}

    std::vector<Diagnostic> run() {
        for (const auto& [name, eq] : spec_.equations) {
            Scope scope;
            std::set<std::string> seen;
            for (const auto& prm : eq.params) {
                if (!seen.insert(prm.name).second) error("duplicate parameter '" + prm.name + "' in " + name, eq.loc);
                scope[prm.name] = prm.sort;
            }
            proc(eq.body, scope);
        }
        proc(spec_.init, {});
        guardedness();
        return std::move(diags_);
    }

private:
    using Scope = std::map<std::string, Sort>;

    const Spec& spec_;
    std::vector<Diagnostic> diags_;

    void error(std::string msg, SourceLoc loc) { diags_.push_back({Diagnostic::Severity::Error, std::move(msg), loc}); }
    void warning(std::string msg, SourceLoc loc) {
        diags_.push_back({Diagnostic::Severity::Warning, std::move(msg), loc});
    }

    Cat expr(const Expr& e, const Scope& scope) {
        switch (e->kind) {
        case ExprNode::Kind::Literal: return e->literal.is_bool() ? Cat::Bool : Cat::Num;
        case ExprNode::Kind::Var: {
            auto it = scope.find(e->name);
            if (it == scope.end()) {
                error("unbound variable '" + e->name + "'", e->loc);
                return Cat::Unknown;
            }
            return cat_of(it->second);
        }
        case ExprNode::Kind::If: {
            expect(e->args[0], Cat::Bool, scope, "condition of if");
            Cat a = expr(e->args[1], scope), b = expr(e->args[2], scope);
            if (a != Cat::Unknown && b != Cat::Unknown && a != b) error("branches of if have different sorts", e->loc);
            return a != Cat::Unknown ? a : b;
        }
        case ExprNode::Kind::Unary:
            if (e->op == Op::Not) {
                expect(e->args[0], Cat::Bool, scope, "operand of '!'");
                return Cat::Bool;
            }
            expect(e->args[0], Cat::Num, scope, "operand of '-'");
            return Cat::Num;
        case ExprNode::Kind::Binary:
            switch (e->op) {
            case Op::And:
            case Op::Or:
                expect(e->args[0], Cat::Bool, scope, std::string("operand of '") + op_symbol(e->op) + "'");
                expect(e->args[1], Cat::Bool, scope, std::string("operand of '") + op_symbol(e->op) + "'");
                return Cat::Bool;
            case Op::Eq:
            case Op::Ne: {
                Cat a = expr(e->args[0], scope), b = expr(e->args[1], scope);
                if (a != Cat::Unknown && b != Cat::Unknown && a != b)
                    error("cannot compare values of different sorts", e->loc);
                return Cat::Bool;
            }
            case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
                expect(e->args[0], Cat::Num, scope, "operand of comparison");
                expect(e->args[1], Cat::Num, scope, "operand of comparison");
                return Cat::Bool;
            default:
                expect(e->args[0], Cat::Num, scope, std::string("operand of '") + op_symbol(e->op) + "'");
                expect(e->args[1], Cat::Num, scope, std::string("operand of '") + op_symbol(e->op) + "'");
                return Cat::Num;
            }
        }
        return Cat::Unknown;
    }

    void expect(const Expr& e, Cat want, const Scope& scope, const std::string& what) {
        Cat got = expr(e, scope);
        if (got != Cat::Unknown && got != want) error(what + " must be " + cat_name(want), e->loc);
    }

    void args(const std::vector<Expr>& actual, const std::vector<Sort>& formal, const Scope& scope,
              const std::string& what, SourceLoc loc) {
        if (actual.size() != formal.size()) {
            error(what + " expects " + std::to_string(formal.size()) + " argument(s), got " +
                      std::to_string(actual.size()),
                  loc);
            for (const auto& a : actual) expr(a, scope);
            return;
        }
        for (std::size_t i = 0; i < actual.size(); ++i)
            expect(actual[i], cat_of(formal[i]), scope, "argument " + std::to_string(i + 1) + " of " + what);
    }

    void constant_density(const DensitySpec& d, SourceLoc loc) {
        for (const auto& prm : d.params)
            if (!prm->free_vars.empty()) return;
        try {
            std::vector<double> v;
            for (const auto& prm : d.params) v.push_back(eval_expr(prm, {}).as_double());
            switch (d.kind) {
            case DensitySpec::Kind::Uniform:
                if (!(v[0] < v[1])) error("Uniform needs lo < hi", loc);
                break;
            case DensitySpec::Kind::Exponential:
                if (!(v[0] > 0)) error("Exp needs rate > 0", loc);
                break;
            case DensitySpec::Kind::NormalTrunc:
                if (!(v[1] > 0)) error("NormalTrunc needs sigma > 0", loc);
                if (!(v[2] < v[3])) error("NormalTrunc needs lo < hi", loc);
                break;
            default: break;
            }
        } catch (const Error& e) {
            error(std::string("invalid distribution parameter: ") + e.what(), loc);
        }
    }

    void proc(const ProcExpr& p, const Scope& scope) {
        switch (p->kind) {
        case K::Delta:
        case K::Terminated: return;
        case K::Action: {
            const ActionDecl* decl = spec_.find_action(p->name);
            if (!decl) {
                error("undeclared action '" + p->name + "'", p->loc);
                for (const auto& a : p->args) expr(a, scope);
                return;
            }
            args(p->args, decl->sorts, scope, "action '" + p->name + "'", p->loc);
            return;
        }
        case K::ProcRef: {
            const Equation* eq = spec_.find_equation(p->name);
            if (!eq) {
                error("undefined process '" + p->name + "'", p->loc);
                return;
            }
            std::vector<Sort> formal;
            for (const auto& prm : eq->params) formal.push_back(prm.sort);
            args(p->args, formal, scope, "process '" + p->name + "'", p->loc);
            return;
        }
        case K::Seq:
        case K::Alt:
            proc(p->children[0], scope);
            proc(p->children[1], scope);
            return;
        case K::Cond:
            expect(p->args[0], Cat::Bool, scope, "condition");
            proc(p->children[0], scope);
            proc(p->children[1], scope);
            return;
        case K::Sum: {
            if (!p->sort.is_finite())
                warning("sum over infinite sort " + p->sort.str() + " ('" + p->var +
                            "'): not finitely explorable",
                        p->loc);
            Scope inner = scope;
            inner[p->var] = p->sort;
            proc(p->children[0], inner);
            return;
        }
        case K::Dist: {
            Scope inner = scope;
            inner[p->var] = p->sort;
            const DensitySpec& d = p->density;
            if (d.kind == DensitySpec::Kind::Pmf) {
                if (!p->sort.is_finite())
                    error("dist over infinite sort " + p->sort.str() +
                              " needs a continuous density (Uniform, Exp or NormalTrunc)",
                          p->loc);
                expect(d.params[0], Cat::Num, inner, "probability mass");
            } else {
                if (p->sort.kind != Sort::Kind::Real)
                    error("continuous density on non-Real sort " + p->sort.str(), p->loc);
                else
                    warning("continuous distribution on '" + p->var + "': not finitely explorable", p->loc);
                for (const auto& prm : d.params) expect(prm, Cat::Num, scope, "distribution parameter");
                constant_density(d, p->loc);
            }
            proc(p->children[0], inner);
            return;
        }
        }
    }

    static void unguarded_refs(const ProcExpr& p, std::set<std::string>& out) {
        switch (p->kind) {
        case K::ProcRef: out.insert(p->name); return;
        case K::Seq: unguarded_refs(p->children[0], out); return;
        case K::Alt:
        case K::Cond:
            unguarded_refs(p->children[0], out);
            unguarded_refs(p->children[1], out);
            return;
        case K::Sum:
        case K::Dist: unguarded_refs(p->children[0], out); return;
        default: return;
        }
    }

    void guardedness() {
        std::map<std::string, std::set<std::string>> graph;
        for (const auto& [name, eq] : spec_.equations) unguarded_refs(eq.body, graph[name]);
        // A name is unguarded iff it can reach itself through unguarded references.
        for (const auto& [name, eq] : spec_.equations) {
            std::set<std::string> seen;
            std::vector<std::string> stack(graph[name].begin(), graph[name].end());
            bool cyclic = false;
            while (!stack.empty() && !cyclic) {
                std::string cur = stack.back();
                stack.pop_back();
                if (cur == name) cyclic = true;
                if (!seen.insert(cur).second) continue;
                auto it = graph.find(cur);
                if (it != graph.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
            }
            if (cyclic) error("unguarded recursion at " + name, eq.loc);
        }
    }
};

} // namespace

Spec narrow_sums(const Spec& spec, std::vector<Diagnostic>* diags) {
    Spec out = spec;
    for (auto& [name, eq] : out.equations) eq.body = narrow(eq.body, diags);
    out.init = narrow(out.init, diags);
    return out;
}

std::vector<Diagnostic> validate(const Spec& spec) {
    std::vector<Diagnostic> diags;
    Spec narrowed = narrow_sums(spec, &diags);
    auto rest = Checker(narrowed).run();
    diags.insert(diags.end(), rest.begin(), rest.end());
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
    });
    return diags;
}

} // namespace probe
