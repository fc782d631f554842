#include "probe/ast.hpp"

#include <algorithm>

namespace probe {

namespace {

using Kind = ProcNode::Kind;

void add_free(std::vector<std::string>& out, const std::vector<std::string>& vars) {
    out.insert(out.end(), vars.begin(), vars.end());
}

void finish_free(std::vector<std::string>& out, const std::string& bound = {}) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!bound.empty()) out.erase(std::remove(out.begin(), out.end(), bound), out.end());
}

std::shared_ptr<ProcNode> node(Kind k, SourceLoc loc) {
    auto n = std::make_shared<ProcNode>();
    n->kind = k;
    n->loc = loc;
    return n;
}

bool equal_exprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

} // namespace

bool equal(const DensitySpec& a, const DensitySpec& b) {
    return a.kind == b.kind && equal_exprs(a.params, b.params);
}

namespace pr {

ProcExpr delta(SourceLoc loc) { return node(Kind::Delta, loc); }

ProcExpr terminated() {
    static const ProcExpr t = node(Kind::Terminated, {});
    return t;
}

ProcExpr action(std::string name, std::vector<Expr> args, SourceLoc loc) {
    auto n = node(Kind::Action, loc);
    n->name = std::move(name);
    n->args = std::move(args);
    for (const auto& a : n->args) add_free(n->free_vars, a->free_vars);
    finish_free(n->free_vars);
    return n;
}

ProcExpr seq(ProcExpr l, ProcExpr r, SourceLoc loc) {
    auto n = node(Kind::Seq, loc);
    add_free(n->free_vars, l->free_vars);
    add_free(n->free_vars, r->free_vars);
    n->children = {std::move(l), std::move(r)};
    finish_free(n->free_vars);
    return n;
}

ProcExpr alt(ProcExpr l, ProcExpr r, SourceLoc loc) {
    auto n = node(Kind::Alt, loc);
    add_free(n->free_vars, l->free_vars);
    add_free(n->free_vars, r->free_vars);
    n->children = {std::move(l), std::move(r)};
    finish_free(n->free_vars);
    return n;
}

ProcExpr cond(Expr c, ProcExpr then_p, ProcExpr else_p, SourceLoc loc) {
    if (!else_p) else_p = delta(loc);
    auto n = node(Kind::Cond, loc);
    add_free(n->free_vars, c->free_vars);
    add_free(n->free_vars, then_p->free_vars);
    add_free(n->free_vars, else_p->free_vars);
    n->args = {std::move(c)};
    n->children = {std::move(then_p), std::move(else_p)};
    finish_free(n->free_vars);
    return n;
}

ProcExpr sum(std::string var, Sort sort, ProcExpr body, SourceLoc loc) {
    auto n = node(Kind::Sum, loc);
    add_free(n->free_vars, body->free_vars);
    finish_free(n->free_vars, var);
    n->var = std::move(var);
    n->sort = sort;
    n->children = {std::move(body)};
    return n;
}

ProcExpr dist(std::string var, Sort sort, DensitySpec density, ProcExpr body, SourceLoc loc) {
    auto n = node(Kind::Dist, loc);
    add_free(n->free_vars, body->free_vars);
    std::vector<std::string> dens_free;
    for (const auto& p : density.params) add_free(dens_free, p->free_vars);
    // The bound variable is in scope in a Pmf density only.
    if (density.kind == DensitySpec::Kind::Pmf) {
        add_free(n->free_vars, dens_free);
        finish_free(n->free_vars, var);
    } else {
        finish_free(n->free_vars, var);
        add_free(n->free_vars, dens_free);
        finish_free(n->free_vars);
    }
    n->var = std::move(var);
    n->sort = sort;
    n->density = std::move(density);
    n->children = {std::move(body)};
    return n;
}

ProcExpr ref(std::string name, std::vector<Expr> args, SourceLoc loc) {
    auto n = node(Kind::ProcRef, loc);
    n->name = std::move(name);
    n->args = std::move(args);
    for (const auto& a : n->args) add_free(n->free_vars, a->free_vars);
    finish_free(n->free_vars);
    return n;
}

} // namespace pr

bool equal(const ProcExpr& a, const ProcExpr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->name != b->name || a->var != b->var) return false;
    if (a->kind == Kind::Sum || a->kind == Kind::Dist) {
        if (!(a->sort == b->sort)) return false;
    }
    if (a->kind == Kind::Dist && !equal(a->density, b->density)) return false;
    if (!equal_exprs(a->args, b->args)) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!equal(a->children[i], b->children[i])) return false;
    return true;
}

const ActionDecl* Spec::find_action(const std::string& name) const {
    for (const auto& a : actions)
        if (a.name == name) return &a;
    return nullptr;
}

const Equation* Spec::find_equation(const std::string& name) const {
    auto it = equations.find(name);
    return it == equations.end() ? nullptr : &it->second;
}

bool equal(const Spec& a, const Spec& b) {
    if (a.actions.size() != b.actions.size() || a.equations.size() != b.equations.size()) return false;
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
        if (a.actions[i].name != b.actions[i].name || a.actions[i].sorts != b.actions[i].sorts) return false;
    }
    for (auto ia = a.equations.begin(), ib = b.equations.begin(); ia != a.equations.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        const auto& pa = ia->second.params;
        const auto& pb = ib->second.params;
        if (pa.size() != pb.size()) return false;
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa[i].name != pb[i].name || !(pa[i].sort == pb[i].sort)) return false;
        if (!equal(ia->second.body, ib->second.body)) return false;
    }
    return equal(a.init, b.init);
}

} // namespace probe
