#include "probe/semantics.hpp"

#include "probe/distributions.hpp"
#include "probe/error.hpp"
#include "probe/eval.hpp"
#include "probe/validate.hpp"

#include <algorithm>

namespace probe {

namespace {
using K = ProcNode::Kind;
} // namespace

Semantics::Semantics(const Spec& spec, SemanticsOptions options)
    : spec_(narrow_sums(spec)), options_(options) {
    for (const auto& [name, eq] : spec_.equations) index_.add_tree(eq.body);
    index_.add_tree(spec_.init);
    index_.add_tree(pr::terminated());
}

StatePMF Semantics::initial() const { return behavioural_distribution(spec_.init, {}); }

StatePMF Semantics::behavioural_distribution(const ProcExpr& p, const Env& env) const {
    std::vector<std::string> unfolding;
    return eval(p, env, unfolding);
}

StatePMF Semantics::continuation_distribution(const std::vector<Closure>& continuation) const {
    if (continuation.empty()) return StatePMF::dirac(term::terminated());
    StatePMF acc = behavioural_distribution(continuation.front().expr, continuation.front().env);
    for (std::size_t i = 1; i < continuation.size(); ++i) {
        StatePmfBuilder b;
        for (const auto& [s, p] : acc)
            for (const auto& [t, q] : seq_tail(s, continuation[i])) b.add(t, p * q);
        acc = std::move(b).build();
    }
    return acc;
}

Env Semantics::bind_params(const ProcNode& ref, const Env& env) const {
    const Equation* eq = spec_.find_equation(ref.name);
    if (!eq) throw SemanticError("undefined process '" + ref.name + "'");
    if (eq->params.size() != ref.args.size())
        throw SemanticError("process '" + ref.name + "' expects " + std::to_string(eq->params.size()) +
                            " argument(s)");
    Env bound;
    for (std::size_t i = 0; i < ref.args.size(); ++i) {
        Value v = eval_expr(ref.args[i], env);
        if (!eq->params[i].sort.contains(v))
            throw EvalError("argument " + v.str() + " of " + ref.name + " is not in sort " +
                            eq->params[i].sort.str());
        bound.emplace(eq->params[i].name, std::move(v));
    }
    return bound;
}

StatePMF Semantics::product(const StatePMF& a, const StatePMF& b) const {
    if (a.size() * b.size() > options_.max_support)
        throw LimitError("product distribution support " + std::to_string(a.size() * b.size()) +
                         " exceeds the bound of " + std::to_string(options_.max_support) + " outcomes");
    StatePmfBuilder out;
    for (const auto& [s, p] : a)
        for (const auto& [t, q] : b) out.add(term::combine({s, t}), p * q);
    return std::move(out).build();
}

StateTerm Semantics::append_continuation(const StateTerm& s, const Closure& cont) const {
    switch (s->kind) {
    case TermNode::Kind::Prefix: {
        auto c = s->continuation;
        c.push_back(cont);
        return term::prefix(s->label, std::move(c), index_);
    }
    case TermNode::Kind::Combine: {
        std::vector<StateTerm> ms;
        ms.reserve(s->members.size());
        for (const auto& m : s->members) ms.push_back(append_continuation(m, cont));
        return term::combine(std::move(ms));
    }
    default: return s;
    }
}

StatePMF Semantics::seq_tail(const StateTerm& s, const Closure& cont) const {
    switch (s->kind) {
    case TermNode::Kind::Deadlock: return StatePMF::dirac(s);
    case TermNode::Kind::Terminated: return behavioural_distribution(cont.expr, cont.env);
    case TermNode::Kind::Prefix: return StatePMF::dirac(append_continuation(s, cont));
    case TermNode::Kind::Combine: {
        StatePMF acc = StatePMF::dirac(term::deadlock());
        for (const auto& m : s->members) acc = product(acc, seq_tail(m, cont));
        return acc;
    }
    }
    throw Error("internal: bad state term");
}

StatePMF Semantics::eval(const ProcExpr& p, const Env& env, std::vector<std::string>& unfolding) const {
    switch (p->kind) {
    case K::Delta: return StatePMF::dirac(term::deadlock());
    case K::Terminated: return StatePMF::dirac(term::terminated());
    case K::Action: {
        ActionLabel label{p->name, {}};
        for (const auto& a : p->args) label.data.push_back(eval_expr(a, env));
        return StatePMF::dirac(term::prefix(std::move(label), {}, index_));
    }
    case K::Cond: {
        bool c = eval_expr(p->args[0], env).as_bool();
        return eval(p->children[c ? 0 : 1], env, unfolding);
    }
    case K::Alt: return product(eval(p->children[0], env, unfolding), eval(p->children[1], env, unfolding));
    case K::Sum: {
        if (!p->sort.is_finite())
            throw SemanticError("sum over infinite sort " + p->sort.str() + " ('" + p->var +
                                "') is not finitely explorable");
        StatePMF acc = StatePMF::dirac(term::deadlock());
        Env local = env;
        for (const Value& v : enumerate_sort(p->sort)) {
            local[p->var] = v;
            acc = product(acc, eval(p->children[0], local, unfolding));
        }
        return acc;
    }
    case K::Dist: {
        if (p->density.is_continuous() || !p->sort.is_finite())
            throw SemanticError("dist over infinite sort " + p->sort.str() + " ('" + p->var +
                                "') is not finitely explorable");
        ValuePMF choice = pmf_from_expr(p->var, p->sort, p->density.params[0], env);
        StatePmfBuilder out;
        Env local = env;
        for (const auto& [v, w] : choice) {
            local[p->var] = v;
            for (const auto& [s, q] : eval(p->children[0], local, unfolding)) out.add(s, w * q);
        }
        return std::move(out).build();
    }
    case K::Seq: {
        StatePMF left = eval(p->children[0], env, unfolding);
        Closure cont = make_closure(p->children[1], env);
        StatePmfBuilder out;
        for (const auto& [s, w] : left)
            for (const auto& [t, q] : seq_tail(s, cont)) out.add(t, w * q);
        return std::move(out).build();
    }
    case K::ProcRef: {
        if (std::find(unfolding.begin(), unfolding.end(), p->name) != unfolding.end())
            throw SemanticError("unguarded recursion at " + p->name);
        Env bound = bind_params(*p, env);
        unfolding.push_back(p->name);
        StatePMF out = eval(spec_.find_equation(p->name)->body, bound, unfolding);
        unfolding.pop_back();
        return out;
    }
    }
    throw Error("internal: bad process node");
}

std::vector<Move> Semantics::enabled_moves(const StateTerm& s) const {
    switch (s->kind) {
    case TermNode::Kind::Prefix: return {Move{s->label, s->continuation}};
    case TermNode::Kind::Combine: {
        std::vector<Move> out;
        for (const auto& m : s->members) {
            auto sub = enabled_moves(m);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    default: return {};
    }
}

std::vector<Transition> Semantics::enabled_transitions(const StateTerm& s) const {
    std::vector<Transition> out;
    for (auto& m : enabled_moves(s)) out.push_back({m.label, continuation_distribution(m.continuation)});
    return out;
}

} // namespace probe
