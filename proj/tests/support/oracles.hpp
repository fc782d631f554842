#pragma once

#include "probe/eval.hpp"
#include "probe/plts.hpp"
#include "probe/semantics.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace probe::oracle {

/// One joint resolution of every probabilistic choice in a process.
struct Resolution {
    StateTerm state;
    mpq_class weight;
};

using Resolutions = std::vector<Resolution>;

/// Every pair of resolutions, combined. No merging of equal outcomes.
inline Resolutions cross(const Resolutions& a, const Resolutions& b) {
    Resolutions out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back({term::combine({x.state, y.state}), x.weight * y.weight});
    return out;
}

Resolutions resolve(const Semantics& sem, const ProcExpr& p, const Env& env);

/// Resolutions of `s . cont` given a resolution s of the left operand.
inline Resolutions resolve_tail(const Semantics& sem, const StateTerm& s, const Closure& cont) {
    switch (s->kind) {
    case TermNode::Kind::Deadlock: return {{s, 1}};
    case TermNode::Kind::Terminated: return resolve(sem, cont.expr, cont.env);
    case TermNode::Kind::Prefix: {
        auto c = s->continuation;
        c.push_back(cont);
        return {{term::prefix(s->label, c, sem.index()), 1}};
    }
    case TermNode::Kind::Combine: {
        Resolutions acc{{term::deadlock(), 1}};
        for (const auto& m : s->members) acc = cross(acc, resolve_tail(sem, m, cont));
        return acc;
    }
    }
    return {};
}

/// Exhaustive enumeration of the finite fragment (no recursion): walks every
/// branch of every sum, dist and choice and multiplies the masses.
inline Resolutions resolve(const Semantics& sem, const ProcExpr& p, const Env& env) {
    using K = ProcNode::Kind;
    switch (p->kind) {
    case K::Delta: return {{term::deadlock(), 1}};
    case K::Terminated: return {{term::terminated(), 1}};
    case K::Action: {
        ActionLabel l{p->name, {}};
        for (const auto& a : p->args) l.data.push_back(eval_expr(a, env));
        return {{term::prefix(l, {}, sem.index()), 1}};
    }
    case K::Cond: return resolve(sem, p->children[eval_expr(p->args[0], env).as_bool() ? 0 : 1], env);
    case K::Alt: return cross(resolve(sem, p->children[0], env), resolve(sem, p->children[1], env));
    case K::Sum: {
        Resolutions acc{{term::deadlock(), 1}};
        for (std::int64_t v = p->sort.lo; v <= p->sort.hi; ++v) {
            Env local = env;
            local[p->var] = Value::integer(static_cast<long long>(v));
            acc = cross(acc, resolve(sem, p->children[0], local));
        }
        return acc;
    }
    case K::Dist: {
        Resolutions out;
        std::vector<Value> domain;
        if (p->sort.kind == Sort::Kind::Bool) {
            domain = {Value::boolean(false), Value::boolean(true)};
        } else {
            for (std::int64_t v = p->sort.lo; v <= p->sort.hi; ++v) domain.push_back(Value::integer(static_cast<long long>(v)));
        }
        for (const auto& v : domain) {
            Env local = env;
            local[p->var] = v;
            mpq_class w = eval_expr(p->density.params[0], local).as_rational();
            for (auto& r : resolve(sem, p->children[0], local)) out.push_back({r.state, w * r.weight});
        }
        return out;
    }
    case K::Seq: {
        Resolutions out;
        Closure cont = make_closure(p->children[1], env);
        for (const auto& l : resolve(sem, p->children[0], env))
            for (auto& r : resolve_tail(sem, l.state, cont)) out.push_back({r.state, l.weight * r.weight});
        return out;
    }
    case K::ProcRef: break;
    }
    throw std::logic_error("oracle: unsupported node");
}

/// Fingerprint -> total mass, dropping zero entries.
inline std::map<std::string, mpq_class> aggregate(const Resolutions& rs) {
    std::map<std::string, mpq_class> out;
    for (const auto& r : rs) out[r.state->fingerprint] += r.weight;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline std::map<std::string, mpq_class> aggregate(const StatePMF& d) {
    std::map<std::string, mpq_class> out;
    for (const auto& [s, p] : d) out[s->fingerprint] += p.rational();
    return out;
}

/// Naive greatest fixed point: start from all pairs with the same status and
/// delete (s,t) until every transition of one side is matched by the other
/// with equal mass on every class of the current relation. Exact masses only.
inline std::vector<std::vector<bool>> naive_bisimulation(const PLTS& p) {
    const std::size_t n = p.nd_states.size();
    auto status = [&](std::size_t s) { return p.nd_states[s].unexplored ? 2 : (p.nd_states[s].terminated ? 1 : 0); };
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) rel[s][t] = status(s) == status(t);

    auto same_lift = [&](std::size_t mu, std::size_t nu) {
        // Equal mass on the class of every state.
        for (std::size_t c = 0; c < n; ++c) {
            mpq_class a = 0, b = 0;
            for (const auto& [s, m] : p.prob_states[mu]) if (rel[c][s]) a += m.rational();
            for (const auto& [s, m] : p.prob_states[nu]) if (rel[c][s]) b += m.rational();
            if (a != b) return false;
        }
        return true;
    };
    auto simulated = [&](std::size_t s, std::size_t t) {
        for (const auto& x : p.nd_states[s].transitions) {
            bool found = false;
            for (const auto& y : p.nd_states[t].transitions)
                if (x.label == y.label && same_lift(x.target, y.target)) found = true;
            if (!found) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        auto next = rel;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                if (rel[s][t] && !(simulated(s, t) && simulated(t, s))) {
                    next[s][t] = false;
                    changed = true;
                }
        rel = std::move(next);
    }
    return rel;
}

} // namespace probe::oracle
