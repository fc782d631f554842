#pragma once

#include "probe/ast.hpp"
#include "probe/plts.hpp"

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

namespace probe::testgen {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

/// Random rational in [0,1] with a small denominator.
inline mpq_class random_mass(Rng& rng) {
    int den = 1 + pick(rng, 6);
    mpq_class q(pick(rng, den + 1), den);
    q.canonicalize();
    return q;
}

struct Scope {
    std::vector<std::string> bools;
    std::vector<std::string> nums;
};

/// Boolean condition over the variables in scope.
inline Expr random_bool(Rng& rng, const Scope& s, int depth = 1) {
    int choice = pick(rng, depth > 0 ? 5 : 3);
    if (choice == 0 || (s.bools.empty() && s.nums.empty())) return ex::lit(Value::boolean(pick(rng, 2) == 0));
    if (choice == 1 && !s.bools.empty()) return ex::var(s.bools[pick(rng, static_cast<int>(s.bools.size()))]);
    if (choice <= 2 && !s.nums.empty()) {
        static const Op cmps[] = {Op::Eq, Op::Ne, Op::Lt, Op::Le, Op::Gt, Op::Ge};
        return ex::binary(cmps[pick(rng, 6)], ex::var(s.nums[pick(rng, static_cast<int>(s.nums.size()))]),
                          ex::lit(Value::integer(pick(rng, 3))));
    }
    if (choice == 3) return ex::unary(Op::Not, random_bool(rng, s, depth - 1));
    return ex::binary(pick(rng, 2) ? Op::And : Op::Or, random_bool(rng, s, depth - 1), random_bool(rng, s, depth - 1));
}

/// Numeric expression over the variables in scope, non-negative literals only.
inline Expr random_num(Rng& rng, const Scope& s, int depth = 1) {
    int choice = pick(rng, depth > 0 ? 4 : 2);
    if (choice == 0 || s.nums.empty()) return ex::lit(Value::integer(pick(rng, 4)));
    if (choice == 1) return ex::var(s.nums[pick(rng, static_cast<int>(s.nums.size()))]);
    if (choice == 2) {
        static const Op ops[] = {Op::Add, Op::Sub, Op::Mul};
        return ex::binary(ops[pick(rng, 3)], random_num(rng, s, depth - 1), random_num(rng, s, depth - 1));
    }
    return ex::if_(random_bool(rng, s, 0), random_num(rng, s, depth - 1), random_num(rng, s, depth - 1));
}

/// Finite-only process of bounded depth over actions a, b and c: Int.
/// Every `dist` carries a normalized rational mass function.
inline ProcExpr random_finite_proc(Rng& rng, int depth, Scope scope = {}) {
    int choice = depth <= 0 ? pick(rng, 4) : pick(rng, 10);
    static int fresh = 0;
    switch (choice) {
    case 0: return pr::delta();
    case 1: return pr::action("a");
    case 2: return pr::action("b");
    case 3: return pr::action("c", {random_num(rng, scope, 0)});
    case 4:
    case 5: return pr::alt(random_finite_proc(rng, depth - 1, scope), random_finite_proc(rng, depth - 1, scope));
    case 6: return pr::seq(random_finite_proc(rng, depth - 1, scope), random_finite_proc(rng, depth - 1, scope));
    case 7: {
        Expr c = random_bool(rng, scope);
        ProcExpr then_p = random_finite_proc(rng, depth - 1, scope);
        ProcExpr else_p = pick(rng, 2) ? random_finite_proc(rng, depth - 1, scope) : nullptr;
        return pr::cond(c, then_p, else_p);
    }
    case 8: {
        std::string v = "n" + std::to_string(fresh++ % 4);
        Scope inner = scope;
        inner.nums.push_back(v);
        return pr::sum(v, Sort::range(0, pick(rng, 3)), random_finite_proc(rng, depth - 1, inner));
    }
    default: {
        std::string v = "d" + std::to_string(fresh++ % 4);
        Scope inner = scope;
        if (pick(rng, 2)) {
            inner.bools.push_back(v);
            mpq_class p = random_mass(rng);
            Expr f = ex::if_(ex::var(v), ex::fraction(p), ex::fraction(mpq_class(1 - p)));
            return pr::dist(v, Sort::boolean(), DensitySpec::pmf(f), random_finite_proc(rng, depth - 1, inner));
        }
        inner.nums.push_back(v);
        // Weights w0, w1, w2 over [0..2].
        mpq_class w0 = random_mass(rng);
        mpq_class w1 = (1 - w0) * random_mass(rng);
        mpq_class w2 = 1 - w0 - w1;
        Expr f = ex::if_(ex::binary(Op::Eq, ex::var(v), ex::lit(Value::integer(0))), ex::fraction(w0),
                         ex::if_(ex::binary(Op::Eq, ex::var(v), ex::lit(Value::integer(1))), ex::fraction(w1),
                                 ex::fraction(w2)));
        return pr::dist(v, Sort::range(0, 2), DensitySpec::pmf(f), random_finite_proc(rng, depth - 1, inner));
    }
    }
}

inline std::vector<ActionDecl> finite_actions() {
    return {{"a", {}, {}}, {"b", {}, {}}, {"c", {Sort::integer()}, {}}};
}

/// Random PLTS: up to max_nd nd-states, rational masses, labels from {a, b}.
inline PLTS random_plts(Rng& rng, std::size_t max_nd) {
    PLTS p;
    std::size_t nd = 1 + static_cast<std::size_t>(pick(rng, static_cast<int>(max_nd)));
    std::size_t nprob = 1 + static_cast<std::size_t>(pick(rng, 4));
    for (std::size_t i = 0; i < nprob; ++i) {
        // Split 1 among up to three random states.
        std::map<std::size_t, mpq_class> masses;
        mpq_class left = 1;
        int parts = 1 + pick(rng, 3);
        for (int k = 0; k < parts; ++k) {
            mpq_class m = k + 1 == parts ? left : left * mpq_class(pick(rng, 3), 2);
            if (m > left) m = left;
            masses[static_cast<std::size_t>(pick(rng, static_cast<int>(nd)))] += m;
            left -= m;
        }
        std::vector<IdPMF::Entry> entries;
        for (auto& [s, m] : masses) entries.emplace_back(s, Prob(m));
        p.prob_states.emplace_back(std::move(entries));
    }
    p.nd_states.resize(nd);
    for (std::size_t s = 0; s < nd; ++s) {
        p.nd_states[s].fingerprint = "s" + std::to_string(s);
        int kind = pick(rng, 6);
        if (kind == 0) {
            p.nd_states[s].terminated = true;
            continue;
        }
        int nt = pick(rng, 3);
        for (int k = 0; k < nt; ++k) {
            NdTransition t{pick(rng, 2) ? "a" : "b", static_cast<std::size_t>(pick(rng, static_cast<int>(nprob)))};
            if (std::find(p.nd_states[s].transitions.begin(), p.nd_states[s].transitions.end(), t) ==
                p.nd_states[s].transitions.end())
                p.nd_states[s].transitions.push_back(t);
        }
    }
    p.initial = static_cast<std::size_t>(pick(rng, static_cast<int>(nprob)));
    return p;
}

} // namespace probe::testgen
