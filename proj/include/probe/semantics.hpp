#pragma once

#include "probe/ast.hpp"
#include "probe/state_term.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace probe {

struct SemanticsOptions {
    /// Upper bound on the support of any intermediate product distribution.
    std::size_t max_support = 1'000'000;
};

/// An enabled action together with what follows it, before any of the
/// following probabilistic choices are resolved.
struct Move {
    ActionLabel label;
    std::vector<Closure> continuation;
};

struct Transition {
    ActionLabel label;
    StatePMF target;
};

/// Distribution-valued semantics of the finite fragment.
///
/// A process expression denotes a distribution over resolved states. Choice
/// (`+` and finite `sum`) is the independent product of the summands'
/// distributions, each joint outcome combining the residual states; `dist`
/// mixes; sequential composition threads the right operand into every
/// prefix's continuation.
class Semantics {
public:
    explicit Semantics(const Spec& spec, SemanticsOptions options = {});

    /// The spec after sum narrowing.
    const Spec& spec() const { return spec_; }
    const NodeIndex& index() const { return index_; }
    const SemanticsOptions& options() const { return options_; }

    /// Distribution of the initial process.
    StatePMF initial() const;

    /// `p` must be a subtree of spec() (see index()).
    StatePMF behavioural_distribution(const ProcExpr& p, const Env& env) const;

    /// Distribution of the sequential composition of the closures; Dirac(Terminated) when empty.
    StatePMF continuation_distribution(const std::vector<Closure>& continuation) const;

    std::vector<Move> enabled_moves(const StateTerm& s) const;
    std::vector<Transition> enabled_transitions(const StateTerm& s) const;

    /// Bind a process reference's arguments. Throws on arity or sort violations.
    Env bind_params(const ProcNode& ref, const Env& env) const;

    /// Prefix `cont` to every action of s. Seq tails of Terminated are left to the caller.
    StateTerm append_continuation(const StateTerm& s, const Closure& cont) const;

private:
    Spec spec_;
    NodeIndex index_;
    SemanticsOptions options_;

    StatePMF eval(const ProcExpr& p, const Env& env, std::vector<std::string>& unfolding) const;
    StatePMF product(const StatePMF& a, const StatePMF& b) const;
    StatePMF seq_tail(const StateTerm& s, const Closure& cont) const;
};

} // namespace probe
