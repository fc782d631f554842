#pragma once

#include "probe/ast.hpp"
#include "probe/pmf.hpp"
#include "probe/value.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace probe {

/// Stable preorder numbering of process-expression nodes. State fingerprints
/// refer to nodes by these numbers, so identical specs give identical ids.
class NodeIndex {
public:
    void add_tree(const ProcExpr& root);
    bool contains(const ProcNode* n) const { return ids_.count(n) > 0; }
    std::size_t id(const ProcNode* n) const;

private:
    std::map<const ProcNode*, std::size_t> ids_;
};

/// A process expression paired with the values of its free variables.
struct Closure {
    ProcExpr expr;
    Env env;
};

/// Restricts env to the free variables of expr.
Closure make_closure(ProcExpr expr, const Env& env);

/// An action with evaluated data, e.g. read(3).
struct ActionLabel {
    std::string name;
    std::vector<Value> data;

    std::string str() const;
};

struct TermNode;
using StateTerm = std::shared_ptr<const TermNode>;

/// A resolved state: every probabilistic choice up to the next action has
/// been made. Sequential tails are folded into the continuation list of each
/// prefix, so `(a + b).q` is Combine(Prefix(a, [q]), Prefix(b, [q])).
struct TermNode {
    enum class Kind { Deadlock, Terminated, Prefix, Combine };

    Kind kind = Kind::Deadlock;
    ActionLabel label;
    /// Behaviour after the action: the sequential composition of these closures.
    /// Empty means successful termination.
    std::vector<Closure> continuation;
    /// Flattened, sorted by fingerprint, no Deadlock members, at least two.
    std::vector<StateTerm> members;
    std::string fingerprint;
};

namespace term {

StateTerm deadlock();
StateTerm terminated();
StateTerm prefix(ActionLabel label, std::vector<Closure> continuation, const NodeIndex& index);
/// Flattens nested combines, drops deadlocks, sorts; Combine([]) = Deadlock, Combine([x]) = x.
StateTerm combine(std::vector<StateTerm> members);

} // namespace term

struct TermLess {
    bool operator()(const StateTerm& a, const StateTerm& b) const { return a->fingerprint < b->fingerprint; }
};

using StatePMF = FinitePMF<StateTerm, TermLess>;
using StatePmfBuilder = PmfBuilder<StateTerm, TermLess>;

} // namespace probe
