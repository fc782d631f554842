#include "probe/state_term.hpp"

#include "probe/error.hpp"

#include <algorithm>

namespace probe {

void NodeIndex::add_tree(const ProcExpr& root) {
    if (!root || contains(root.get())) return;
    ids_.emplace(root.get(), ids_.size());
    for (const auto& c : root->children) add_tree(c);
}

std::size_t NodeIndex::id(const ProcNode* n) const {
    auto it = ids_.find(n);
    if (it == ids_.end()) throw Error("internal: process node not indexed");
    return it->second;
}

Closure make_closure(ProcExpr expr, const Env& env) {
    Env restricted;
    for (const auto& v : expr->free_vars) restricted.emplace(v, lookup(env, v));
    return {std::move(expr), std::move(restricted)};
}

std::string ActionLabel::str() const {
    if (data.empty()) return name;
    std::string s = name + "(";
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (i) s += ",";
        s += data[i].str();
    }
    return s + ")";
}

namespace term {

StateTerm deadlock() {
    static const StateTerm d = [] {
        auto n = std::make_shared<TermNode>();
        n->kind = TermNode::Kind::Deadlock;
        n->fingerprint = "D";
        return n;
    }();
    return d;
}

StateTerm terminated() {
    static const StateTerm t = [] {
        auto n = std::make_shared<TermNode>();
        n->kind = TermNode::Kind::Terminated;
        n->fingerprint = "T";
        return n;
    }();
    return t;
}

StateTerm prefix(ActionLabel label, std::vector<Closure> continuation, const NodeIndex& index) {
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Prefix;
    std::string fp = "P(" + label.str() + ";";
    for (const auto& c : continuation) fp += "#" + std::to_string(index.id(c.expr.get())) + env_str(c.env);
    fp += ")";
    n->fingerprint = std::move(fp);
    n->label = std::move(label);
    n->continuation = std::move(continuation);
    return n;
}

StateTerm combine(std::vector<StateTerm> members) {
    std::vector<StateTerm> flat;
    for (auto& m : members) {
        if (m->kind == TermNode::Kind::Combine)
            flat.insert(flat.end(), m->members.begin(), m->members.end());
        else if (m->kind != TermNode::Kind::Deadlock)
            flat.push_back(std::move(m));
    }
    if (flat.empty()) return deadlock();
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end(), TermLess{});
    auto n = std::make_shared<TermNode>();
    n->kind = TermNode::Kind::Combine;
    std::string fp = "C[";
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (i) fp += ",";
        fp += flat[i]->fingerprint;
    }
    fp += "]";
    n->fingerprint = std::move(fp);
    n->members = std::move(flat);
    return n;
}

} // namespace term

} // namespace probe
