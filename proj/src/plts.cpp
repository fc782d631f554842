#include "probe/plts.hpp"

#include "probe/error.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace probe {

std::size_t PLTS::transition_count() const {
    std::size_t n = 0;
    for (const auto& s : nd_states) n += s.transitions.size();
    return n;
}

void PLTS::check() const {
    if (initial >= prob_states.size()) throw Error("PLTS: initial state out of range");
    for (const auto& d : prob_states)
        for (const auto& [id, p] : d)
            if (id >= nd_states.size()) throw Error("PLTS: distribution refers to missing state " + std::to_string(id));
    for (std::size_t i = 0; i < nd_states.size(); ++i) {
        const auto& s = nd_states[i];
        if ((s.terminated || s.unexplored) && !s.transitions.empty())
            throw Error("PLTS: terminal state " + std::to_string(i) + " has transitions");
        for (const auto& t : s.transitions)
            if (t.target >= prob_states.size())
                throw Error("PLTS: transition to missing distribution " + std::to_string(t.target));
    }
}

namespace {

class Explorer {
public:
    Explorer(const Semantics& sem, ExploreLimits limits) : sem_(sem), limits_(limits) {
        if (limits.max_nd_states == 0 || limits.max_depth == 0) throw Error("exploration limits must be positive");
    }

    PLTS run() {
        plts_.initial = intern(sem_.initial(), 0);
        for (std::size_t id = 0; id < terms_.size(); ++id) {
            const StateTerm& t = terms_[id];
            if (t->kind == TermNode::Kind::Terminated) {
                plts_.nd_states[id].terminated = true;
                continue;
            }
            if (t->kind == TermNode::Kind::Deadlock) continue;
            if (depth_[id] >= limits_.max_depth || id >= limits_.max_nd_states) {
                plts_.nd_states[id].unexplored = true;
                plts_.truncated = true;
                continue;
            }
            std::vector<NdTransition> out;
            for (const auto& tr : sem_.enabled_transitions(t)) {
                out.push_back({tr.label.str(), intern(tr.target, depth_[id] + 1)});
            }
            plts_.nd_states[id].transitions = std::move(out);
        }
        return std::move(plts_);
    }

private:
    const Semantics& sem_;
    ExploreLimits limits_;
    PLTS plts_;
    std::vector<StateTerm> terms_;
    std::vector<std::size_t> depth_;
    std::unordered_map<std::string, std::size_t> nd_ids_;
    std::unordered_map<std::string, std::size_t> prob_ids_;

    std::size_t nd_state(const StateTerm& t, std::size_t depth) {
        auto [it, inserted] = nd_ids_.try_emplace(t->fingerprint, terms_.size());
        if (inserted) {
            terms_.push_back(t);
            depth_.push_back(depth);
            plts_.nd_states.push_back({t->fingerprint, {}, false, false});
        }
        return it->second;
    }

    std::size_t intern(const StatePMF& d, std::size_t depth) {
        std::vector<IdPMF::Entry> entries;
        std::string key;
        for (const auto& [t, p] : d) {
            std::size_t id = nd_state(t, depth);
            entries.emplace_back(id, p);
        }
        IdPMF pmf(std::move(entries));
        for (const auto& [id, p] : pmf) key += std::to_string(id) + ":" + p.str() + ";";
        auto [it, inserted] = prob_ids_.try_emplace(key, plts_.prob_states.size());
        if (inserted) plts_.prob_states.push_back(std::move(pmf));
        return it->second;
    }
};

void walk(const PLTS& plts, std::size_t pid, Trace& trace, const Prob& mass, std::size_t length,
          TraceDistribution& out) {
    for (const auto& [nd, p] : plts.prob_states[pid]) {
        Prob m = mass * p;
        const NdState& s = plts.nd_states[nd];
        if (trace.size() == length || (s.transitions.empty() && !s.unexplored)) {
            out[trace] += m;
            continue;
        }
        if (s.unexplored) {
            trace.push_back(kUnexploredMarker);
            out[trace] += m;
            trace.pop_back();
            continue;
        }
        if (s.transitions.size() > 1)
            throw SemanticError("nondeterministic system: state " + std::to_string(nd) + " has " +
                                std::to_string(s.transitions.size()) + " transitions");
        const auto& t = s.transitions.front();
        trace.push_back(t.label);
        walk(plts, t.target, trace, m, length, out);
        trace.pop_back();
    }
}

std::string quote(const std::string& label) {
    std::string s = "\"";
    for (char c : label) {
        if (c == '"' || c == '\\') s += '\\';
        s += c;
    }
    return s + "\"";
}

} // namespace

PLTS explore(const Semantics& sem, ExploreLimits limits) { return Explorer(sem, limits).run(); }

PLTS explore(const Spec& spec, ExploreLimits limits, SemanticsOptions options) {
    Semantics sem(spec, options);
    return explore(sem, limits);
}

std::string write_plts(const PLTS& plts) {
    std::ostringstream os;
    os << "pdes (" << plts.initial << ", " << plts.prob_states.size() << ", " << plts.nd_states.size() << ")\n";
    for (std::size_t pid = 0; pid < plts.prob_states.size(); ++pid)
        for (const auto& [nd, p] : plts.prob_states[pid]) os << "P " << pid << " " << nd << " " << p.str() << "\n";
    for (std::size_t nd = 0; nd < plts.nd_states.size(); ++nd)
        for (const auto& t : plts.nd_states[nd].transitions)
            os << "T " << nd << " " << quote(t.label) << " " << t.target << "\n";
    for (std::size_t nd = 0; nd < plts.nd_states.size(); ++nd) {
        if (plts.nd_states[nd].terminated) os << "F " << nd << " terminated\n";
        if (plts.nd_states[nd].unexplored) os << "F " << nd << " unexplored\n";
    }
    return os.str();
}

PLTS read_plts(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> ParseError { return ParseError(msg, {lineno, 1}); };

    PLTS plts;
    std::size_t n_prob = 0, n_nd = 0;
    bool header = false;
    std::vector<std::vector<IdPMF::Entry>> dists;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!header) {
            std::size_t init = 0;
            char close = 0;
            std::istringstream ls(line);
            std::string tag;
            char open = 0, c1 = 0, c2 = 0;
            if (!(ls >> tag >> open >> init >> c1 >> n_prob >> c2 >> n_nd >> close) || tag != "pdes" || open != '(' ||
                c1 != ',' || c2 != ',' || close != ')')
                throw fail("malformed header, expected 'pdes (init, #prob, #nd)'");
            plts.initial = init;
            dists.resize(n_prob);
            plts.nd_states.resize(n_nd);
            for (std::size_t i = 0; i < n_nd; ++i) plts.nd_states[i].fingerprint = "s" + std::to_string(i);
            header = true;
            continue;
        }
        std::istringstream ls(line);
        char kind = 0;
        ls >> kind;
        if (kind == 'P') {
            std::size_t pid = 0, nd = 0;
            std::string prob;
            if (!(ls >> pid >> nd >> prob) || pid >= n_prob || nd >= n_nd) throw fail("malformed P line");
            dists[pid].emplace_back(nd, Prob::parse(prob));
        } else if (kind == 'T') {
            std::size_t nd = 0, pid = 0;
            ls >> nd >> std::ws;
            if (!ls || ls.peek() != '"') throw fail("malformed T line");
            ls.get();
            std::string label;
            char c = 0;
            bool closed = false;
            while (ls.get(c)) {
                if (c == '\\') {
                    if (!ls.get(c)) break;
                } else if (c == '"') {
                    closed = true;
                    break;
                }
                label += c;
            }
            if (!closed || !(ls >> pid) || nd >= n_nd || pid >= n_prob) throw fail("malformed T line");
            plts.nd_states[nd].transitions.push_back({label, pid});
        } else if (kind == 'F') {
            std::size_t nd = 0;
            std::string flag;
            if (!(ls >> nd >> flag) || nd >= n_nd) throw fail("malformed F line");
            if (flag == "terminated")
                plts.nd_states[nd].terminated = true;
            else if (flag == "unexplored")
                plts.nd_states[nd].unexplored = plts.truncated = true;
            else
                throw fail("unknown flag '" + flag + "'");
        } else {
            throw fail("unknown line kind");
        }
    }
    if (!header) throw ParseError("missing pdes header", {1, 1});
    for (auto& d : dists) plts.prob_states.emplace_back(std::move(d));
    plts.check();
    return plts;
}

TraceDistribution bounded_trace_distribution(const PLTS& plts, std::size_t length) {
    TraceDistribution out;
    Trace trace;
    walk(plts, plts.initial, trace, Prob::one(), length, out);
    return out;
}

} // namespace probe
