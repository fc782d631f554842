#include "probe/bisimulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace probe {

namespace {

// Set per minimisation: exact keys only when every mass in the PLTS is exact,
// so 1/2 and 0.5 land in the same block.
thread_local bool exact_keys = true;

std::string mass_key(const Prob& p) {
    if (exact_keys && p.is_exact()) return p.str();
    // Float masses are compared on a 1e-9 grid.
    return "~" + std::to_string(std::llround(p.to_double() / kProbTolerance));
}

std::string lifted_key(const IdPMF& dist, const std::vector<std::size_t>& block_of) {
    std::map<std::size_t, Prob> acc;
    for (const auto& [nd, p] : dist) acc[block_of[nd]] += p;
    std::string key;
    for (const auto& [b, p] : acc) key += std::to_string(b) + ":" + mass_key(p) + ",";
    return key;
}

int status(const NdState& s) { return s.unexplored ? 2 : (s.terminated ? 1 : 0); }

} // namespace

std::vector<Prob> lift(const IdPMF& dist, const Partition& partition) {
    std::vector<Prob> out(partition.block_count, Prob::zero());
    for (const auto& [nd, p] : dist) out[partition.block_of[nd]] += p;
    return out;
}

Minimized minimize(const PLTS& plts) {
    const std::size_t n = plts.nd_states.size();
    exact_keys = std::all_of(plts.prob_states.begin(), plts.prob_states.end(),
                             [](const IdPMF& d) { return d.all_exact(); });
    Partition part;
    part.block_of.resize(n);
    {
        std::map<int, std::size_t> seed;
        for (std::size_t s = 0; s < n; ++s) {
            auto [it, ins] = seed.try_emplace(status(plts.nd_states[s]), seed.size());
            part.block_of[s] = it->second;
        }
        part.block_count = seed.size();
    }

    while (true) {
        std::vector<std::string> lifted(plts.prob_states.size());
        for (std::size_t pid = 0; pid < plts.prob_states.size(); ++pid)
            lifted[pid] = lifted_key(plts.prob_states[pid], part.block_of);

        std::unordered_map<std::string, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::set<std::string> moves;
            for (const auto& t : plts.nd_states[s].transitions) moves.insert(t.label + "\x1f" + lifted[t.target]);
            std::string sig = std::to_string(part.block_of[s]) + "|";
            for (const auto& m : moves) sig += m + "\x1e";
            auto [it, ins] = ids.try_emplace(sig, ids.size());
            next[s] = it->second;
        }
        bool stable = ids.size() == part.block_count;
        part.block_of = std::move(next);
        part.block_count = ids.size();
        if (stable) break;
    }

    // Quotient.
    PLTS q;
    q.truncated = plts.truncated;
    q.nd_states.resize(part.block_count);
    std::vector<bool> done(part.block_count, false);
    std::unordered_map<std::string, std::size_t> prob_ids;
    auto intern = [&](const IdPMF& dist) {
        std::vector<Prob> masses = lift(dist, part);
        std::vector<IdPMF::Entry> entries;
        std::string key;
        for (std::size_t b = 0; b < masses.size(); ++b) {
            if (masses[b].is_zero()) continue;
            entries.emplace_back(b, masses[b]);
            key += std::to_string(b) + ":" + mass_key(masses[b]) + ",";
        }
        auto [it, ins] = prob_ids.try_emplace(key, q.prob_states.size());
        if (ins) q.prob_states.emplace_back(std::move(entries));
        return it->second;
    };
    q.initial = intern(plts.prob_states[plts.initial]);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t b = part.block_of[s];
        if (done[b]) continue;
        done[b] = true;
        NdState& out = q.nd_states[b];
        out.fingerprint = "B" + std::to_string(b);
        out.terminated = plts.nd_states[s].terminated;
        out.unexplored = plts.nd_states[s].unexplored;
        for (const auto& t : plts.nd_states[s].transitions) {
            NdTransition nt{t.label, intern(plts.prob_states[t.target])};
            if (std::find(out.transitions.begin(), out.transitions.end(), nt) == out.transitions.end())
                out.transitions.push_back(nt);
        }
    }
    return {std::move(q), std::move(part)};
}

DisjointUnion disjoint_union(const PLTS& a, const PLTS& b) {
    DisjointUnion u;
    u.plts = a;
    u.nd_offset = a.nd_states.size();
    u.prob_offset = a.prob_states.size();
    u.plts.truncated = a.truncated || b.truncated;
    for (const auto& d : b.prob_states) {
        std::vector<IdPMF::Entry> entries;
        for (const auto& [nd, p] : d) entries.emplace_back(nd + u.nd_offset, p);
        u.plts.prob_states.emplace_back(std::move(entries));
    }
    for (const auto& s : b.nd_states) {
        NdState c = s;
        c.fingerprint = "R" + s.fingerprint;
        for (auto& t : c.transitions) t.target += u.prob_offset;
        u.plts.nd_states.push_back(std::move(c));
    }
    return u;
}

namespace {

std::string describe(const NdState& s) {
    if (s.terminated) return "terminated";
    if (s.unexplored) return "unexplored";
    if (s.transitions.empty()) return "deadlock";
    std::vector<std::string> labels;
    for (const auto& t : s.transitions) labels.push_back(t.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
    return out + "}";
}

} // namespace

Verdict equivalent(const PLTS& a, const PLTS& b) {
    DisjointUnion u = disjoint_union(a, b);
    Minimized m = minimize(u.plts);
    std::vector<Prob> ma = lift(u.plts.prob_states[a.initial], m.partition);
    std::vector<Prob> mb = lift(u.plts.prob_states[b.initial + u.prob_offset], m.partition);
    for (std::size_t blk = 0; blk < ma.size(); ++blk) {
        if (!approx_equal(ma[blk], mb[blk])) return {false, blk, ma[blk], mb[blk], describe(m.quotient.nd_states[blk])};
    }
    return {};
}

std::string Verdict::str() const {
    if (equivalent) return "EQUIVALENT";
    return "DISTINGUISHED block=" + std::to_string(block) + " massA=" + mass_a.str() + " massB=" + mass_b.str() +
           " witness=" + witness;
}

} // namespace probe
