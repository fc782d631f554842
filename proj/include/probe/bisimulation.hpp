#pragma once

#include "probe/plts.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace probe {

/// Block number per nondeterministic state.
struct Partition {
    std::vector<std::size_t> block_of;
    std::size_t block_count = 0;
};

struct Minimized {
    PLTS quotient;
    Partition partition;
};

/// Coarsest probabilistic strong bisimulation by signature refinement.
/// Terminated, unexplored and ordinary states start in separate blocks.
/// The quotient has one nd-state per block, distributions lifted to blocks and
/// duplicate transitions merged.
Minimized minimize(const PLTS& plts);

/// Mass a distribution assigns to each block.
std::vector<Prob> lift(const IdPMF& dist, const Partition& partition);

/// States of b follow those of a; b's ids are shifted.
struct DisjointUnion {
    PLTS plts;
    std::size_t nd_offset = 0;
    std::size_t prob_offset = 0;
};
DisjointUnion disjoint_union(const PLTS& a, const PLTS& b);

struct Verdict {
    bool equivalent = true;
    std::size_t block = 0;
    Prob mass_a;
    Prob mass_b;
    /// What the states of the block do: `deadlock`, `terminated`, `unexplored`
    /// or the set of enabled labels, e.g. `{head,tail}`.
    std::string witness;

    /// `EQUIVALENT` or `DISTINGUISHED block=<k> massA=<p> massB=<q> witness=<w>`.
    std::string str() const;
};

/// Minimise the disjoint union and compare the initial distributions block by block.
Verdict equivalent(const PLTS& a, const PLTS& b);

} // namespace probe
