#pragma once

#include "probe/ast.hpp"
#include "probe/pmf.hpp"
#include "probe/semantics.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace probe {

using IdPMF = FinitePMF<std::size_t>;

struct NdTransition {
    std::string label;
    std::size_t target = 0; ///< probabilistic state id

    friend bool operator==(const NdTransition&, const NdTransition&) = default;
};

struct NdState {
    std::string fingerprint;
    std::vector<NdTransition> transitions;
    bool terminated = false;
    /// Left unexpanded by exploration limits; its behaviour is unknown.
    bool unexplored = false;
};

/// Alternating probabilistic LTS: probabilistic states are distributions over
/// nondeterministic states; nondeterministic states carry labelled
/// transitions into probabilistic states.
struct PLTS {
    std::vector<IdPMF> prob_states;
    std::vector<NdState> nd_states;
    std::size_t initial = 0;
    /// Some state was left unexplored.
    bool truncated = false;

    std::size_t transition_count() const;
    /// Throws Error if an id is dangling or a terminal state has transitions.
    void check() const;
};

struct ExploreLimits {
    std::size_t max_nd_states = 100'000;
    std::size_t max_depth = 1'000;
};

/// Breadth-first construction from the initial distribution. States are
/// deduplicated by fingerprint, probabilistic states by content. States beyond
/// the limits are kept but marked unexplored.
PLTS explore(const Semantics& sem, ExploreLimits limits = {});
PLTS explore(const Spec& spec, ExploreLimits limits = {}, SemanticsOptions options = {});

/// Text export:
///   pdes (<initial>, <#prob states>, <#nd states>)
///   P <pid> <ndid> <prob>
///   T <ndid> "<label>" <pid>
///   F <ndid> terminated|unexplored
std::string write_plts(const PLTS& plts);
PLTS read_plts(std::string_view text);

/// Trace marker appended where a path runs into an unexplored state.
inline constexpr const char* kUnexploredMarker = "?unexplored";

using Trace = std::vector<std::string>;
using TraceDistribution = std::map<Trace, Prob>;

/// Probability of every trace that has length L or ends early in a state
/// without transitions. Requires at most one transition per state; throws
/// SemanticError("nondeterministic system ...") otherwise.
TraceDistribution bounded_trace_distribution(const PLTS& plts, std::size_t length);

} // namespace probe
