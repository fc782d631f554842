#pragma once

#include "probe/ast.hpp"
#include "probe/semantics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace probe {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Resolves what the semantics leaves open during simulation: the choice among
/// enabled transitions, and the value of the bound variable of a sum over an
/// infinite sort.
struct Scheduler {
    enum class Policy { Uniform, Fixed };

    Policy policy = Policy::Uniform;
    /// For Fixed: always take the transition at this position (canonical order).
    std::size_t index = 0;
    /// Sum variable name -> density its value is drawn from. Integral sorts take
    /// the floor of the drawn value.
    std::map<std::string, DensitySpec> resolvers;

    /// Accepts `uniform`, `fixed:<k>` or `resolve:<var>=<density>`, merging
    /// into this scheduler. Throws Error on malformed input.
    void apply(std::string_view option);
};

struct SimulationOptions {
    std::size_t runs = 10'000;
    std::size_t max_steps = 100;
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 1;
    bool keep_traces = false;
};

struct SimulationReport {
    std::size_t runs = 0;
    std::size_t max_steps = 0;
    std::uint64_t seed = 0;
    /// Action name -> number of runs in which it occurred at least once.
    /// Every declared action has an entry.
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_steps = 0;
    /// Per-run labels, when requested.
    std::vector<std::vector<std::string>> traces;
};

/// Run k draws from RngStream(seed, k); the report does not depend on `jobs`.
SimulationReport simulate(const Spec& spec, const Scheduler& scheduler, const SimulationOptions& options);

struct Estimate {
    double point = 0;
    double ci_low = 0;
    double ci_high = 1;
};

/// Wilson score interval; z = 1.959963984540054 gives 95 %.
Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Throws Error for an action the report has no counter for.
Estimate estimate_action_probability(const SimulationReport& report, const std::string& action);

/// JSON document: runs, seed, max_steps, per-action {count, estimate, ci_low, ci_high}.
std::string report_json(const SimulationReport& report);

} // namespace probe
