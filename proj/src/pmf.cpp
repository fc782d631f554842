#include "probe/pmf.hpp"

#include "probe/error.hpp"

#include <atomic>
#include <cmath>

namespace probe {

namespace {
std::atomic<std::uint64_t> g_constructed{0};
std::atomic<std::uint64_t> g_violations{0};
} // namespace

PmfStats pmf_stats() { return {g_constructed.load(), g_violations.load()}; }

void reset_pmf_stats() {
    g_constructed = 0;
    g_violations = 0;
}

namespace detail {

void check_normalized(const std::vector<const Prob*>& masses) {
    ++g_constructed;
    Prob total = Prob::zero();
    for (const Prob* p : masses) {
        if (p->is_negative() || p->exceeds_one()) {
            ++g_violations;
            throw SemanticError("probability " + p->str() + " outside [0,1]");
        }
        total += *p;
    }
    if (!approx_equal(total, Prob::one())) {
        ++g_violations;
        throw SemanticError("distribution not normalized: masses sum to " + total.str());
    }
}

} // namespace detail

} // namespace probe
