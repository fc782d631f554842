#pragma once

#include "probe/ast.hpp"
#include "probe/montecarlo.hpp"
#include "probe/plts.hpp"
#include "probe/prob.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace probe {

/// 1 - 1/e.
inline constexpr double kHotelLimit = 0.63212055882855767840;

/// Largest group count for which tables report the exact fraction.
inline constexpr std::uint64_t kHotelExactMax = 64;

/// Light-on probability of the n-group approximation, 1 - (1 - 1/n)^n, exactly.
/// Throws Error for n = 0. Denominators are n^n; keep n moderate.
mpq_class hotel_light_probability(std::uint64_t n);

/// Same quantity in floating point, computed as -expm1(n * log1p(-1/n)).
double hotel_light_probability_float(std::uint64_t n);

/// `act a; init sum i:[1..n]. dist j:[1..n][1/n]. (i = j) -> a;`
Spec generate_hotel_spec(std::uint64_t n);

/// `act a; init dist b:Bool[if(b, p, 1 - p)]. (b) -> a;` Throws Error unless 0 <= p <= 1.
Spec bernoulli_reference(const mpq_class& p);

/// 1 - prod(1 - p_i). Exact when every p_i is exact; otherwise via a sum of log1p.
/// Throws Error if some p_i lies outside [0,1].
Prob complement_product(const std::vector<Prob>& probs);

struct LimitEstimate {
    std::vector<double> estimates;
    double limit = 0;
    double slope = 0;
    /// Root mean square of the fit residuals over the fitted points.
    double residual = 0;
};

/// Least-squares fit of e_n = L + c/n through the last three points.
/// Throws Error for fewer than three points, non-ascending input or n = 0.
LimitEstimate limit_estimate(const std::vector<std::uint64_t>& ns);

/// Initial mass of the states that enable `action` after bisimulation
/// minimisation (equivalently, before it: minimisation preserves the mass).
Prob enabled_mass(const PLTS& plts, const std::string& action);

struct HotelApproximation {
    std::uint64_t n = 0;
    std::optional<mpq_class> p_exact;
    double p_float = 0;
    std::optional<Prob> p_semantic;
    std::optional<Estimate> p_empirical;
};

struct HotelOptions {
    /// Also explore and minimise the generated spec (only sensible for small n).
    bool semantic = false;
    /// Simulated runs for p_empirical; 0 skips simulation.
    std::size_t runs = 0;
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 1;
};

/// Row for n; p_exact only for n <= kHotelExactMax.
HotelApproximation approximate_hotel(std::uint64_t n, const HotelOptions& options = {});

} // namespace probe
