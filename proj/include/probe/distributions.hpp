#pragma once

#include "probe/ast.hpp"
#include "probe/pmf.hpp"
#include "probe/rng.hpp"
#include "probe/value.hpp"

#include <string>
#include <vector>

namespace probe {

using ValuePMF = FinitePMF<Value>;

/// Evaluate a mass expression at every value of a finite sort.
/// Errors: "negative mass" naming the value, "not normalized" with the sum.
ValuePMF pmf_from_expr(const std::string& var, const Sort& sort, const Expr& expr, const Env& env);

/// Evaluated parameters of a continuous density, checked for validity.
struct ContinuousParams {
    DensitySpec::Kind kind;
    double a = 0, b = 0, c = 0, d = 0;
};

/// Throws SemanticError on rate <= 0, sigma <= 0, lo >= hi, or a truncated
/// normal whose acceptance probability is below 1e-6.
ContinuousParams evaluate_params(const DensitySpec& d, const Env& env);

double sample_continuous(const ContinuousParams& p, RngStream& rng);

/// Cumulative inversion over the PMF's canonical order.
Value sample_pmf(const ValuePMF& pmf, RngStream& rng);

/// Cumulative masses as doubles, for repeated sampling of one PMF.
std::vector<double> cumulative(const ValuePMF& pmf);
Value sample_cumulative(const ValuePMF& pmf, const std::vector<double>& cdf, RngStream& rng);

/// Draw the bound variable of `dist var:sort[d]` in env.
Value sample(const DensitySpec& d, const std::string& var, const Sort& sort, const Env& env, RngStream& rng);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace probe
