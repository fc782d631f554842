#include "probe/distributions.hpp"

#include "probe/error.hpp"
#include "probe/eval.hpp"

#include <cmath>
#include <numbers>

namespace probe {

ValuePMF pmf_from_expr(const std::string& var, const Sort& sort, const Expr& expr, const Env& env) {
    if (!sort.is_finite()) throw SemanticError("probability mass over infinite sort " + sort.str());
    std::vector<ValuePMF::Entry> entries;
    Env local = env;
    Prob total = Prob::zero();
    for (const Value& v : enumerate_sort(sort)) {
        local[var] = v;
        Value m = eval_expr(expr, local);
        if (!m.is_numeric()) throw SemanticError("probability mass must be a number, got " + m.str());
        Prob p = m.is_exact_number() ? Prob(m.as_rational()) : Prob(m.as_double());
        if (p.is_negative()) throw SemanticError("negative mass " + p.str() + " at " + var + "=" + v.str());
        total += p;
        entries.emplace_back(v, p);
    }
    if (!approx_equal(total, Prob::one()))
        throw SemanticError("distribution over " + var + ":" + sort.str() + " not normalized: masses sum to " +
                            total.str());
    return ValuePMF(std::move(entries));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

ContinuousParams evaluate_params(const DensitySpec& d, const Env& env) {
    if (!d.is_continuous()) throw SemanticError("not a continuous density");
    std::vector<double> v;
    for (const auto& p : d.params) v.push_back(eval_expr(p, env).as_double());
    ContinuousParams out{d.kind};
    switch (d.kind) {
    case DensitySpec::Kind::Uniform:
        if (!(v[0] < v[1]) || !std::isfinite(v[0]) || !std::isfinite(v[1]))
            throw SemanticError("invalid Uniform parameters: need finite lo < hi");
        out.a = v[0];
        out.b = v[1];
        break;
    case DensitySpec::Kind::Exponential:
        if (!(v[0] > 0) || !std::isfinite(v[0])) throw SemanticError("invalid Exp parameter: need rate > 0");
        out.a = v[0];
        break;
    case DensitySpec::Kind::NormalTrunc: {
        if (!(v[1] > 0)) throw SemanticError("invalid NormalTrunc parameters: need sigma > 0");
        if (!(v[2] < v[3])) throw SemanticError("invalid NormalTrunc parameters: need lo < hi");
        double accept = normal_cdf((v[3] - v[0]) / v[1]) - normal_cdf((v[2] - v[0]) / v[1]);
        if (accept < 1e-6) throw SemanticError("NormalTrunc truncation keeps too little mass for rejection sampling");
        out.a = v[0];
        out.b = v[1];
        out.c = v[2];
        out.d = v[3];
        break;
    }
    default: break;
    }
    return out;
}

double sample_continuous(const ContinuousParams& p, RngStream& rng) {
    switch (p.kind) {
    case DensitySpec::Kind::Uniform: return p.a + (p.b - p.a) * rng.next_unit();
    case DensitySpec::Kind::Exponential: return -std::log(rng.next_unit()) / p.a;
    case DensitySpec::Kind::NormalTrunc:
        while (true) {
            // Box-Muller, one value per pair of draws.
            double r = std::sqrt(-2.0 * std::log(rng.next_unit()));
            double x = p.a + p.b * r * std::cos(2.0 * std::numbers::pi * rng.next_unit());
            if (x >= p.c && x <= p.d) return x;
        }
    default: throw SemanticError("not a continuous density");
    }
}

std::vector<double> cumulative(const ValuePMF& pmf) {
    std::vector<double> cdf;
    cdf.reserve(pmf.size());
    double acc = 0;
    for (const auto& [v, p] : pmf) cdf.push_back(acc += p.to_double());
    return cdf;
}

Value sample_cumulative(const ValuePMF& pmf, const std::vector<double>& cdf, RngStream& rng) {
    double u = rng.next_unit() * cdf.back();
    for (std::size_t i = 0; i < cdf.size(); ++i)
        if (u < cdf[i]) return pmf.entries()[i].first;
    return pmf.entries().back().first;
}

Value sample_pmf(const ValuePMF& pmf, RngStream& rng) { return sample_cumulative(pmf, cumulative(pmf), rng); }

Value sample(const DensitySpec& d, const std::string& var, const Sort& sort, const Env& env, RngStream& rng) {
    if (d.kind == DensitySpec::Kind::Pmf) return sample_pmf(pmf_from_expr(var, sort, d.params[0], env), rng);
    return Value::real(sample_continuous(evaluate_params(d, env), rng));
}

} // namespace probe
