#include "probe/hotel.hpp"

#include "probe/bisimulation.hpp"
#include "probe/error.hpp"
#include "probe/parser.hpp"

#include <cmath>
#include <numeric>

namespace probe {

mpq_class hotel_light_probability(std::uint64_t n) {
    if (n == 0) throw Error("the hotel needs at least one group");
    mpz_class base(std::to_string(n)), miss(std::to_string(n - 1)), num, den;
    const unsigned long k = static_cast<unsigned long>(n);
    mpz_pow_ui(num.get_mpz_t(), miss.get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), k);
    mpq_class stay_off(num, den);
    stay_off.canonicalize();
    return 1 - stay_off;
}

double hotel_light_probability_float(std::uint64_t n) {
    if (n == 0) throw Error("the hotel needs at least one group");
    const double nd = static_cast<double>(n);
    return -std::expm1(nd * std::log1p(-1.0 / nd));
}

Spec generate_hotel_spec(std::uint64_t n) {
    if (n == 0) throw Error("the hotel needs at least one group");
    const std::string ns = std::to_string(n);
    return parse_spec("act a;\ninit sum i:[1.." + ns + "]. dist j:[1.." + ns + "][1/" + ns + "]. (i = j) -> a;\n");
}

Spec bernoulli_reference(const mpq_class& p) {
    if (p < 0 || p > 1) throw Error("Bernoulli parameter " + p.get_str() + " outside [0,1]");
    const std::string ps = p.get_str();
    return parse_spec("act a;\ninit dist b:Bool[if(b, " + ps + ", 1 - " + ps + ")]. (b) -> a;\n");
}

Prob complement_product(const std::vector<Prob>& probs) {
    bool exact = true;
    for (const auto& p : probs) {
        if (p.is_negative() || p.exceeds_one() || (p.is_exact() && (p.rational() < 0 || p.rational() > 1)))
            throw Error("probability " + p.str() + " outside [0,1]");
        exact = exact && p.is_exact();
    }
    if (exact) {
        mpq_class stay(1);
        for (const auto& p : probs) stay *= 1 - p.rational();
        return Prob(mpq_class(1 - stay));
    }
    double log_stay = 0;
    for (const auto& p : probs) log_stay += std::log1p(-std::min(1.0, std::max(0.0, p.to_double())));
    return Prob(-std::expm1(log_stay));
}

LimitEstimate limit_estimate(const std::vector<std::uint64_t>& ns) {
    if (ns.size() < 3) throw Error("limit estimate needs at least three points");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] == 0) throw Error("group counts must be positive");
        if (i > 0 && ns[i] <= ns[i - 1]) throw Error("ns must be strictly ascending");
    }
    LimitEstimate out;
    for (auto n : ns) out.estimates.push_back(hotel_light_probability_float(n));

    // Fit e = L + c x with x = 1/n on the last three points.
    const std::size_t first = ns.size() - 3;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = first; i < ns.size(); ++i) {
        double x = 1.0 / static_cast<double>(ns[i]), y = out.estimates[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = 3.0;
    const double det = m * sxx - sx * sx;
    out.slope = (m * sxy - sx * sy) / det;
    out.limit = (sy - out.slope * sx) / m;
    double ss = 0;
    for (std::size_t i = first; i < ns.size(); ++i) {
        double r = out.estimates[i] - (out.limit + out.slope / static_cast<double>(ns[i]));
        ss += r * r;
    }
    out.residual = std::sqrt(ss / m);
    return out;
}

Prob enabled_mass(const PLTS& plts, const std::string& action) {
    Prob total = Prob::zero();
    for (const auto& [nd, p] : plts.prob_states[plts.initial]) {
        for (const auto& t : plts.nd_states[nd].transitions) {
            if (t.label == action || t.label.rfind(action + "(", 0) == 0) {
                total += p;
                break;
            }
        }
    }
    return total;
}

HotelApproximation approximate_hotel(std::uint64_t n, const HotelOptions& options) {
    HotelApproximation h;
    h.n = n;
    h.p_float = hotel_light_probability_float(n);
    if (n <= kHotelExactMax) h.p_exact = hotel_light_probability(n);
    if (options.semantic || options.runs > 0) {
        Spec spec = generate_hotel_spec(n);
        if (options.semantic) h.p_semantic = enabled_mass(minimize(explore(spec)).quotient, "a");
        if (options.runs > 0) {
            SimulationOptions sim;
            sim.runs = options.runs;
            sim.max_steps = 1;
            sim.seed = options.seed;
            sim.jobs = options.jobs;
            h.p_empirical = estimate_action_probability(simulate(spec, Scheduler{}, sim), "a");
        }
    }
    return h;
}

} // namespace probe
