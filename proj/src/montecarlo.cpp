#include "probe/montecarlo.hpp"

#include "probe/distributions.hpp"
#include "probe/error.hpp"
#include "probe/eval.hpp"
#include "probe/parser.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace probe {

void Scheduler::apply(std::string_view option) {
    if (option == "uniform") {
        policy = Policy::Uniform;
        return;
    }
    if (option.substr(0, 6) == "fixed:") {
        auto digits = option.substr(6);
        std::size_t k = 0;
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size())
            throw Error("invalid scheduler '" + std::string(option) + "': expected fixed:<index>");
        policy = Policy::Fixed;
        index = k;
        return;
    }
    if (option.substr(0, 8) == "resolve:") {
        auto rest = option.substr(8);
        auto eq = rest.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw Error("invalid scheduler '" + std::string(option) + "': expected resolve:<var>=<density>");
        std::string var(rest.substr(0, eq));
        try {
            resolvers.insert_or_assign(var, parse_density(rest.substr(eq + 1)));
        } catch (const ParseError& e) {
            throw Error("invalid density in scheduler '" + std::string(option) + "': " + e.what());
        }
        return;
    }
    throw Error("invalid scheduler '" + std::string(option) + "': expected uniform, fixed:<k> or resolve:<var>=<density>");
}

namespace {

using K = ProcNode::Kind;

struct CachedPmf {
    ValuePMF pmf;
    std::vector<double> cdf;
};

/// Draws resolved states instead of enumerating distributions. One per worker.
class Sampler {
public:
    Sampler(const Semantics& sem, const Scheduler& sched) : sem_(sem), sched_(sched) {}

    StateTerm sample(const ProcExpr& p, const Env& env, RngStream& rng) {
        std::vector<std::string> unfolding;
        return draw(p, env, rng, unfolding);
    }

    StateTerm sample_continuation(const std::vector<Closure>& cont, RngStream& rng) {
        if (cont.empty()) return term::terminated();
        StateTerm s = sample(cont.front().expr, cont.front().env, rng);
        for (std::size_t i = 1; i < cont.size(); ++i) s = tail(s, cont[i], rng);
        return s;
    }

private:
    const Semantics& sem_;
    const Scheduler& sched_;
    std::unordered_map<std::string, CachedPmf> cache_;

    StateTerm tail(const StateTerm& s, const Closure& cont, RngStream& rng) {
        switch (s->kind) {
        case TermNode::Kind::Terminated: return sample(cont.expr, cont.env, rng);
        case TermNode::Kind::Combine: {
            std::vector<StateTerm> ms;
            for (const auto& m : s->members) ms.push_back(tail(m, cont, rng));
            return term::combine(std::move(ms));
        }
        default: return sem_.append_continuation(s, cont);
        }
    }

    const CachedPmf& pmf_for(const ProcNode& p, const Env& env) {
        std::string key = std::to_string(sem_.index().id(&p));
        for (const auto& v : p.density.params[0]->free_vars) {
            if (v == p.var) continue;
            key += ";" + v + "=" + lookup(env, v).str();
        }
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            ValuePMF pmf = pmf_from_expr(p.var, p.sort, p.density.params[0], env);
            auto cdf = cumulative(pmf);
            it = cache_.emplace(key, CachedPmf{std::move(pmf), std::move(cdf)}).first;
        }
        return it->second;
    }

    StateTerm draw(const ProcExpr& p, const Env& env, RngStream& rng, std::vector<std::string>& unfolding) {
        switch (p->kind) {
        case K::Delta: return term::deadlock();
        case K::Terminated: return term::terminated();
        case K::Action: {
            ActionLabel label{p->name, {}};
            for (const auto& a : p->args) label.data.push_back(eval_expr(a, env));
            return term::prefix(std::move(label), {}, sem_.index());
        }
        case K::Cond: return draw(p->children[eval_expr(p->args[0], env).as_bool() ? 0 : 1], env, rng, unfolding);
        case K::Alt: {
            StateTerm l = draw(p->children[0], env, rng, unfolding);
            StateTerm r = draw(p->children[1], env, rng, unfolding);
            return term::combine({l, r});
        }
        case K::Sum: {
            Env local = env;
            if (p->sort.is_finite()) {
                std::vector<StateTerm> parts;
                for (const Value& v : enumerate_sort(p->sort)) {
                    local[p->var] = v;
                    parts.push_back(draw(p->children[0], local, rng, unfolding));
                }
                return term::combine(std::move(parts));
            }
            auto it = sched_.resolvers.find(p->var);
            if (it == sched_.resolvers.end())
                throw SemanticError("unresolved sum over " + p->sort.str() + ": no resolver for variable '" +
                                    p->var + "' (use --scheduler resolve:" + p->var + "=<density>)");
            Value v;
            if (it->second.kind == DensitySpec::Kind::Pmf)
                throw SemanticError("resolver for '" + p->var + "' must be a continuous density");
            double x = sample_continuous(evaluate_params(it->second, env), rng);
            if (p->sort.kind == Sort::Kind::Real) {
                v = Value::real(x);
            } else {
                v = Value::integer(mpz_class(std::floor(x)));
                if (!p->sort.contains(v))
                    throw SemanticError("resolved value " + v.str() + " for '" + p->var + "' is not in " + p->sort.str());
            }
            local[p->var] = v;
            return draw(p->children[0], local, rng, unfolding);
        }
        case K::Dist: {
            Env local = env;
            if (p->density.kind == DensitySpec::Kind::Pmf) {
                const CachedPmf& c = pmf_for(*p, env);
                local[p->var] = sample_cumulative(c.pmf, c.cdf, rng);
            } else {
                local[p->var] = Value::real(sample_continuous(evaluate_params(p->density, env), rng));
            }
            return draw(p->children[0], local, rng, unfolding);
        }
        case K::Seq: {
            StateTerm l = draw(p->children[0], env, rng, unfolding);
            return tail(l, make_closure(p->children[1], env), rng);
        }
        case K::ProcRef: {
            if (std::find(unfolding.begin(), unfolding.end(), p->name) != unfolding.end())
                throw SemanticError("unguarded recursion at " + p->name);
            Env bound = sem_.bind_params(*p, env);
            unfolding.push_back(p->name);
            StateTerm s = draw(sem_.spec().find_equation(p->name)->body, bound, rng, unfolding);
            unfolding.pop_back();
            return s;
        }
        }
        throw Error("internal: bad process node");
    }
};

struct RunResult {
    std::vector<std::string> trace;
    std::vector<std::string> occurred;
    std::size_t steps = 0;
};

RunResult run_once(const Semantics& sem, const Scheduler& sched, Sampler& sampler, std::size_t max_steps,
                   RngStream& rng) {
    RunResult r;
    StateTerm state = sampler.sample(sem.spec().init, {}, rng);
    while (r.steps < max_steps) {
        std::vector<Move> moves = sem.enabled_moves(state);
        if (moves.empty()) break;
        std::size_t pick = 0;
        if (sched.policy == Scheduler::Policy::Fixed) {
            if (sched.index >= moves.size())
                throw Error("invalid scheduler: fixed index " + std::to_string(sched.index) + " but only " +
                            std::to_string(moves.size()) + " transition(s) enabled");
            pick = sched.index;
        } else if (moves.size() > 1) {
            pick = std::min(moves.size() - 1, static_cast<std::size_t>(rng.next_unit() * moves.size()));
        }
        const Move& m = moves[pick];
        r.trace.push_back(m.label.str());
        r.occurred.push_back(m.label.name);
        state = sampler.sample_continuation(m.continuation, rng);
        ++r.steps;
    }
    std::sort(r.occurred.begin(), r.occurred.end());
    r.occurred.erase(std::unique(r.occurred.begin(), r.occurred.end()), r.occurred.end());
    return r;
}

} // namespace

SimulationReport simulate(const Spec& spec, const Scheduler& scheduler, const SimulationOptions& options) {
    Semantics sem(spec);
    for (const auto& [var, d] : scheduler.resolvers) {
        if (d.kind == DensitySpec::Kind::Pmf) throw Error("resolver for '" + var + "' must be a continuous density");
    }
    SimulationReport report;
    report.runs = options.runs;
    report.max_steps = options.max_steps;
    report.seed = options.seed;
    for (const auto& a : sem.spec().actions) report.counts[a.name] = 0;
    if (options.keep_traces) report.traces.resize(options.runs);

    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(1, options.runs))));
    std::vector<std::map<std::string, std::uint64_t>> counts(jobs);
    std::vector<std::uint64_t> steps(jobs, 0);
    std::exception_ptr failure;
    std::size_t failed_run = options.runs;
    std::mutex failure_mutex;

    auto worker = [&](unsigned w) {
        Sampler sampler(sem, scheduler);
        for (std::size_t k = w; k < options.runs; k += jobs) {
            try {
                RngStream rng(options.seed, k);
                RunResult r = run_once(sem, scheduler, sampler, options.max_steps, rng);
                for (const auto& a : r.occurred) ++counts[w][a];
                steps[w] += r.steps;
                if (options.keep_traces) report.traces[k] = std::move(r.trace);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                // Report the failure of the lowest run index, independent of scheduling.
                if (k < failed_run) {
                    failed_run = k;
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (unsigned w = 0; w < jobs; ++w) {
        for (const auto& [a, c] : counts[w]) report.counts[a] += c;
        report.total_steps += steps[w];
    }
    return report;
}

Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw Error("Wilson interval needs at least one trial");
    if (successes > trials) throw Error("more successes than trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Estimate e{p, std::max(0.0, centre - half), std::min(1.0, centre + half)};
    if (successes == 0) e.ci_low = 0.0;
    if (successes == trials) e.ci_high = 1.0;
    return e;
}

Estimate estimate_action_probability(const SimulationReport& report, const std::string& action) {
    auto it = report.counts.find(action);
    if (it == report.counts.end()) throw Error("unknown action '" + action + "'");
    return wilson_interval(it->second, report.runs);
}

std::string report_json(const SimulationReport& report) {
    nlohmann::ordered_json j;
    j["runs"] = report.runs;
    j["seed"] = report.seed;
    j["max_steps"] = report.max_steps;
    j["total_steps"] = report.total_steps;
    nlohmann::ordered_json actions = nlohmann::ordered_json::object();
    for (const auto& [name, count] : report.counts) {
        Estimate e = report.runs ? estimate_action_probability(report, name) : Estimate{};
        actions[name] = {{"count", count}, {"estimate", e.point}, {"ci_low", e.ci_low}, {"ci_high", e.ci_high}};
    }
    j["actions"] = std::move(actions);
    return j.dump(2);
}

} // namespace probe
