#include "probe/bisimulation.hpp"
#include "probe/error.hpp"
#include "probe/hotel.hpp"
#include "probe/montecarlo.hpp"
#include "probe/parser.hpp"
#include "probe/plts.hpp"
#include "probe/printer.hpp"
#include "probe/validate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace probe;

namespace {

py::object to_python(const Prob& p) {
    if (!p.is_exact()) return py::float_(p.to_double());
    return py::module_::import("fractions").attr("Fraction")(p.rational().get_str());
}

py::object to_python(const mpq_class& q) { return to_python(Prob(q)); }

/// Fraction, int and str inputs stay exact; floats do not.
Prob from_python(const py::handle& h) {
    if (py::isinstance<py::float_>(h)) return Prob(h.cast<double>());
    std::string text = py::str(h);
    return Prob(mpq_class(text));
}

PLTS load(const std::string& text, std::size_t max_states, std::size_t max_depth,
          std::size_t max_support = SemanticsOptions{}.max_support) {
    if (text.rfind("pdes", 0) == 0) return read_plts(text);
    return explore(parse_spec(text), {max_states, max_depth}, {max_support});
}

py::dict plts_dict(const PLTS& p) {
    py::list prob;
    for (const auto& d : p.prob_states) {
        py::dict entry;
        for (const auto& [nd, m] : d) entry[py::int_(nd)] = to_python(m);
        prob.append(entry);
    }
    py::list nd;
    for (const auto& s : p.nd_states) {
        py::list ts;
        for (const auto& t : s.transitions) ts.append(py::make_tuple(t.label, t.target));
        py::dict st;
        st["transitions"] = ts;
        st["terminated"] = s.terminated;
        st["unexplored"] = s.unexplored;
        nd.append(st);
    }
    py::dict out;
    out["initial"] = p.initial;
    out["prob_states"] = prob;
    out["nd_states"] = nd;
    out["transitions"] = p.transition_count();
    out["truncated"] = p.truncated;
    out["text"] = write_plts(p);
    return out;
}

} // namespace

PYBIND11_MODULE(_probe, m) {
    m.doc() = "Probabilistic process models: parsing, exploration, bisimulation, simulation.";

    // Translators run newest first, so the subclasses are registered last.
    auto& error = py::register_exception<Error>(m, "ProbeError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ProbeParseError", error.ptr());
    py::register_exception<LimitError>(m, "ProbeLimitError", error.ptr());

    m.attr("DEFAULT_SEED") = kDefaultSeed;
    m.attr("HOTEL_LIMIT") = kHotelLimit;

    m.def("pretty_print", [](const std::string& text) { return pretty_print(parse_spec(text)); },
          "Canonical source text of a model.");
    m.def(
        "validate",
        [](const std::string& text) {
            py::list out;
            for (const auto& d : validate(parse_spec(text)))
                out.append(py::make_tuple(d.severity == Diagnostic::Severity::Error ? "error" : "warning", d.message,
                                          d.loc.line, d.loc.column));
            return out;
        },
        "Diagnostics as (severity, message, line, column) tuples.");
    m.def(
        "explore",
        [](const std::string& text, std::size_t max_states, std::size_t max_depth, std::size_t max_support) {
            return plts_dict(load(text, max_states, max_depth, max_support));
        },
        py::arg("text"), py::arg("max_states") = ExploreLimits{}.max_nd_states,
        py::arg("max_depth") = ExploreLimits{}.max_depth, py::arg("max_support") = SemanticsOptions{}.max_support, "PLTS of a model (or of PLTS text) as a dict.");
    m.def(
        "minimize", [](const std::string& text) { return plts_dict(minimize(load(text, 100'000, 1'000)).quotient); },
        py::arg("text"));
    m.def(
        "compare",
        [](const std::string& a, const std::string& b) {
            Verdict v = equivalent(load(a, 100'000, 1'000), load(b, 100'000, 1'000));
            return py::make_tuple(v.equivalent, v.str());
        },
        py::arg("a"), py::arg("b"), "(equivalent, verdict line) for two models or PLTS texts.");
    m.def(
        "trace_distribution",
        [](const std::string& text, std::size_t length, std::size_t max_depth) {
            py::dict out;
            for (const auto& [t, p] : bounded_trace_distribution(load(text, 100'000, max_depth), length))
                out[py::tuple(py::cast(t))] = to_python(p);
            return out;
        },
        py::arg("text"), py::arg("length"), py::arg("max_depth") = 1'000);
    m.def(
        "simulate",
        [](const std::string& text, std::size_t runs, std::size_t steps, std::uint64_t seed,
           const std::vector<std::string>& scheduler, unsigned jobs) {
            Scheduler sched;
            for (const auto& s : scheduler) sched.apply(s);
            SimulationOptions o;
            o.runs = runs;
            o.max_steps = steps;
            o.seed = seed;
            o.jobs = jobs;
            SimulationReport r;
            {
                py::gil_scoped_release release;
                r = simulate(parse_spec(text), sched, o);
            }
            py::dict actions;
            for (const auto& [name, count] : r.counts) {
                Estimate e = estimate_action_probability(r, name);
                py::dict a;
                a["count"] = count;
                a["estimate"] = e.point;
                a["ci_low"] = e.ci_low;
                a["ci_high"] = e.ci_high;
                actions[py::str(name)] = a;
            }
            py::dict out;
            out["runs"] = r.runs;
            out["seed"] = r.seed;
            out["max_steps"] = r.max_steps;
            out["total_steps"] = r.total_steps;
            out["actions"] = actions;
            return out;
        },
        py::arg("text"), py::arg("runs") = 10'000, py::arg("steps") = 100, py::arg("seed") = kDefaultSeed,
        py::arg("scheduler") = std::vector<std::string>{}, py::arg("jobs") = 1);
    m.def("wilson_interval", [](std::uint64_t k, std::uint64_t n) {
        Estimate e = wilson_interval(k, n);
        return py::make_tuple(e.point, e.ci_low, e.ci_high);
    });

    m.def("hotel_light_probability", [](std::uint64_t n) { return to_python(hotel_light_probability(n)); },
          "1 - (1 - 1/n)^n as a Fraction.");
    m.def("hotel_light_probability_float", &hotel_light_probability_float);
    m.def("hotel_spec", [](std::uint64_t n) { return pretty_print(generate_hotel_spec(n)); });
    m.def("bernoulli_spec", [](const py::handle& p) {
        Prob q = from_python(p);
        if (!q.is_exact()) throw Error("Bernoulli parameter must be exact");
        return pretty_print(bernoulli_reference(q.rational()));
    });
    m.def("complement_product", [](const std::vector<py::handle>& ps) {
        std::vector<Prob> probs;
        for (const auto& h : ps) probs.push_back(from_python(h));
        return to_python(complement_product(probs));
    });
    m.def("limit_estimate", [](const std::vector<std::uint64_t>& ns) {
        LimitEstimate e = limit_estimate(ns);
        py::dict out;
        out["estimates"] = e.estimates;
        out["limit"] = e.limit;
        out["slope"] = e.slope;
        out["residual"] = e.residual;
        return out;
    });
}
