#include "probe/bisimulation.hpp"
#include "probe/error.hpp"
#include "probe/hotel.hpp"
#include "probe/montecarlo.hpp"
#include "probe/parser.hpp"
#include "probe/plts.hpp"
#include "probe/printer.hpp"
#include "probe/validate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace probe;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitLimit = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string plural(std::size_t n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

/// Thrown after diagnostics have already been printed.
struct Reported {
    int code;
};

/// Parse and validate; diagnostics go to stderr prefixed with the path.
Spec load_spec(const std::string& path) {
    Spec spec;
    try {
        spec = parse_spec(read_file(path));
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.location().str() << ": error: " << e.bare_message() << "\n";
        throw Reported{kExitInput};
    }
    auto diags = validate(spec);
    for (const auto& d : diags) std::cerr << path << ":" << d.str() << "\n";
    if (has_errors(diags)) throw Reported{kExitInput};
    return spec;
}

struct Limits {
    std::size_t max_states = ExploreLimits{}.max_nd_states;
    std::size_t max_depth = ExploreLimits{}.max_depth;
    std::size_t max_support = SemanticsOptions{}.max_support;
};

void add_limits(CLI::App* cmd, Limits& l) {
    cmd->add_option("--max-states", l.max_states, "Expand at most this many nd-states")->capture_default_str();
    cmd->add_option("--max-depth", l.max_depth, "Expand states up to this distance from the start")->capture_default_str();
    cmd->add_option("--max-support", l.max_support, "Largest product distribution support")->capture_default_str();
}

/// A .plts file is read as is; anything else is parsed as a model and explored.
PLTS load_plts(const std::string& path, const Limits& l) {
    if (ends_with(path, ".plts")) {
        try {
            return read_plts(read_file(path));
        } catch (const ParseError& e) {
            std::cerr << path << ":" << e.location().str() << ": error: " << e.bare_message() << "\n";
            throw Reported{kExitInput};
        }
    }
    Spec spec = load_spec(path);
    PLTS plts = explore(spec, {l.max_states, l.max_depth}, {l.max_support});
    if (plts.truncated) std::cerr << path << ": warning: exploration truncated by --max-states/--max-depth\n";
    return plts;
}

std::string summary(const PLTS& p) {
    return plural(p.nd_states.size(), "nd-state") + ", " + plural(p.prob_states.size(), "prob-state") + ", " +
           plural(p.transition_count(), "transition");
}

std::string fixed(double x, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::fixed << x;
    return os.str();
}

std::string sci(double x) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << x;
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"probe: probabilistic process models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "probe 0.1.0");

    std::string input, input_b, out;
    Limits limits;

    auto* parse = app.add_subcommand("parse", "Parse and validate a model");
    bool print = false;
    parse->add_option("file", input, "Model file (.prb)")->required();
    parse->add_flag("--print", print, "Print the canonical form of the model");

    auto* explore_cmd = app.add_subcommand("explore", "Build the probabilistic transition system");
    explore_cmd->add_option("file", input, "Model file (.prb)")->required();
    explore_cmd->add_option("-o,--out", out, "Write the PLTS here instead of standard output");
    add_limits(explore_cmd, limits);

    auto* minimize_cmd = app.add_subcommand("minimize", "Quotient by probabilistic bisimulation");
    minimize_cmd->add_option("file", input, "Model (.prb) or PLTS (.plts)")->required();
    minimize_cmd->add_option("-o,--out", out, "Write the quotient here instead of standard output");
    add_limits(minimize_cmd, limits);

    auto* compare = app.add_subcommand("compare", "Decide probabilistic bisimilarity of two models");
    compare->add_option("a", input, "First model (.prb or .plts)")->required();
    compare->add_option("b", input_b, "Second model (.prb or .plts)")->required();
    add_limits(compare, limits);

    auto* simulate_cmd = app.add_subcommand("simulate", "Estimate action probabilities by simulation");
    SimulationOptions sim;
    std::vector<std::string> schedulers;
    std::string trace_out;
    simulate_cmd->add_option("file", input, "Model file (.prb)")->required();
    simulate_cmd->add_option("--runs", sim.runs, "Number of runs")->capture_default_str()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--steps", sim.max_steps, "Maximum steps per run")->capture_default_str();
    simulate_cmd->add_option("--seed", sim.seed, "Random seed (default 0xC0FFEE)");
    simulate_cmd->add_option("--scheduler", schedulers, "uniform | fixed:<k> | resolve:<var>=<density> (repeatable)");
    simulate_cmd->add_option("--jobs", sim.jobs, "Worker threads; results do not depend on it")->capture_default_str();
    simulate_cmd->add_option("--trace-out", trace_out, "Write one line per run with its labels");
    simulate_cmd->add_option("-o,--out", out, "Write the report here instead of standard output");

    auto* hotel = app.add_subcommand("hotel", "Light-on probability of the n-group hotel");
    std::vector<std::uint64_t> ns;
    bool csv = false;
    HotelOptions hotel_opts;
    hotel->add_option("n", ns, "Group counts")->required()->check(CLI::PositiveNumber);
    hotel->add_flag("--csv", csv, "Comma separated output");
    hotel->add_flag("--semantic", hotel_opts.semantic, "Add the mass of `a` in the minimised PLTS (small n only)");
    hotel->add_option("--runs", hotel_opts.runs, "Add a simulated estimate from this many runs");
    hotel->add_option("--seed", hotel_opts.seed, "Random seed for --runs (default 0xC0FFEE)");
    hotel->add_option("--jobs", hotel_opts.jobs, "Worker threads for --runs")->capture_default_str();
    hotel->add_option("-o,--out", out, "Write the table here instead of standard output");

    auto* trace = app.add_subcommand("trace", "Distribution over bounded traces of a deterministic model");
    std::size_t length = 8;
    trace->add_option("file", input, "Model (.prb) or PLTS (.plts)")->required();
    trace->add_option("--length", length, "Trace length bound")->capture_default_str();
    add_limits(trace, limits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (parse->parsed()) {
            Spec spec = load_spec(input);
            if (print) std::cout << pretty_print(spec);
        } else if (explore_cmd->parsed()) {
            PLTS p = load_plts(input, limits);
            write_output(out, write_plts(p));
            (out.empty() || out == "-" ? std::cerr : std::cout) << summary(p) << "\n";
        } else if (minimize_cmd->parsed()) {
            PLTS p = load_plts(input, limits);
            Minimized m = minimize(p);
            write_output(out, write_plts(m.quotient));
            (out.empty() || out == "-" ? std::cerr : std::cout)
                << summary(p) << " -> " << summary(m.quotient) << "\n";
        } else if (compare->parsed()) {
            PLTS a = load_plts(input, limits);
            PLTS b = load_plts(input_b, limits);
            std::cout << equivalent(a, b).str() << "\n";
        } else if (simulate_cmd->parsed()) {
            Spec spec = load_spec(input);
            Scheduler sched;
            for (const auto& s : schedulers) sched.apply(s);
            sim.keep_traces = !trace_out.empty();
            SimulationReport r = simulate(spec, sched, sim);
            write_output(out, report_json(r) + "\n");
            if (!trace_out.empty()) {
                std::string text;
                for (const auto& t : r.traces) {
                    for (std::size_t i = 0; i < t.size(); ++i) text += (i ? " " : "") + t[i];
                    text += "\n";
                }
                std::ofstream f(trace_out, std::ios::binary);
                if (!f) throw Error("cannot write '" + trace_out + "'");
                f << text;
            }
        } else if (hotel->parsed()) {
            std::ostringstream os;
            const std::string sep = csv ? "," : "\t";
            os << "n" << sep << "p_exact" << sep << "p_float" << sep << "abs_error";
            if (hotel_opts.semantic) os << sep << "p_semantic";
            if (hotel_opts.runs) os << sep << "p_empirical" << sep << "ci_low" << sep << "ci_high";
            os << "\n";
            for (auto n : ns) {
                HotelApproximation h = approximate_hotel(n, hotel_opts);
                double err = std::fabs(h.p_float - kHotelLimit);
                // Exact fractions stop at kHotelExactMax; the column is marked instead.
                os << n << sep << (h.p_exact ? h.p_exact->get_str() : std::string("float-only")) << sep
                   << fixed(h.p_float, 12) << sep << sci(err);
                if (h.p_semantic) os << sep << h.p_semantic->str();
                if (h.p_empirical)
                    os << sep << fixed(h.p_empirical->point, 6) << sep << fixed(h.p_empirical->ci_low, 6) << sep
                       << fixed(h.p_empirical->ci_high, 6);
                os << "\n";
            }
            write_output(out, os.str());
        } else if (trace->parsed()) {
            PLTS p = load_plts(input, limits);
            std::ostringstream os;
            for (const auto& [t, prob] : bounded_trace_distribution(p, length)) {
                os << prob.str() << "\t";
                for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i];
                if (t.empty()) os << "(empty)";
                os << "\n";
            }
            std::cout << os.str();
        }
    } catch (const Reported& r) {
        return r.code;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
