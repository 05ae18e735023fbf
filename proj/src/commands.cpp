#include "admissify/commands.hpp"

#include "admissify/driver.hpp"
#include "admissify/net_file.hpp"
#include "admissify/render.hpp"
#include "admissify/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>

namespace admissify {

namespace {

// Raised for bad flag values discovered after CLI11 parsing.
class UsageError : public Error {
  public:
    using Error::Error;
};

struct CommonOptions {
    std::string net;
    std::string constraint;
    std::vector<std::string> sequence;
    std::size_t lookahead = 1;
    std::size_t max_steps = 100;
    bool probe = false;
    std::string format = "text";
};

void add_common(CLI::App& app, CommonOptions& o) {
    app.add_option("--net", o.net, "Net file")->required();
    app.add_option("--constraint", o.constraint,
                   "Legal constraint: a name declared in the net file or inline text such as '1 p1 + 1 p2 <= 3'."
                   " Defaults to the only constraint of the file, or the one named 'legal'");
    app.add_option("--sequence", o.sequence, "Replay this transition sequence instead of choosing one")
        ->delimiter(',');
    app.add_option("--lookahead", o.lookahead, "Greedy steps simulated when ranking candidates")
        ->capture_default_str();
    app.add_option("--max-steps", o.max_steps, "Stop after this many steps")->capture_default_str();
    app.add_flag("--probe-blocks", o.probe,
                 "Only count a complementary set as created if one of its blocks is satisfiable");
    app.add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

bool color_enabled() {
    const char* v = std::getenv("ADMISSIFY_COLOR");
    return v != nullptr && std::string(v) == "1";
}

LinearConstraint resolve_constraint(const std::string& text, const NetFile& file) {
    if (text.empty()) {
        if (file.constraints.size() == 1) return file.constraints.front().constraint;
        if (const auto* c = file.find_constraint("legal")) return *c;
        throw UsageError("--constraint is required unless the net file declares one constraint or one named 'legal'");
    }
    if (const auto* c = file.find_constraint(text)) return *c;
    return parse_constraint(text, file.net);
}

TransformationTrace run_transformation(const CommonOptions& o, const NetFile& file, const LinearConstraint& legal) {
    if (!o.sequence.empty()) {
        std::vector<TransitionIndex> seq;
        for (const auto& name : o.sequence) {
            const auto t = file.net.find_transition(name);
            if (!t) throw UsageError("unknown transition '" + name + "' in --sequence");
            seq.push_back(*t);
        }
        return replay_sequence(file.net, legal, seq);
    }
    DriverOptions d;
    d.max_steps = o.max_steps;
    d.ranking.lookahead = o.lookahead;
    d.ranking.probe_satisfiability = o.probe;
    return transform_to_admissible(file.net, legal, d);
}

int status_exit(TraceStatus s) {
    switch (s) {
        case TraceStatus::Complete:
        case TraceStatus::CompleteWithBlocks: return exit_code::ok;
        case TraceStatus::StepLimit: return exit_code::step_limit;
        case TraceStatus::UnsatisfiableTransformation: return exit_code::unsatisfiable;
    }
    return exit_code::usage;
}

// CLI11 consumes its argument vector back to front.
int parse_args(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               bool& done) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        done = true;
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        done = true;
        app.exit(e, out, err);
        return exit_code::usage;
    }
    done = false;
    return exit_code::ok;
}

// Input problems (unreadable file, syntax, bad flag values) all map to the usage exit code.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

std::string bounds_text(const std::vector<Tokens>& bounds, const PetriNet& net) {
    std::string s;
    for (PlaceIndex p = 0; p < bounds.size(); ++p) {
        if (!s.empty()) s += ",";
        s += net.place_name(p) + "=" + std::to_string(bounds[p]);
    }
    return s;
}

Json verdict_json(const Verdict& v, const PetriNet& net) {
    Json bounds = Json::object();
    for (PlaceIndex p = 0; p < v.bounds.size(); ++p) bounds[net.place_name(p)] = v.bounds[p];
    Json out{{"kind", to_string(v.kind)}};
    if (v.marking) {
        Json m = Json::object();
        for (PlaceIndex p = 0; p < v.marking->size(); ++p) m[net.place_name(p)] = (*v.marking)[p];
        out["marking"] = m;
        if (v.kind == Verdict::Kind::Counterexample) out["admissible"] = v.admissible;
    }
    out["bounds"] = bounds;
    out["state_cap"] = v.caps.state_cap;
    out["depth_cap"] = v.caps.depth_cap;
    out["universe"] = v.universe;
    out["admissible_count"] = v.admissible_count;
    out["inconclusive_count"] = v.inconclusive_count;
    return out;
}

std::string verdict_text(const Verdict& v, const PetriNet& net, bool color) {
    std::string kind = to_string(v.kind);
    if (color) kind = (v.kind == Verdict::Kind::Equal ? "\033[32m" : "\033[31m") + kind + "\033[0m";
    std::string s = "verdict: " + kind;
    if (v.kind == Verdict::Kind::Counterexample) {
        s += "\n  marking " + to_string(*v.marking) +
             (v.admissible ? " is admissible but not in the expression" : " is in the expression but not admissible");
    } else if (v.kind == Verdict::Kind::Inconclusive) {
        s += "\n  " + std::to_string(v.inconclusive_count) + " markings undecided, first " + to_string(*v.marking);
    }
    s += "\n  universe " + std::to_string(v.universe) + " markings, bounds " + bounds_text(v.bounds, net) +
         ", state cap " + std::to_string(v.caps.state_cap) + ", depth cap " + std::to_string(v.caps.depth_cap) + "\n";
    return s;
}

}  // namespace

std::vector<Tokens> parse_bounds(const std::string& text, const PetriNet& net) {
    std::optional<Tokens> fallback;
    std::vector<std::optional<Tokens>> bounds(net.place_count());
    auto number = [](std::string_view s) {
        Tokens v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
            throw UsageError("invalid bound '" + std::string(s) + "'");
        }
        return v;
    };
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            fallback = number(item);
            continue;
        }
        const std::string place(item.substr(0, eq));
        const auto p = net.find_place(place);
        if (!p) throw UsageError("unknown place '" + place + "' in --bound");
        bounds[*p] = number(item.substr(eq + 1));
    }
    std::vector<Tokens> out;
    for (PlaceIndex p = 0; p < bounds.size(); ++p) {
        if (!bounds[p] && !fallback) throw UsageError("no bound given for place " + net.place_name(p));
        out.push_back(bounds[p].value_or(fallback.value_or(0)));
    }
    return out;
}

int cmd_transform(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transform a legal constraint into an expression of the admissible markings", "admissify transform"};
    CommonOptions o;
    add_common(app, o);
    bool done = false;
    if (const int code = parse_args(app, args, out, err, done); done) return code;

    return guarded(err, [&] {
        const NetFile file = load_net_file(o.net);
        const LinearConstraint legal = resolve_constraint(o.constraint, file);
        const TransformationTrace trace = run_transformation(o, file, legal);
        if (o.format == "json") {
            out << trace_json(trace, file.net).dump(2) << "\n";
        } else {
            out << render_trace_text(trace, file.net, color_enabled());
        }
        return status_exit(trace.status);
    });
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Check a transformed expression against brute-force reachability", "admissify verify"};
    CommonOptions o;
    add_common(app, o);
    std::string bound_text;
    ExploreCaps caps;
    std::vector<std::string> expression;
    app.add_option("--bound", bound_text, "Universe bounds: N or p=N,... (N alone is the default)")->required();
    app.add_option("--state-cap", caps.state_cap, "States explored per marking before giving up")
        ->capture_default_str();
    app.add_option("--depth-cap", caps.depth_cap, "Search depth per marking before giving up")->capture_default_str();
    app.add_option("--expression", expression,
                   "Check this disjunction of constraints (names or inline, repeatable) instead of transforming");
    bool done = false;
    if (const int code = parse_args(app, args, out, err, done); done) return code;

    return guarded(err, [&] {
        const NetFile file = load_net_file(o.net);
        const LinearConstraint legal = resolve_constraint(o.constraint, file);
        const std::vector<Tokens> bounds = parse_bounds(bound_text, file.net);

        Json report;
        std::string text;
        LogicExpression candidate;
        if (expression.empty()) {
            const TransformationTrace trace = run_transformation(o, file, legal);
            // No admissible marking survives a positive-gain source transition,
            // so an aborted transformation is checked as the empty set.
            if (trace.status != TraceStatus::UnsatisfiableTransformation) candidate = trace.final_expression();
            report = trace_json(trace, file.net);
            text = render_trace_text(trace, file.net, color_enabled());
        } else {
            ConstraintSet w;
            for (const auto& e : expression) w.push_back(resolve_constraint(e, file));
            candidate = LogicExpression::from_constraints(w);
            report = Json{{"net", file.net.name()},
                          {"legal", constraint_json(legal, file.net)},
                          {"expression", expression_json(candidate, file.net)}};
            text = "net " + file.net.name() + "\nlegal: " + render_constraint(legal, file.net) +
                   "\nexpression: " + render_expression(candidate, file.net) + "\n";
        }

        const Verdict v = verify_against_oracle(file.net, legal, candidate, bounds, caps);
        if (o.format == "json") {
            report["verdict"] = verdict_json(v, file.net);
            out << report.dump(2) << "\n";
        } else {
            out << text << verdict_text(v, file.net, color_enabled());
        }
        switch (v.kind) {
            case Verdict::Kind::Equal: return exit_code::ok;
            case Verdict::Kind::Counterexample: return exit_code::counterexample;
            case Verdict::Kind::Inconclusive: return exit_code::inconclusive;
        }
        return exit_code::usage;
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const std::string usage =
        "usage: admissify <transform|verify> --net FILE [options]\n"
        "run 'admissify <command> --help' for the options of a command\n";
    if (args.empty()) {
        err << usage;
        return exit_code::usage;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    if (args[0] == "transform") return cmd_transform(rest, out, err);
    if (args[0] == "verify") return cmd_verify(rest, out, err);
    if (args[0] == "--help" || args[0] == "-h") {
        out << usage;
        return exit_code::ok;
    }
    err << "unknown command '" << args[0] << "'\n" << usage;
    return exit_code::usage;
}

}  // namespace admissify
