#include "admissify/commands.hpp"
#include "admissify/constraint.hpp"
#include "admissify/driver.hpp"
#include "admissify/net_file.hpp"
#include "admissify/render.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <sstream>

namespace py = pybind11;
using namespace admissify;

namespace {

Marking to_marking(const std::vector<Tokens>& tokens, const PetriNet& net) {
    if (tokens.size() != net.place_count()) {
        throw Error("marking has " + std::to_string(tokens.size()) + " entries, net has " +
                    std::to_string(net.place_count()) + " places");
    }
    return Marking(tokens);
}

std::vector<Tokens> to_list(const Marking& m) { return {m.begin(), m.end()}; }

std::vector<std::string> transition_names(const PetriNet& net, const std::vector<TransitionIndex>& ts) {
    std::vector<std::string> out;
    for (auto t : ts) out.push_back(net.transition_name(t));
    return out;
}

// Accepts a LinearConstraint, a declared name, inline text or None.
LinearConstraint resolve(const NetFile& f, const py::object& choice) {
    if (choice.is_none()) {
        if (f.constraints.size() == 1) return f.constraints.front().constraint;
        if (const auto* c = f.find_constraint("legal")) return *c;
        throw Error("constraint is required unless the net declares one constraint or one named 'legal'");
    }
    if (py::isinstance<LinearConstraint>(choice)) return choice.cast<LinearConstraint>();
    const auto text = choice.cast<std::string>();
    if (const auto* c = f.find_constraint(text)) return *c;
    return parse_constraint(text, f.net);
}

std::string transform_json(const NetFile& f, const py::object& constraint, const std::vector<std::string>& sequence,
                           std::size_t lookahead, std::size_t max_steps, bool probe) {
    const LinearConstraint legal = resolve(f, constraint);
    const TransformationTrace trace = [&] {
        if (!sequence.empty()) {
            std::vector<TransitionIndex> seq;
            for (const auto& name : sequence) seq.push_back(f.net.transition_index(name));
            return replay_sequence(f.net, legal, seq);
        }
        DriverOptions d;
        d.max_steps = max_steps;
        d.ranking.lookahead = lookahead;
        d.ranking.probe_satisfiability = probe;
        return transform_to_admissible(f.net, legal, d);
    }();
    return trace_json(trace, f.net).dump();
}

}  // namespace

PYBIND11_MODULE(_admissify, m) {
    m.doc() = "Admissible marking sets of Petri nets with uncontrollable transitions.";

    auto error = py::register_exception<Error>(m, "AdmissifyError");
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<UnsatisfiableTransformation>(m, "UnsatisfiableTransformation", error);

    py::class_<LinearConstraint>(m, "LinearConstraint")
        .def(py::init<std::vector<Tokens>, Tokens>(), py::arg("weights"), py::arg("bound"))
        .def_property_readonly("weights",
                               [](const LinearConstraint& c) {
                                   return std::vector<Tokens>(c.weights().begin(), c.weights().end());
                               })
        .def_property_readonly("bound", &LinearConstraint::bound)
        .def("apply", [](const LinearConstraint& c, const std::vector<Tokens>& m) { return c.apply(Marking(m)); })
        .def("contains", [](const LinearConstraint& c, const std::vector<Tokens>& m) { return c.contains(Marking(m)); })
        .def("__eq__", [](const LinearConstraint& a, const LinearConstraint& b) { return a == b; })
        .def("__repr__", [](const LinearConstraint& c) {
            std::ostringstream s;
            s << "LinearConstraint([";
            for (std::size_t i = 0; i < c.dimension(); ++i) s << (i ? ", " : "") << c.weight(i);
            s << "], " << c.bound() << ")";
            return s.str();
        });

    py::class_<NetFile, std::shared_ptr<NetFile>>(m, "Net")
        .def_property_readonly("name", [](const NetFile& f) { return f.net.name(); })
        .def_property_readonly("places",
                               [](const NetFile& f) {
                                   return std::vector<std::string>(f.net.place_names().begin(),
                                                                   f.net.place_names().end());
                               })
        .def_property_readonly("transitions",
                               [](const NetFile& f) {
                                   std::vector<std::string> out;
                                   for (TransitionIndex t = 0; t < f.net.transition_count(); ++t)
                                       out.push_back(f.net.transition_name(t));
                                   return out;
                               })
        .def_property_readonly("uncontrollable",
                               [](const NetFile& f) { return transition_names(f.net, f.net.uncontrollable_transitions()); })
        .def_property_readonly("initial_marking", [](const NetFile& f) { return to_list(f.net.initial_marking()); })
        .def_property_readonly("constraints",
                               [](const NetFile& f) {
                                   py::dict out;
                                   for (const auto& c : f.constraints) out[py::str(c.name)] = c.constraint;
                                   return out;
                               })
        .def("incidence",
             [](const NetFile& f, const std::string& p, const std::string& t) {
                 return f.net.incidence(f.net.place_index(p), f.net.transition_index(t));
             })
        .def("enabled",
             [](const NetFile& f, const std::vector<Tokens>& marking, const std::string& t) {
                 return enabled(f.net, to_marking(marking, f.net), f.net.transition_index(t));
             })
        .def("fire",
             [](const NetFile& f, const std::vector<Tokens>& marking, const std::string& t) {
                 return to_list(fire(f.net, to_marking(marking, f.net), f.net.transition_index(t)));
             })
        .def(
            "orbit",
            [](const NetFile& f, const std::vector<Tokens>& marking, const std::string& t, std::size_t cap) {
                const Orbit o = t_orbit(f.net, to_marking(marking, f.net), f.net.transition_index(t), cap);
                std::vector<std::vector<Tokens>> visited;
                for (const auto& v : o.visited) visited.push_back(to_list(v));
                const char* status = o.status == OrbitStatus::Terminates     ? "terminates"
                                     : o.status == OrbitStatus::StaysForever ? "stays-forever"
                                                                             : "inconclusive";
                return py::make_tuple(status, visited);
            },
            py::arg("marking"), py::arg("transition"), py::arg("cap") = 100000)
        .def("constraint", [](const NetFile& f, const std::string& text) { return parse_constraint(text, f.net); })
        .def("render_constraint", [](const NetFile& f, const LinearConstraint& c) { return render_constraint(c, f.net); })
        .def("transform_single",
             [](const NetFile& f, const LinearConstraint& c, const std::string& t) {
                 const ConstraintSet w = transform_single(c, f.net.transition_index(t), f.net);
                 return std::vector<LinearConstraint>(w.begin(), w.end());
             })
        .def("utgt_rho",
             [](const NetFile& f, const LinearConstraint& c, const std::string& t, const std::string& p) {
                 return utgt_rho(c, f.net.transition_index(t), f.net.place_index(p), f.net);
             })
        .def("is_transition_dead",
             [](const NetFile& f, const LinearConstraint& c, const std::string& t) {
                 return is_transition_dead(c, f.net.transition_index(t), f.net);
             })
        .def("render", [](const NetFile& f) { return render_net(f); });

    m.def("parse_net", [](const std::string& text) { return std::make_shared<NetFile>(parse_net(text)); },
          py::arg("text"));
    m.def("load_net", [](const std::filesystem::path& path) { return std::make_shared<NetFile>(load_net_file(path)); },
          py::arg("path"));

    m.def("_transform_json", &transform_json, py::arg("net"), py::arg("constraint") = py::none(),
          py::arg("sequence") = std::vector<std::string>{}, py::arg("lookahead") = 1, py::arg("max_steps") = 100,
          py::arg("probe_blocks") = false);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in process. Returns (exit_code, stdout, stderr).");
}
