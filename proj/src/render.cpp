#include "admissify/render.hpp"

#include <sstream>

namespace admissify {

namespace {

// Reduced atoms paired up: a ">= b" directly followed by "<= b" on the same
// weights is shown as one equality.
struct DisplayAtom {
    const Atom* atom;
    bool equality;
};

std::vector<DisplayAtom> display_atoms(const ConjunctionBlock& reduced) {
    std::vector<DisplayAtom> out;
    const auto& atoms = reduced.atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const bool eq = i + 1 < atoms.size() && atoms[i].relation == Relation::GreaterEqual &&
                        atoms[i + 1].relation == Relation::LessEqual && atoms[i].weights == atoms[i + 1].weights &&
                        atoms[i].bound == atoms[i + 1].bound;
        out.push_back({&atoms[i], eq});
        if (eq) ++i;
    }
    return out;
}

const char* relation_text(const DisplayAtom& d) {
    if (d.equality) return "=";
    return d.atom->relation == Relation::LessEqual ? "<=" : ">=";
}

std::string group_label(const DeltaOrigin& o, const PetriNet& net) {
    return "C_{" + std::to_string(o.from + 1) + "→" + std::to_string(o.to + 1) + "} via " +
           net.transition_name(o.transition);
}

}  // namespace

std::string render_weights(std::span<const Tokens> weights, const PetriNet& net) {
    std::string out;
    for (PlaceIndex p = 0; p < weights.size(); ++p) {
        if (weights[p] == 0) continue;
        if (!out.empty()) out += "+";
        if (weights[p] != 1) out += std::to_string(weights[p]);
        out += "m(" + net.place_name(p) + ")";
    }
    return out.empty() ? "0" : out;
}

std::string render_constraint(const LinearConstraint& c, const PetriNet& net) {
    return render_weights(c.weights(), net) + " <= " + std::to_string(c.bound());
}

std::string render_block(const ConjunctionBlock& block, const PetriNet& net) {
    const ConjunctionBlock reduced = reduce_block(block);
    if (reduced.unsatisfiable) return "{ FALSE }";
    if (reduced.atoms.empty()) return "{ TRUE }";
    std::string out = "{ ";
    bool first = true;
    for (const auto& d : display_atoms(reduced)) {
        if (!first) out += " ∧ ";
        out += render_weights(d.atom->weights, net) + " " + relation_text(d) + " " + std::to_string(d.atom->bound);
        first = false;
    }
    return out + " }";
}

std::string render_expression(const LogicExpression& expr, const PetriNet& net) {
    std::string out;
    for (const auto& b : expr.blocks()) {
        std::string piece;
        if (b.is_delta()) {
            const ConjunctionBlock reduced = reduce_block(b);
            if (!block_satisfiable_bounded(reduced)) continue;
            piece = render_block(reduced, net);
        } else {
            const Atom& a = b.atoms.front();
            piece = render_weights(a.weights, net) + " <= " + std::to_string(a.bound);
        }
        if (!out.empty()) out += " ∨ ";
        out += piece;
    }
    return out.empty() ? "FALSE (empty marking set)" : out;
}

Json constraint_json(const LinearConstraint& c, const PetriNet& net) {
    Json weights = Json::object();
    for (PlaceIndex p = 0; p < c.dimension(); ++p) {
        if (c.weight(p) != 0) weights[net.place_name(p)] = c.weight(p);
    }
    return Json{{"weights", weights}, {"rel", "<="}, {"bound", c.bound()}};
}

Json atom_json(const Atom& atom, const PetriNet& net) {
    Json weights = Json::object();
    for (PlaceIndex p = 0; p < atom.weights.size(); ++p) {
        if (atom.weights[p] != 0) weights[net.place_name(p)] = atom.weights[p];
    }
    return Json{{"weights", weights},
                {"rel", atom.relation == Relation::LessEqual ? "<=" : ">="},
                {"bound", atom.bound}};
}

Json block_json(const ConjunctionBlock& block, const PetriNet& net) {
    const ConjunctionBlock reduced = reduce_block(block);
    Json out = Json::object();
    if (const auto* o = std::get_if<DeltaOrigin>(&block.origin)) {
        out["from"] = o->from + 1;
        out["to"] = o->to + 1;
        out["transition"] = net.transition_name(o->transition);
        out["lambda"] = o->lambda;
    } else {
        out["constraint"] = std::get<PlainOrigin>(block.origin).constraint + 1;
    }
    out["satisfiable"] = block_satisfiable_bounded(reduced);
    Json atoms = Json::array();
    for (const auto& d : display_atoms(reduced)) {
        Json a = atom_json(*d.atom, net);
        if (d.equality) a["rel"] = "=";
        atoms.push_back(std::move(a));
    }
    out["atoms"] = std::move(atoms);
    return out;
}

Json expression_json(const LogicExpression& expr, const PetriNet& net) {
    Json plain = Json::array();
    Json blocks = Json::array();
    for (const auto& b : expr.blocks()) {
        if (b.is_delta()) {
            blocks.push_back(block_json(b, net));
        } else {
            const Atom& a = b.atoms.front();
            plain.push_back(constraint_json(LinearConstraint(a.weights, a.bound), net));
        }
    }
    return Json{{"plain", plain}, {"blocks", blocks}};
}

Json trace_json(const TransformationTrace& trace, const PetriNet& net) {
    Json sigma = Json::array();
    for (TransitionIndex t : trace.sequence()) sigma.push_back(net.transition_name(t));
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json plain = Json::array();
        for (const auto& c : s.result.plain) plain.push_back(constraint_json(c, net));
        Json groups = Json::array();
        for (const auto& g : s.result.groups) {
            Json blocks = Json::array();
            for (const auto& b : g.blocks) blocks.push_back(block_json(b, net));
            groups.push_back(Json{{"from", g.from + 1}, {"to", g.to + 1}, {"blocks", blocks}});
        }
        steps.push_back(Json{{"transition", net.transition_name(s.transition)}, {"plain", plain}, {"groups", groups}});
    }
    Json out{{"net", net.name()},
             {"legal", constraint_json(trace.initial, net)},
             {"sigma", sigma},
             {"status", to_string(trace.status)}};
    if (!trace.message.empty()) out["message"] = trace.message;
    out["steps"] = std::move(steps);
    out["final"] = expression_json(trace.final_expression(), net);
    return out;
}

std::string render_trace_text(const TransformationTrace& trace, const PetriNet& net, bool color) {
    std::ostringstream out;
    out << "net " << net.name() << "\n";
    out << "legal: " << render_constraint(trace.initial, net) << "\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        out << "step " << i + 1 << " via " << net.transition_name(s.transition) << ":\n";
        for (const auto& c : s.result.plain) out << "  " << render_constraint(c, net) << "\n";
        for (const auto& g : s.result.groups) {
            out << "  " << group_label(std::get<DeltaOrigin>(g.blocks.front().origin), net) << ":\n";
            for (const auto& b : g.blocks) {
                const ConjunctionBlock reduced = reduce_block(b);
                out << "    " << render_block(reduced, net);
                if (!block_satisfiable_bounded(reduced)) out << "  (unsatisfiable)";
                out << "\n";
            }
        }
    }
    out << "sigma:";
    for (TransitionIndex t : trace.sequence()) out << " " << net.transition_name(t);
    out << "\n";
    out << "final: " << render_expression(trace.final_expression(), net) << "\n";
    std::string status = to_string(trace.status);
    if (color) {
        const char* code = trace.status == TraceStatus::Complete || trace.status == TraceStatus::CompleteWithBlocks
                               ? "\033[32m"
                               : (trace.status == TraceStatus::StepLimit ? "\033[33m" : "\033[31m");
        status = code + status + "\033[0m";
    }
    out << "status: " << status;
    if (!trace.message.empty()) out << " (" << trace.message << ")";
    out << "\n";
    return out.str();
}

}  // namespace admissify
