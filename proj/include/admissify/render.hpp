#pragma once

#include "admissify/driver.hpp"
#include "admissify/expression.hpp"
#include "admissify/net.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace admissify {

/// "m(p1)+2m(p4)"; "0" for the zero vector.
std::string render_weights(std::span<const Tokens> weights, const PetriNet& net);

std::string render_constraint(const LinearConstraint& c, const PetriNet& net);

/// Reduced form of the block, e.g. "{ m(p4) >= 1 ∧ m(p1)+m(p3) = 1 }".
std::string render_block(const ConjunctionBlock& block, const PetriNet& net);

/// Disjuncts joined by " ∨ ". Unsatisfiable blocks are left out; an
/// expression with nothing left renders as "FALSE (empty marking set)".
std::string render_expression(const LogicExpression& expr, const PetriNet& net);

using Json = nlohmann::ordered_json;

Json constraint_json(const LinearConstraint& c, const PetriNet& net);
Json atom_json(const Atom& atom, const PetriNet& net);
/// Reduced block with its origin (1-based constraint positions).
Json block_json(const ConjunctionBlock& block, const PetriNet& net);
/// {plain: [...], blocks: [...]}
Json expression_json(const LogicExpression& expr, const PetriNet& net);
Json trace_json(const TransformationTrace& trace, const PetriNet& net);

/// Multi-line human-readable trace: one section per step.
std::string render_trace_text(const TransformationTrace& trace, const PetriNet& net, bool color = false);

}  // namespace admissify
