#pragma once

#include "admissify/constraint.hpp"
#include "admissify/expression.hpp"
#include "admissify/net.hpp"

#include <string>
#include <vector>

namespace admissify {

enum class TraceStatus {
    Complete,                     // no candidate left, expression is plain constraints only
    CompleteWithBlocks,           // no candidate left, complementary blocks were emitted
    StepLimit,                    // max_steps reached (or a replay ended) with candidates left
    UnsatisfiableTransformation,  // a positive-gain source transition was met
};

std::string to_string(TraceStatus status);

struct TraceStep {
    TransitionIndex transition = 0;
    StepResult result;
    /// Whole expression after this step: new plain constraints, then every
    /// complementary block emitted so far.
    LogicExpression expression;
};

struct TransformationTrace {
    LinearConstraint initial;
    std::vector<TraceStep> steps;
    TraceStatus status = TraceStatus::Complete;
    std::string message;

    std::vector<TransitionIndex> sequence() const;
    /// Plain constraints still subject to transformation.
    ConstraintSet current_plain() const;
    LogicExpression final_expression() const;
};

struct RankOptions {
    /// Greedy steps simulated after the candidate when scoring it.
    std::size_t lookahead = 1;
    /// Count a (+,-) pair only if one of its blocks is satisfiable.
    bool probe_satisfiability = false;
};

struct DriverOptions {
    RankOptions ranking;
    std::size_t max_steps = 100;
};

/// Uncontrollable t such that some c ∈ W has ϖ_c(t) > 0 and t not dead
/// under c. Declaration order.
std::vector<TransitionIndex> candidate_transitions(const ConstraintSet& w, const PetriNet& net);

/// Score of a candidate; smaller tuples rank first.
struct RankedCandidate {
    TransitionIndex transition = 0;
    bool creates_blocks = false;
    std::size_t lookahead_blocks = 0;
    std::size_t frontier_blocks = 0;
    std::size_t inputs = 0;

    auto key() const { return std::tuple(creates_blocks, lookahead_blocks, frontier_blocks, inputs, transition); }
};

/// Candidates of W ordered best first. Prefers steps that do not create
/// complementary blocks now or within the lookahead, then steps leaving fewer
/// block-creating candidates behind, then fewer input places, then
/// declaration order.
std::vector<RankedCandidate> rank_transitions(const std::vector<TransitionIndex>& candidates, const ConstraintSet& w,
                                              const PetriNet& net, const RankOptions& options = {});

/// Repeats transform_disjunction_step on the plain part until no candidate
/// remains or max_steps is reached.
TransformationTrace transform_to_admissible(const PetriNet& net, const LinearConstraint& legal,
                                            const DriverOptions& options = {});

/// Applies exactly the given sequence. Throws ConstraintError for a
/// controllable transition in it. The status is StepLimit if candidates remain.
TransformationTrace replay_sequence(const PetriNet& net, const LinearConstraint& legal,
                                    const std::vector<TransitionIndex>& sequence);

}  // namespace admissify
