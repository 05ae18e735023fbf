#include "admissify/driver.hpp"

#include <algorithm>
#include <optional>

namespace admissify {

std::string to_string(TraceStatus status) {
    switch (status) {
        case TraceStatus::Complete: return "complete";
        case TraceStatus::CompleteWithBlocks: return "complete-with-blocks";
        case TraceStatus::StepLimit: return "step-limit";
        case TraceStatus::UnsatisfiableTransformation: return "unsatisfiable-transformation";
    }
    return "unknown";
}

std::vector<TransitionIndex> TransformationTrace::sequence() const {
    std::vector<TransitionIndex> out;
    for (const auto& s : steps) out.push_back(s.transition);
    return out;
}

ConstraintSet TransformationTrace::current_plain() const {
    if (steps.empty()) return ConstraintSet{initial};
    return steps.back().result.plain;
}

LogicExpression TransformationTrace::final_expression() const {
    if (steps.empty()) return LogicExpression::from_constraints(ConstraintSet{initial});
    return steps.back().expression;
}

std::vector<TransitionIndex> candidate_transitions(const ConstraintSet& w, const PetriNet& net) {
    std::vector<TransitionIndex> out;
    for (TransitionIndex t : net.uncontrollable_transitions()) {
        const bool open = std::any_of(w.begin(), w.end(), [&](const LinearConstraint& c) {
            return transition_weight(c, net, t) > 0 && !is_transition_dead(c, t, net);
        });
        if (open) out.push_back(t);
    }
    return out;
}

namespace {

bool creates_blocks(const StepResult& r, bool probe) {
    if (!probe) return r.has_blocks();
    for (const auto& g : r.groups) {
        for (const auto& b : g.blocks) {
            if (block_satisfiable_bounded(reduce_block(b))) return true;
        }
    }
    return false;
}

std::optional<StepResult> try_step(const ConstraintSet& w, TransitionIndex t, const PetriNet& net) {
    try {
        return transform_disjunction_step(w, t, net);
    } catch (const UnsatisfiableTransformation&) {
        return std::nullopt;
    }
}

// Candidates of w that would create blocks, counted without recursion.
std::size_t frontier_blocks(const ConstraintSet& w, const PetriNet& net, bool probe) {
    std::size_t n = 0;
    for (TransitionIndex u : candidate_transitions(w, net)) {
        const auto r = try_step(w, u, net);
        if (!r || creates_blocks(*r, probe)) ++n;
    }
    return n;
}

// Shallow score used to pick the greedy continuation during lookahead.
std::optional<RankedCandidate> shallow_best(const ConstraintSet& w, const PetriNet& net, bool probe,
                                            ConstraintSet& next) {
    std::optional<RankedCandidate> best;
    for (TransitionIndex u : candidate_transitions(w, net)) {
        const auto r = try_step(w, u, net);
        if (!r) continue;
        RankedCandidate c;
        c.transition = u;
        c.creates_blocks = creates_blocks(*r, probe);
        c.frontier_blocks = frontier_blocks(r->plain, net, probe);
        c.inputs = net.preset(u).size();
        if (!best || c.key() < best->key()) {
            best = c;
            next = r->plain;
        }
    }
    return best;
}

}  // namespace

std::vector<RankedCandidate> rank_transitions(const std::vector<TransitionIndex>& candidates, const ConstraintSet& w,
                                              const PetriNet& net, const RankOptions& options) {
    std::vector<RankedCandidate> ranked;
    constexpr std::size_t kWorst = static_cast<std::size_t>(-1);
    for (TransitionIndex t : candidates) {
        RankedCandidate c;
        c.transition = t;
        c.inputs = net.preset(t).size();
        const auto r = try_step(w, t, net);
        if (!r) {
            // A step that cannot be carried out goes last.
            c.creates_blocks = true;
            c.lookahead_blocks = kWorst;
            c.frontier_blocks = kWorst;
            ranked.push_back(c);
            continue;
        }
        c.creates_blocks = creates_blocks(*r, options.probe_satisfiability);
        c.frontier_blocks = frontier_blocks(r->plain, net, options.probe_satisfiability);
        ConstraintSet cur = r->plain;
        for (std::size_t d = 0; d < options.lookahead; ++d) {
            ConstraintSet next;
            const auto best = shallow_best(cur, net, options.probe_satisfiability, next);
            if (!best) break;
            if (best->creates_blocks) ++c.lookahead_blocks;
            cur = std::move(next);
        }
        ranked.push_back(c);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedCandidate& a, const RankedCandidate& b) { return a.key() < b.key(); });
    return ranked;
}

namespace {

void record_step(TransformationTrace& trace, StepResult result, std::vector<ConjunctionBlock>& carried) {
    for (const auto& g : result.groups) carried.insert(carried.end(), g.blocks.begin(), g.blocks.end());
    TraceStep step;
    step.transition = result.transition;
    step.expression = LogicExpression::from_constraints(result.plain);
    for (const auto& b : carried) step.expression.add(b);
    step.result = std::move(result);
    trace.steps.push_back(std::move(step));
}

void finish(TransformationTrace& trace, const PetriNet& net) {
    if (!candidate_transitions(trace.current_plain(), net).empty()) {
        trace.status = TraceStatus::StepLimit;
        return;
    }
    trace.status =
        trace.final_expression().has_delta_blocks() ? TraceStatus::CompleteWithBlocks : TraceStatus::Complete;
}

// Steps taken after blocks appeared transform the plain part only.
void note_carried_blocks(TransformationTrace& trace) {
    for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
        if (!trace.steps[i].expression.has_delta_blocks()) continue;
        const std::string note = "complementary blocks from step " + std::to_string(i + 1) +
                                 " were carried through later steps untransformed; check the result with verify";
        trace.message = trace.message.empty() ? note : trace.message + "; " + note;
        return;
    }
}

}  // namespace

TransformationTrace transform_to_admissible(const PetriNet& net, const LinearConstraint& legal,
                                            const DriverOptions& options) {
    if (legal.dimension() != net.place_count()) {
        throw ConstraintError("constraint dimension does not match the net");
    }
    TransformationTrace trace{legal, {}, TraceStatus::Complete, {}};
    std::vector<ConjunctionBlock> carried;
    for (std::size_t i = 0; i < options.max_steps; ++i) {
        const ConstraintSet w = trace.current_plain();
        const auto candidates = candidate_transitions(w, net);
        if (candidates.empty()) break;
        const TransitionIndex t = rank_transitions(candidates, w, net, options.ranking).front().transition;
        try {
            record_step(trace, transform_disjunction_step(w, t, net), carried);
        } catch (const UnsatisfiableTransformation& e) {
            trace.status = TraceStatus::UnsatisfiableTransformation;
            trace.message = e.what();
            return trace;
        }
    }
    finish(trace, net);
    if (trace.status == TraceStatus::StepLimit) {
        trace.message = "stopped after " + std::to_string(options.max_steps) + " steps with candidates left";
    }
    note_carried_blocks(trace);
    return trace;
}

TransformationTrace replay_sequence(const PetriNet& net, const LinearConstraint& legal,
                                    const std::vector<TransitionIndex>& sequence) {
    if (legal.dimension() != net.place_count()) {
        throw ConstraintError("constraint dimension does not match the net");
    }
    for (TransitionIndex t : sequence) {
        if (t >= net.transition_count()) throw ConstraintError("transition index out of range");
        if (!net.is_uncontrollable(t)) {
            throw ConstraintError("transition " + net.transition_name(t) + " in the sequence is controllable");
        }
    }
    TransformationTrace trace{legal, {}, TraceStatus::Complete, {}};
    std::vector<ConjunctionBlock> carried;
    for (TransitionIndex t : sequence) {
        try {
            record_step(trace, transform_disjunction_step(trace.current_plain(), t, net), carried);
        } catch (const UnsatisfiableTransformation& e) {
            trace.status = TraceStatus::UnsatisfiableTransformation;
            trace.message = e.what();
            return trace;
        }
    }
    finish(trace, net);
    if (trace.status == TraceStatus::StepLimit) trace.message = "sequence ended with candidates left";
    note_carried_blocks(trace);
    return trace;
}

}  // namespace admissify
