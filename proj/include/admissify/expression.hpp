#pragma once

#include "admissify/constraint.hpp"
#include "admissify/net.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace admissify {

enum class Relation { LessEqual, GreaterEqual };

/// ω·m ≤ b or ω·m ≥ b with ω ≥ 0. Strict comparisons are stored as their
/// integer equivalents (ω·m > k becomes ω·m ≥ k+1).
struct Atom {
    std::vector<Tokens> weights;
    Relation relation = Relation::LessEqual;
    Tokens bound = 0;

    Tokens apply(const Marking& m) const;
    bool holds(const Marking& m) const;

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

Atom at_most(std::vector<Tokens> weights, Tokens bound);
Atom at_least(std::vector<Tokens> weights, Tokens bound);

/// A block that is just one plain linear constraint (index into its W).
struct PlainOrigin {
    std::size_t constraint = 0;
    bool operator==(const PlainOrigin&) const = default;
};

/// Δ_λ of C_{from→to} via `transition`; from/to index the pre-step W.
struct DeltaOrigin {
    std::size_t from = 0;
    std::size_t to = 0;
    TransitionIndex transition = 0;
    Tokens lambda = 1;
    bool operator==(const DeltaOrigin&) const = default;
};

using BlockOrigin = std::variant<PlainOrigin, DeltaOrigin>;

struct ConjunctionBlock {
    std::vector<Atom> atoms;
    BlockOrigin origin;
    /// Set by reduce_block when the atoms contradict each other.
    bool unsatisfiable = false;

    bool holds(const Marking& m) const;
    bool is_delta() const { return std::holds_alternative<DeltaOrigin>(origin); }
    bool operator==(const ConjunctionBlock&) const = default;
};

ConjunctionBlock plain_block(const LinearConstraint& c, std::size_t index);

/// Disjunction of conjunction blocks. The empty disjunction is the empty set.
class LogicExpression final : public MarkingPredicate {
  public:
    LogicExpression() = default;
    explicit LogicExpression(std::vector<ConjunctionBlock> blocks) : blocks_(std::move(blocks)) {}
    static LogicExpression from_constraints(const ConstraintSet& w);

    const std::vector<ConjunctionBlock>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    void add(ConjunctionBlock block) { blocks_.push_back(std::move(block)); }

    bool has_delta_blocks() const;
    /// The plain blocks read back as linear constraints, in order.
    ConstraintSet plain_constraints() const;

    bool contains(const Marking& m) const override;
    /// Exact: every atom is linear in n along the ray, so each block holds on
    /// an interval of n and the expression on a finite union of intervals.
    RayExit first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const override;

  private:
    std::vector<ConjunctionBlock> blocks_;
};

bool evaluate(const LogicExpression& expr, const Marking& m);

/// C_{i→j} as the blocks Δ_1 … Δ_n; empty unless ϖ_i(t) > 0 and ϖ_j(t) < 0.
/// `from` / `to` are recorded in each block's origin.
std::vector<ConjunctionBlock> complementary_blocks(const LinearConstraint& ci, const LinearConstraint& cj,
                                                   TransitionIndex t, const PetriNet& net, std::size_t from = 0,
                                                   std::size_t to = 1);

struct BlockGroup {
    std::size_t from = 0;
    std::size_t to = 0;
    std::vector<ConjunctionBlock> blocks;
};

/// Outcome of transforming ∨(W) via one uncontrollable transition.
struct StepResult {
    TransitionIndex transition = 0;
    ConstraintSet plain;
    std::vector<BlockGroup> groups;

    bool has_blocks() const { return !groups.empty(); }
    /// Plain constraints followed by every complementary block.
    LogicExpression expression() const;
};

/// (Q_∨(W))_t: ρ-transformed constraints plus C_{i→j} for every ordered pair
/// with ϖ_i(t) > 0 and ϖ_j(t) < 0.
StepResult transform_disjunction_step(const ConstraintSet& w, TransitionIndex t, const PetriNet& net);

/// Intersects the intervals of atoms sharing a weight vector. The result
/// denotes the same set; a contradiction yields the canonical unsatisfiable
/// block (0 ≥ 1) with `unsatisfiable` set.
ConjunctionBlock reduce_block(const ConjunctionBlock& block);

/// Largest atom bound; a satisfiable block always has a witness with every
/// place at most this value.
Tokens default_probe_bound(const ConjunctionBlock& block);

/// Exhaustive search for a marking with m(p) ≤ bound satisfying the block.
bool block_satisfiable_bounded(const ConjunctionBlock& block, std::optional<Tokens> bound = std::nullopt);

}  // namespace admissify
