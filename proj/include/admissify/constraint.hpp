#pragma once

#include "admissify/net.hpp"

#include <vector>

namespace admissify {

class ConstraintError : public Error {
  public:
    using Error::Error;
};

/// Raised when a positive-gain uncontrollable transition has an empty preset:
/// nothing can stop it, so no transformed constraint exists.
class UnsatisfiableTransformation : public Error {
  public:
    using Error::Error;
};

/// (ω, k): the marking set Q_(ω,k) = { m | ω·m ≤ k } with ω ≥ 0 and k ≥ 0.
class LinearConstraint final : public MarkingPredicate {
  public:
    LinearConstraint(std::vector<Tokens> weights, Tokens bound);

    std::size_t dimension() const { return weights_.size(); }
    std::span<const Tokens> weights() const { return weights_; }
    Tokens weight(PlaceIndex p) const { return weights_.at(p); }
    Tokens bound() const { return bound_; }
    bool is_zero() const;

    /// ω·m
    Tokens apply(const Marking& m) const;

    bool contains(const Marking& m) const override { return apply(m) <= bound_; }
    RayExit first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const override;

    bool operator==(const LinearConstraint& other) const {
        return bound_ == other.bound_ && weights_ == other.weights_;
    }

  private:
    std::vector<Tokens> weights_;
    Tokens bound_;
};

/// W, read as the disjunction ∨(W). Order is significant: it is the order the
/// transformation emits constraints in and the order they are rendered in.
class ConstraintSet final : public MarkingPredicate {
  public:
    ConstraintSet() = default;
    ConstraintSet(std::initializer_list<LinearConstraint> items) : items_(items) {}
    explicit ConstraintSet(std::vector<LinearConstraint> items) : items_(std::move(items)) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const LinearConstraint& operator[](std::size_t i) const { return items_.at(i); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    void push_back(LinearConstraint c) { items_.push_back(std::move(c)); }
    void append(const ConstraintSet& other);

    /// Copy with exact (ω, k) duplicates removed, first occurrence kept.
    ConstraintSet deduplicated() const;

    bool contains(const Marking& m) const override;
    RayExit first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const override;

    bool operator==(const ConstraintSet& other) const { return items_ == other.items_; }

  private:
    std::vector<LinearConstraint> items_;
};

/// ϖ = ω·[N], one entry per transition.
using TransitionWeightRow = std::vector<Tokens>;

TransitionWeightRow transition_weights(const LinearConstraint& c, const PetriNet& net);
Tokens transition_weight(const LinearConstraint& c, const PetriNet& net, TransitionIndex t);

/// UTGT ρ((ω,k), t, p). Requires p ∈ •t, otherwise throws ConstraintError.
LinearConstraint utgt_rho(const LinearConstraint& c, TransitionIndex t, PlaceIndex p, const PetriNet& net);

/// ϱ((ω,k), t): {c} when ϖ(t) ≤ 0, otherwise { ρ(c,t,p) | p ∈ •t } in place order.
ConstraintSet transform_single(const LinearConstraint& c, TransitionIndex t, const PetriNet& net);

/// Some input place of t is forced empty throughout Q_(ω,k) (ω(p) > k).
bool is_transition_dead(const LinearConstraint& c, TransitionIndex t, const PetriNet& net);

/// Sufficient test for Γ(Q_(ω,k), t) = ∅: ϖ(t) ≤ 0 or t dead under c.
bool is_fixpoint(const LinearConstraint& c, TransitionIndex t, const PetriNet& net);

/// Places with positive weight, i.e. P_Q for Q = Q_(ω,k).
std::vector<PlaceIndex> restricted_places(const LinearConstraint& c);

}  // namespace admissify
