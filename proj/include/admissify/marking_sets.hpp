#pragma once

#include "admissify/constraint.hpp"
#include "admissify/net.hpp"

#include <functional>
#include <set>
#include <unordered_map>

namespace admissify {

/// Finite marking set over a fixed place dimension, kept in lexicographic order.
class ExplicitMarkingSet final : public MarkingPredicate {
  public:
    explicit ExplicitMarkingSet(std::size_t dimension) : dimension_(dimension) {}
    ExplicitMarkingSet(std::size_t dimension, std::initializer_list<Marking> markings);
    ExplicitMarkingSet(std::size_t dimension, const std::vector<Marking>& markings);

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return markings_.size(); }
    bool empty() const { return markings_.empty(); }
    auto begin() const { return markings_.begin(); }
    auto end() const { return markings_.end(); }

    void insert(const Marking& m);
    void erase(const Marking& m) { markings_.erase(m); }
    bool contains(const Marking& m) const override { return markings_.contains(m); }
    RayExit first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const override;

    bool is_subset_of(const ExplicitMarkingSet& other) const;
    ExplicitMarkingSet united(const ExplicitMarkingSet& other) const;
    ExplicitMarkingSet minus(const ExplicitMarkingSet& other) const;

    bool operator==(const ExplicitMarkingSet& other) const {
        return dimension_ == other.dimension_ && markings_ == other.markings_;
    }

  private:
    std::size_t dimension_;
    std::set<Marking> markings_;
};

/// Q|_{P'} for a finite set: the restricted markings and the place subset they range over.
struct RestrictedSet {
    std::vector<PlaceIndex> places;
    std::set<Marking> markings;
};

/// m|_{P'}; places are taken in canonical (ascending) order.
Marking restrict_marking(const Marking& m, std::span<const PlaceIndex> places);

/// Q* = Q_(ω,k)|_{P_Q}. Finite because every retained place has positive weight.
RestrictedSet all_place_restricted(const LinearConstraint& c);

/// Γ(Q, t) for a finite Q. Throws ConstraintError if t is controllable.
ExplicitMarkingSet escaping_set(const PetriNet& net, const ExplicitMarkingSet& q, TransitionIndex t,
                                std::size_t orbit_cap = 100000);
/// Γ(Q, t) ∩ universe for a predicate-defined Q. Orbits are evaluated against
/// the predicate itself, never against the universe.
ExplicitMarkingSet escaping_set(const PetriNet& net, const MarkingPredicate& q, const ExplicitMarkingSet& universe,
                                TransitionIndex t, std::size_t orbit_cap = 100000);

/// Q_t = Q − Γ(Q, t).
ExplicitMarkingSet transforming_set(const PetriNet& net, const ExplicitMarkingSet& q, TransitionIndex t,
                                    std::size_t orbit_cap = 100000);
ExplicitMarkingSet transforming_set(const PetriNet& net, const MarkingPredicate& q,
                                    const ExplicitMarkingSet& universe, TransitionIndex t,
                                    std::size_t orbit_cap = 100000);

/// A(Q) by repeatedly replacing Q with Q_t while some uncontrollable t has Γ(Q, t) ≠ ∅.
ExplicitMarkingSet admissible_fixpoint(const PetriNet& net, const ExplicitMarkingSet& q,
                                       std::size_t orbit_cap = 100000);

/// (Q1 ∪ Q2)_t computed from (Q1)_t and (Q2)_t by growing each side with the
/// markings whose first exit from their own set lands in the other side's result.
ExplicitMarkingSet union_transform(const PetriNet& net, const ExplicitMarkingSet& q1, const ExplicitMarkingSet& q2,
                                   TransitionIndex t, std::size_t orbit_cap = 100000);

/// Default ceiling on the number of markings a bounded universe may hold.
inline constexpr std::size_t kDefaultUniverseLimit = 5'000'000;

/// Number of markings with m(p) ≤ bounds[p]; throws Error above `limit`.
std::size_t universe_size(std::span<const Tokens> bounds, std::size_t limit = kDefaultUniverseLimit);

/// Calls `visit` for each marking with m(p) ≤ bounds[p], in lexicographic order.
void for_each_bounded_marking(std::span<const Tokens> bounds, const std::function<void(const Marking&)>& visit,
                              std::size_t limit = kDefaultUniverseLimit);

ExplicitMarkingSet bounded_universe(std::span<const Tokens> bounds, std::size_t limit = kDefaultUniverseLimit);

/// Members of `universe` that satisfy `expr`.
ExplicitMarkingSet expression_members(const MarkingPredicate& expr, const ExplicitMarkingSet& universe);

struct SetComparison {
    enum class Side { OnlyInFirst, OnlyInSecond };
    bool equal = true;
    std::optional<Marking> counterexample;  // lexicographically smallest difference
    Side side = Side::OnlyInFirst;
};

SetComparison set_equivalence(const ExplicitMarkingSet& first, const ExplicitMarkingSet& second);

/// Brute-force admissibility of individual markings w.r.t. a legal set.
/// Results are memoised across queries: once a marking's uncontrollable reach
/// set is known to be legal, every marking in it is admissible too.
class AdmissibilityOracle {
  public:
    AdmissibilityOracle(const PetriNet& net, const MarkingPredicate& legal, ExploreCaps caps = {});

    Admissibility classify(const Marking& m);
    const ExploreCaps& caps() const { return caps_; }

  private:
    const PetriNet& net_;
    const MarkingPredicate& legal_;
    ExploreCaps caps_;
    std::vector<TransitionIndex> uncontrollable_;
    std::unordered_map<Marking, Admissibility, MarkingHash> memo_;
};

struct OracleSet {
    ExplicitMarkingSet admissible;
    std::size_t inconclusive = 0;
    std::optional<Marking> first_inconclusive;
};

/// { m ∈ universe | m legal and R(N, m, u_zero) ⊆ legal }.
OracleSet oracle_admissible_set(const PetriNet& net, const MarkingPredicate& legal, std::span<const Tokens> bounds,
                                const ExploreCaps& caps = {});
OracleSet oracle_admissible_set(const PetriNet& net, const MarkingPredicate& legal,
                                const ExplicitMarkingSet& universe, const ExploreCaps& caps = {});

}  // namespace admissify
