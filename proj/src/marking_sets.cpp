#include "admissify/marking_sets.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace admissify {

ExplicitMarkingSet::ExplicitMarkingSet(std::size_t dimension, std::initializer_list<Marking> markings)
    : dimension_(dimension) {
    for (const auto& m : markings) insert(m);
}

ExplicitMarkingSet::ExplicitMarkingSet(std::size_t dimension, const std::vector<Marking>& markings)
    : dimension_(dimension) {
    for (const auto& m : markings) insert(m);
}

void ExplicitMarkingSet::insert(const Marking& m) {
    if (m.size() != dimension_) {
        throw Error("marking " + to_string(m) + " does not have dimension " + std::to_string(dimension_));
    }
    markings_.insert(m);
}

RayExit ExplicitMarkingSet::first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const {
    // A finite set cannot contain more than size() points of a nonconstant ray.
    Marking current = base;
    for (std::int64_t n = 0;; ++n) {
        if (!contains(current)) return RayExit::at(n);
        if (std::all_of(delta.begin(), delta.end(), [](Tokens d) { return d == 0; })) return RayExit::never();
        for (std::size_t p = 0; p < current.size(); ++p) current[p] += delta[p];
    }
}

bool ExplicitMarkingSet::is_subset_of(const ExplicitMarkingSet& other) const {
    return std::includes(other.markings_.begin(), other.markings_.end(), markings_.begin(), markings_.end());
}

ExplicitMarkingSet ExplicitMarkingSet::united(const ExplicitMarkingSet& other) const {
    ExplicitMarkingSet out = *this;
    for (const auto& m : other) out.insert(m);
    return out;
}

ExplicitMarkingSet ExplicitMarkingSet::minus(const ExplicitMarkingSet& other) const {
    ExplicitMarkingSet out(dimension_);
    for (const auto& m : markings_) {
        if (!other.contains(m)) out.markings_.insert(m);
    }
    return out;
}

Marking restrict_marking(const Marking& m, std::span<const PlaceIndex> places) {
    std::vector<PlaceIndex> sorted(places.begin(), places.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Tokens> out;
    out.reserve(sorted.size());
    for (PlaceIndex p : sorted) {
        if (p >= m.size()) throw Error("place index " + std::to_string(p) + " is outside the marking");
        out.push_back(m[p]);
    }
    return Marking(std::move(out));
}

RestrictedSet all_place_restricted(const LinearConstraint& c) {
    RestrictedSet out;
    out.places = restricted_places(c);
    std::vector<Tokens> point(out.places.size(), 0);

    // Depth-first enumeration of { x ≥ 0 | Σ ω(p_i)·x_i ≤ k } over the restricted places.
    std::function<void(std::size_t, Tokens)> fill = [&](std::size_t i, Tokens budget) {
        if (i == out.places.size()) {
            out.markings.insert(Marking(point));
            return;
        }
        const Tokens w = c.weight(out.places[i]);
        for (Tokens v = 0; v * w <= budget; ++v) {
            point[i] = v;
            fill(i + 1, budget - v * w);
        }
        point[i] = 0;
    };
    fill(0, c.bound());
    return out;
}

namespace {

void require_uncontrollable(const PetriNet& net, TransitionIndex t) {
    if (t >= net.transition_count()) throw NetError("unknown transition index " + std::to_string(t));
    if (!net.is_uncontrollable(t)) {
        throw ConstraintError("escaping sets are defined for uncontrollable transitions; " + net.transition_name(t) +
                              " is controllable");
    }
}

bool orbit_escapes(const PetriNet& net, const Marking& m, TransitionIndex t, const MarkingPredicate& q,
                   std::size_t cap) {
    const OrbitCheck check = orbit_stays_in(net, m, t, q, cap);
    if (check.verdict == OrbitVerdict::Inconclusive) {
        throw InconclusiveError("orbit of " + net.transition_name(t) + " from " + to_string(m) + " is undecided");
    }
    return check.verdict == OrbitVerdict::Exits;
}

template <typename Members>
ExplicitMarkingSet split(const PetriNet& net, const MarkingPredicate& q, const Members& members, TransitionIndex t,
                         std::size_t cap, bool keep_escaping) {
    require_uncontrollable(net, t);
    ExplicitMarkingSet out(net.place_count());
    for (const auto& m : members) {
        if (!q.contains(m)) continue;
        if (orbit_escapes(net, m, t, q, cap) == keep_escaping) out.insert(m);
    }
    return out;
}

}  // namespace

ExplicitMarkingSet escaping_set(const PetriNet& net, const ExplicitMarkingSet& q, TransitionIndex t,
                                std::size_t orbit_cap) {
    return split(net, q, q, t, orbit_cap, true);
}

ExplicitMarkingSet escaping_set(const PetriNet& net, const MarkingPredicate& q, const ExplicitMarkingSet& universe,
                                TransitionIndex t, std::size_t orbit_cap) {
    return split(net, q, universe, t, orbit_cap, true);
}

ExplicitMarkingSet transforming_set(const PetriNet& net, const ExplicitMarkingSet& q, TransitionIndex t,
                                    std::size_t orbit_cap) {
    return split(net, q, q, t, orbit_cap, false);
}

ExplicitMarkingSet transforming_set(const PetriNet& net, const MarkingPredicate& q,
                                    const ExplicitMarkingSet& universe, TransitionIndex t, std::size_t orbit_cap) {
    return split(net, q, universe, t, orbit_cap, false);
}

ExplicitMarkingSet admissible_fixpoint(const PetriNet& net, const ExplicitMarkingSet& q, std::size_t orbit_cap) {
    ExplicitMarkingSet current = q;
    const auto uncontrollable = net.uncontrollable_transitions();
    bool changed = true;
    while (changed) {
        changed = false;
        for (TransitionIndex t : uncontrollable) {
            ExplicitMarkingSet escaping = escaping_set(net, current, t, orbit_cap);
            if (!escaping.empty()) {
                current = current.minus(escaping);
                changed = true;
            }
        }
    }
    return current;
}

ExplicitMarkingSet union_transform(const PetriNet& net, const ExplicitMarkingSet& q1, const ExplicitMarkingSet& q2,
                                   TransitionIndex t, std::size_t orbit_cap) {
    ExplicitMarkingSet b1 = transforming_set(net, q1, t, orbit_cap);
    ExplicitMarkingSet b2 = transforming_set(net, q2, t, orbit_cap);

    // Markings of own − own_b outside other_b whose first exit from `own` lands in other_b.
    auto grow = [&](const ExplicitMarkingSet& own, const ExplicitMarkingSet& own_b, const ExplicitMarkingSet& other_b) {
        ExplicitMarkingSet c(net.place_count());
        for (const auto& m : own) {
            if (own_b.contains(m) || other_b.contains(m)) continue;
            const OrbitCheck check = orbit_stays_in(net, m, t, own, orbit_cap);
            if (check.verdict == OrbitVerdict::Inconclusive) {
                throw InconclusiveError("orbit of " + net.transition_name(t) + " from " + to_string(m) +
                                        " is undecided");
            }
            if (check.verdict == OrbitVerdict::Exits && other_b.contains(*check.exit_at)) c.insert(m);
        }
        return c;
    };

    ExplicitMarkingSet c1 = grow(q1, b1, b2);
    ExplicitMarkingSet c2 = grow(q2, b2, b1);
    while (!c1.empty() || !c2.empty()) {
        b1 = b1.united(c1);
        b2 = b2.united(c2);
        c1 = grow(q1, b1, b2);
        c2 = grow(q2, b2, b1);
    }
    return b1.united(b2);
}

std::size_t universe_size(std::span<const Tokens> bounds, std::size_t limit) {
    std::size_t total = 1;
    for (Tokens b : bounds) {
        if (b < 0) throw Error("universe bounds must be nonnegative");
        const auto factor = static_cast<std::size_t>(b) + 1;
        if (total > limit / factor) {
            throw Error("bounded universe exceeds the limit of " + std::to_string(limit) + " markings");
        }
        total *= factor;
    }
    if (total > limit) throw Error("bounded universe exceeds the limit of " + std::to_string(limit) + " markings");
    return total;
}

void for_each_bounded_marking(std::span<const Tokens> bounds, const std::function<void(const Marking&)>& visit,
                              std::size_t limit) {
    universe_size(bounds, limit);
    Marking current(bounds.size());
    while (true) {
        visit(current);
        std::size_t i = bounds.size();
        while (i > 0) {
            --i;
            if (current[i] < bounds[i]) {
                ++current[i];
                break;
            }
            current[i] = 0;
            if (i == 0) return;
        }
        if (bounds.empty()) return;
    }
}

ExplicitMarkingSet bounded_universe(std::span<const Tokens> bounds, std::size_t limit) {
    ExplicitMarkingSet out(bounds.size());
    for_each_bounded_marking(bounds, [&](const Marking& m) { out.insert(m); }, limit);
    return out;
}

ExplicitMarkingSet expression_members(const MarkingPredicate& expr, const ExplicitMarkingSet& universe) {
    ExplicitMarkingSet out(universe.dimension());
    for (const auto& m : universe) {
        if (expr.contains(m)) out.insert(m);
    }
    return out;
}

SetComparison set_equivalence(const ExplicitMarkingSet& first, const ExplicitMarkingSet& second) {
    SetComparison out;
    auto a = first.begin();
    auto b = second.begin();
    while (a != first.end() || b != second.end()) {
        if (b == second.end() || (a != first.end() && *a < *b)) {
            return {false, *a, SetComparison::Side::OnlyInFirst};
        }
        if (a == first.end() || *b < *a) {
            return {false, *b, SetComparison::Side::OnlyInSecond};
        }
        ++a;
        ++b;
    }
    return out;
}

AdmissibilityOracle::AdmissibilityOracle(const PetriNet& net, const MarkingPredicate& legal, ExploreCaps caps)
    : net_(net), legal_(legal), caps_(caps), uncontrollable_(net.uncontrollable_transitions()) {}

Admissibility AdmissibilityOracle::classify(const Marking& m) {
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;
    if (!legal_.contains(m)) {
        memo_.emplace(m, Admissibility::WeaklyForbidden);
        return Admissibility::WeaklyForbidden;
    }

    struct Node {
        std::size_t parent;
        std::size_t depth;
    };
    std::vector<Marking> markings{m};
    std::vector<Node> nodes{{0, 0}};
    std::unordered_map<Marking, std::size_t, MarkingHash> index{{m, 0}};
    std::deque<std::size_t> frontier{0};
    bool truncated = false;

    auto mark_forbidden_chain = [&](std::size_t at) {
        while (true) {
            memo_[markings[at]] = Admissibility::WeaklyForbidden;
            if (at == 0) break;
            at = nodes[at].parent;
        }
        return Admissibility::WeaklyForbidden;
    };

    while (!frontier.empty()) {
        const std::size_t current = frontier.front();
        frontier.pop_front();
        if (nodes[current].depth >= caps_.depth_cap) {
            truncated = true;
            continue;
        }
        for (TransitionIndex t : uncontrollable_) {
            if (!enabled(net_, markings[current], t)) continue;
            Marking next = fire(net_, markings[current], t);
            if (index.contains(next)) continue;
            auto known = memo_.find(next);
            if (known != memo_.end() && known->second == Admissibility::WeaklyForbidden) {
                return mark_forbidden_chain(current);
            }
            if (!legal_.contains(next)) {
                memo_.emplace(next, Admissibility::WeaklyForbidden);
                return mark_forbidden_chain(current);
            }
            if (markings.size() >= caps_.state_cap) {
                memo_[m] = Admissibility::Inconclusive;
                return Admissibility::Inconclusive;
            }
            const std::size_t id = markings.size();
            index.emplace(next, id);
            markings.push_back(next);
            nodes.push_back({current, nodes[current].depth + 1});
            // A known-admissible marking has a legal reach set; no need to expand it.
            if (known == memo_.end() || known->second != Admissibility::Admissible) frontier.push_back(id);
        }
    }
    if (truncated) {
        memo_[m] = Admissibility::Inconclusive;
        return Admissibility::Inconclusive;
    }
    for (const auto& visited : markings) memo_[visited] = Admissibility::Admissible;
    return Admissibility::Admissible;
}

namespace {

void accumulate(OracleSet& out, AdmissibilityOracle& oracle, const MarkingPredicate& legal, const Marking& m) {
    if (!legal.contains(m)) return;
    switch (oracle.classify(m)) {
    case Admissibility::Admissible:
        out.admissible.insert(m);
        break;
    case Admissibility::Inconclusive:
        if (!out.first_inconclusive) out.first_inconclusive = m;
        ++out.inconclusive;
        break;
    case Admissibility::WeaklyForbidden:
        break;
    }
}

}  // namespace

OracleSet oracle_admissible_set(const PetriNet& net, const MarkingPredicate& legal, std::span<const Tokens> bounds,
                                const ExploreCaps& caps) {
    if (bounds.size() != net.place_count()) throw Error("universe bounds do not match the place count");
    OracleSet out{ExplicitMarkingSet(net.place_count()), 0, std::nullopt};
    AdmissibilityOracle oracle(net, legal, caps);
    for_each_bounded_marking(bounds, [&](const Marking& m) { accumulate(out, oracle, legal, m); });
    return out;
}

OracleSet oracle_admissible_set(const PetriNet& net, const MarkingPredicate& legal,
                                const ExplicitMarkingSet& universe, const ExploreCaps& caps) {
    OracleSet out{ExplicitMarkingSet(net.place_count()), 0, std::nullopt};
    AdmissibilityOracle oracle(net, legal, caps);
    for (const auto& m : universe) accumulate(out, oracle, legal, m);
    return out;
}

}  // namespace admissify
