#include "admissify/constraint.hpp"

#include <algorithm>

namespace admissify {

namespace {

void check_dimension(const LinearConstraint& c, const PetriNet& net) {
    if (c.dimension() != net.place_count()) {
        throw ConstraintError("constraint has " + std::to_string(c.dimension()) + " weights, net has " +
                              std::to_string(net.place_count()) + " places");
    }
}

Tokens dot(std::span<const Tokens> a, std::span<const Tokens> b) {
    Tokens sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

Tokens floor_div(Tokens a, Tokens b) {
    Tokens q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

LinearConstraint::LinearConstraint(std::vector<Tokens> weights, Tokens bound)
    : weights_(std::move(weights)), bound_(bound) {
    if (bound_ < 0) throw ConstraintError("constraint bound must be nonnegative, got " + std::to_string(bound_));
    for (Tokens w : weights_) {
        if (w < 0) throw ConstraintError("constraint weights must be nonnegative");
    }
}

bool LinearConstraint::is_zero() const {
    return std::all_of(weights_.begin(), weights_.end(), [](Tokens w) { return w == 0; });
}

Tokens LinearConstraint::apply(const Marking& m) const {
    if (m.size() != weights_.size()) {
        throw ConstraintError("marking dimension " + std::to_string(m.size()) + " does not match constraint dimension " +
                              std::to_string(weights_.size()));
    }
    return dot(weights_, m.tokens());
}

RayExit LinearConstraint::first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const {
    const Tokens start = apply(base);
    if (start > bound_) return RayExit::at(0);
    const Tokens gain = dot(weights_, delta);
    if (gain <= 0) return RayExit::never();
    return RayExit::at(floor_div(bound_ - start, gain) + 1);
}

void ConstraintSet::append(const ConstraintSet& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

ConstraintSet ConstraintSet::deduplicated() const {
    ConstraintSet out;
    for (const auto& c : items_) {
        if (std::find(out.items_.begin(), out.items_.end(), c) == out.items_.end()) out.items_.push_back(c);
    }
    return out;
}

bool ConstraintSet::contains(const Marking& m) const {
    return std::any_of(items_.begin(), items_.end(), [&](const LinearConstraint& c) { return c.contains(m); });
}

RayExit ConstraintSet::first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const {
    // Each disjunct holds on a prefix [0, exit) of the ray; the union is the longest prefix.
    if (items_.empty()) return RayExit::at(0);
    std::int64_t best = 0;
    for (const auto& c : items_) {
        const RayExit r = c.first_exit_on_ray(base, delta);
        if (r.kind == RayExit::Kind::Never) return RayExit::never();
        best = std::max(best, r.step);
    }
    return RayExit::at(best);
}

Tokens transition_weight(const LinearConstraint& c, const PetriNet& net, TransitionIndex t) {
    check_dimension(c, net);
    return dot(c.weights(), net.incidence_column(t));
}

TransitionWeightRow transition_weights(const LinearConstraint& c, const PetriNet& net) {
    check_dimension(c, net);
    TransitionWeightRow row(net.transition_count());
    for (TransitionIndex t = 0; t < net.transition_count(); ++t) row[t] = dot(c.weights(), net.incidence_column(t));
    return row;
}

LinearConstraint utgt_rho(const LinearConstraint& c, TransitionIndex t, PlaceIndex p, const PetriNet& net) {
    check_dimension(c, net);
    if (!net.in_preset(p, t)) {
        throw ConstraintError("place " + net.place_name(p) + " is not an input place of " + net.transition_name(t));
    }
    std::vector<Tokens> weights(c.weights().begin(), c.weights().end());
    if (net.in_postset(p, t)) {
        weights[p] = c.bound() + 1;
    } else {
        weights[p] += transition_weight(c, net, t);
    }
    return LinearConstraint(std::move(weights), c.bound());
}

ConstraintSet transform_single(const LinearConstraint& c, TransitionIndex t, const PetriNet& net) {
    const Tokens gain = transition_weight(c, net, t);
    if (gain <= 0) return ConstraintSet{c};
    if (net.preset(t).empty()) {
        throw UnsatisfiableTransformation("uncontrollable source transition " + net.transition_name(t) +
                                          " has positive weight " + std::to_string(gain) +
                                          "; no constraint can block it");
    }
    ConstraintSet out;
    for (PlaceIndex p : net.preset(t)) out.push_back(utgt_rho(c, t, p, net));
    return out;
}

bool is_transition_dead(const LinearConstraint& c, TransitionIndex t, const PetriNet& net) {
    check_dimension(c, net);
    const auto pre = net.preset(t);
    return std::any_of(pre.begin(), pre.end(), [&](PlaceIndex p) { return c.weight(p) > c.bound(); });
}

bool is_fixpoint(const LinearConstraint& c, TransitionIndex t, const PetriNet& net) {
    return transition_weight(c, net, t) <= 0 || is_transition_dead(c, t, net);
}

std::vector<PlaceIndex> restricted_places(const LinearConstraint& c) {
    std::vector<PlaceIndex> out;
    for (PlaceIndex p = 0; p < c.dimension(); ++p) {
        if (c.weight(p) > 0) out.push_back(p);
    }
    return out;
}

}  // namespace admissify
