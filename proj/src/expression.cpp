#include "admissify/expression.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace admissify {

namespace {

constexpr Tokens kInfinity = std::numeric_limits<Tokens>::max();

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

Tokens ceil_div(Tokens a, Tokens b) { return -floor_div(-a, b); }

std::vector<Tokens> unit(std::size_t dimension, PlaceIndex p) {
    std::vector<Tokens> w(dimension, 0);
    w[p] = 1;
    return w;
}

// Values of n ≥ 0 on which an atom holds along base + n·delta, as [lo, hi].
struct Interval {
    Tokens lo = 0;
    Tokens hi = kInfinity;
    bool empty() const { return lo > hi; }
};

Interval atom_interval(const Atom& a, const Marking& base, std::span<const Tokens> delta) {
    const Tokens start = a.apply(base);
    const Tokens gain = dot(a.weights, delta);
    if (a.relation == Relation::LessEqual) {
        if (gain <= 0) return start <= a.bound ? Interval{} : Interval{1, 0};
        return {0, floor_div(a.bound - start, gain)};
    }
    if (gain <= 0) return start >= a.bound ? Interval{} : Interval{1, 0};
    return {std::max<Tokens>(0, ceil_div(a.bound - start, gain)), kInfinity};
}

}  // namespace

Tokens Atom::apply(const Marking& m) const {
    if (m.size() != weights.size()) {
        throw ConstraintError("marking dimension " + std::to_string(m.size()) + " does not match atom dimension " +
                              std::to_string(weights.size()));
    }
    return dot(weights, m.tokens());
}

bool Atom::holds(const Marking& m) const {
    const Tokens v = apply(m);
    return relation == Relation::LessEqual ? v <= bound : v >= bound;
}

Atom at_most(std::vector<Tokens> weights, Tokens bound) { return {std::move(weights), Relation::LessEqual, bound}; }
Atom at_least(std::vector<Tokens> weights, Tokens bound) { return {std::move(weights), Relation::GreaterEqual, bound}; }

bool ConjunctionBlock::holds(const Marking& m) const {
    if (unsatisfiable) return false;
    return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.holds(m); });
}

ConjunctionBlock plain_block(const LinearConstraint& c, std::size_t index) {
    ConjunctionBlock b;
    b.atoms.push_back(at_most(std::vector<Tokens>(c.weights().begin(), c.weights().end()), c.bound()));
    b.origin = PlainOrigin{index};
    return b;
}

LogicExpression LogicExpression::from_constraints(const ConstraintSet& w) {
    LogicExpression e;
    for (std::size_t i = 0; i < w.size(); ++i) e.add(plain_block(w[i], i));
    return e;
}

bool LogicExpression::has_delta_blocks() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](const ConjunctionBlock& b) { return b.is_delta(); });
}

ConstraintSet LogicExpression::plain_constraints() const {
    ConstraintSet out;
    for (const auto& b : blocks_) {
        if (b.is_delta()) continue;
        const Atom& a = b.atoms.front();
        out.push_back(LinearConstraint(a.weights, a.bound));
    }
    return out;
}

bool LogicExpression::contains(const Marking& m) const {
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const ConjunctionBlock& b) { return b.holds(m); });
}

RayExit LogicExpression::first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const {
    std::vector<Interval> spans;
    for (const auto& b : blocks_) {
        if (b.unsatisfiable) continue;
        Interval span;
        for (const auto& a : b.atoms) {
            const Interval i = atom_interval(a, base, delta);
            span.lo = std::max(span.lo, i.lo);
            span.hi = std::min(span.hi, i.hi);
            if (span.empty()) break;
        }
        if (!span.empty()) spans.push_back(span);
    }
    std::sort(spans.begin(), spans.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Tokens reach = 0;  // smallest n not yet known to be covered
    for (const auto& s : spans) {
        if (s.lo > reach) break;
        if (s.hi == kInfinity) return RayExit::never();
        reach = std::max(reach, s.hi + 1);
    }
    return RayExit::at(reach);
}

bool evaluate(const LogicExpression& expr, const Marking& m) { return expr.contains(m); }

std::vector<ConjunctionBlock> complementary_blocks(const LinearConstraint& ci, const LinearConstraint& cj,
                                                   TransitionIndex t, const PetriNet& net, std::size_t from,
                                                   std::size_t to) {
    if (!net.is_uncontrollable(t)) {
        throw ConstraintError("transition " + net.transition_name(t) + " is controllable");
    }
    const Tokens gi = transition_weight(ci, net, t);
    const Tokens gj = transition_weight(cj, net, t);
    if (gi <= 0 || gj >= 0) return {};

    const std::vector<Tokens> wi(ci.weights().begin(), ci.weights().end());
    const std::vector<Tokens> wj(cj.weights().begin(), cj.weights().end());
    const Tokens ki = ci.bound();
    const Tokens kj = cj.bound();
    const Tokens n = ki / gi + 1;

    std::vector<ConjunctionBlock> out;
    for (Tokens lambda = 1; lambda <= n; ++lambda) {
        ConjunctionBlock b;
        b.origin = DeltaOrigin{from, to, t, lambda};
        for (PlaceIndex p : net.preset(t)) b.atoms.push_back(at_least(unit(net.place_count(), p), lambda));
        // Grouped by constraint: first ω_i, then ω_j.
        b.atoms.push_back(at_most(wi, ki - (lambda - 1) * gi));
        b.atoms.push_back(at_least(wi, ki - lambda * gi + 1));
        b.atoms.push_back(at_least(wj, kj + 1));
        b.atoms.push_back(at_most(wj, kj - lambda * gj));
        out.push_back(std::move(b));
    }
    return out;
}

LogicExpression StepResult::expression() const {
    LogicExpression e = LogicExpression::from_constraints(plain);
    for (const auto& g : groups) {
        for (const auto& b : g.blocks) e.add(b);
    }
    return e;
}

StepResult transform_disjunction_step(const ConstraintSet& w, TransitionIndex t, const PetriNet& net) {
    if (!net.is_uncontrollable(t)) {
        throw ConstraintError("transition " + net.transition_name(t) + " is controllable");
    }
    StepResult r;
    r.transition = t;
    std::vector<Tokens> gains;
    for (const auto& c : w) {
        gains.push_back(transition_weight(c, net, t));
        r.plain.append(transform_single(c, t, net));
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (gains[i] <= 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (gains[j] >= 0) continue;
            r.groups.push_back({i, j, complementary_blocks(w[i], w[j], t, net, i, j)});
        }
    }
    return r;
}

ConjunctionBlock reduce_block(const ConjunctionBlock& block) {
    ConjunctionBlock out;
    out.origin = block.origin;
    const std::size_t dimension = block.atoms.empty() ? 0 : block.atoms.front().weights.size();

    auto contradiction = [&] {
        out.atoms = {at_least(std::vector<Tokens>(dimension, 0), 1)};
        out.unsatisfiable = true;
        return out;
    };
    if (block.unsatisfiable) return contradiction();

    struct Range {
        std::optional<Tokens> lo;
        std::optional<Tokens> hi;
    };
    std::vector<std::vector<Tokens>> order;
    std::map<std::vector<Tokens>, Range> ranges;
    for (const auto& a : block.atoms) {
        auto [it, inserted] = ranges.try_emplace(a.weights);
        if (inserted) order.push_back(a.weights);
        Range& r = it->second;
        if (a.relation == Relation::LessEqual) {
            r.hi = r.hi ? std::min(*r.hi, a.bound) : a.bound;
        } else {
            r.lo = r.lo ? std::max(*r.lo, a.bound) : a.bound;
        }
    }

    for (const auto& w : order) {
        const Range& r = ranges.at(w);
        const bool zero = std::all_of(w.begin(), w.end(), [](Tokens x) { return x == 0; });
        const Tokens lo = std::max<Tokens>(0, r.lo.value_or(0));
        if (zero) {
            if (lo > 0 || (r.hi && *r.hi < 0)) return contradiction();
            continue;
        }
        if (r.hi && lo > *r.hi) return contradiction();
        if (r.hi && lo == *r.hi) {
            out.atoms.push_back(at_least(w, lo));
            out.atoms.push_back(at_most(w, lo));
            continue;
        }
        if (lo > 0) out.atoms.push_back(at_least(w, lo));
        if (r.hi) out.atoms.push_back(at_most(w, *r.hi));
    }
    return out;
}

Tokens default_probe_bound(const ConjunctionBlock& block) {
    Tokens b = 0;
    for (const auto& a : block.atoms) b = std::max(b, a.bound);
    return b;
}

bool block_satisfiable_bounded(const ConjunctionBlock& block, std::optional<Tokens> bound) {
    if (block.unsatisfiable) return false;
    if (block.atoms.empty()) return true;
    const Tokens limit = bound.value_or(default_probe_bound(block));
    const std::size_t dimension = block.atoms.front().weights.size();

    // Only places mentioned by some atom matter; the rest stay at zero.
    std::vector<PlaceIndex> places;
    for (PlaceIndex p = 0; p < dimension; ++p) {
        if (std::any_of(block.atoms.begin(), block.atoms.end(), [&](const Atom& a) { return a.weights[p] > 0; })) {
            places.push_back(p);
        }
    }

    Marking m(dimension);
    std::vector<Tokens> partial(block.atoms.size(), 0);
    auto search = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == places.size()) {
            for (std::size_t i = 0; i < block.atoms.size(); ++i) {
                const Atom& a = block.atoms[i];
                if (a.relation == Relation::GreaterEqual && partial[i] < a.bound) return false;
            }
            return true;
        }
        const PlaceIndex p = places[depth];
        for (Tokens v = 0; v <= limit; ++v) {
            bool over = false;
            for (std::size_t i = 0; i < block.atoms.size(); ++i) {
                partial[i] += block.atoms[i].weights[p] * v;
                const Atom& a = block.atoms[i];
                if (a.relation == Relation::LessEqual && partial[i] > a.bound) over = true;
            }
            m[p] = v;
            const bool found = !over && self(self, depth + 1);
            for (std::size_t i = 0; i < block.atoms.size(); ++i) partial[i] -= block.atoms[i].weights[p] * v;
            if (found) return true;
            // Values only grow from here, so a violated upper bound stays violated.
            if (over) break;
        }
        m[p] = 0;
        return false;
    };
    return search(search, 0);
}

}  // namespace admissify
