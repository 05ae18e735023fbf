#include "admissify/verify.hpp"

namespace admissify {

std::string to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::Equal: return "equal";
        case Verdict::Kind::Counterexample: return "counterexample";
        case Verdict::Kind::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict verify_against_oracle(const PetriNet& net, const MarkingPredicate& legal, const MarkingPredicate& candidate,
                              std::span<const Tokens> bounds, const ExploreCaps& caps) {
    if (bounds.size() != net.place_count()) throw Error("universe bounds do not match the place count");
    Verdict v;
    v.bounds.assign(bounds.begin(), bounds.end());
    v.caps = caps;
    v.universe = universe_size(bounds);

    AdmissibilityOracle oracle(net, legal, caps);
    std::optional<Marking> first_inconclusive;
    for_each_bounded_marking(bounds, [&](const Marking& m) {
        if (v.kind == Verdict::Kind::Counterexample) return;
        Admissibility a = Admissibility::WeaklyForbidden;
        if (legal.contains(m)) a = oracle.classify(m);
        if (a == Admissibility::Inconclusive) {
            ++v.inconclusive_count;
            if (!first_inconclusive) first_inconclusive = m;
            return;
        }
        const bool admissible = a == Admissibility::Admissible;
        if (admissible) ++v.admissible_count;
        if (admissible != candidate.contains(m)) {
            v.kind = Verdict::Kind::Counterexample;
            v.marking = m;
            v.admissible = admissible;
        }
    });

    if (v.kind == Verdict::Kind::Counterexample) {
        const Marking& m = *v.marking;
        const auto fresh = uncontrollable_explore(
            net, m, [&](const Marking& x) { return !legal.contains(x); }, caps);
        const bool admissible = legal.contains(m) && fresh.verdict == Admissibility::Admissible;
        if (fresh.verdict == Admissibility::Inconclusive || admissible != v.admissible ||
            candidate.contains(m) == admissible) {
            throw Error("counterexample " + to_string(m) + " did not survive re-checking");
        }
        return v;
    }
    if (v.inconclusive_count > 0) {
        v.kind = Verdict::Kind::Inconclusive;
        v.marking = first_inconclusive;
    }
    return v;
}

}  // namespace admissify
