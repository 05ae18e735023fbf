#pragma once

#include "admissify/marking_sets.hpp"
#include "admissify/net.hpp"

#include <optional>
#include <string>
#include <vector>

namespace admissify {

struct Verdict {
    enum class Kind { Equal, Counterexample, Inconclusive };
    Kind kind = Kind::Equal;
    /// Set for Counterexample (smallest differing marking) and for
    /// Inconclusive (first marking the oracle could not decide).
    std::optional<Marking> marking;
    /// For Counterexample: true if the marking is admissible but the
    /// candidate rejects it, false for the opposite.
    bool admissible = false;
    std::vector<Tokens> bounds;
    ExploreCaps caps;
    std::size_t universe = 0;
    std::size_t admissible_count = 0;
    std::size_t inconclusive_count = 0;
};

std::string to_string(Verdict::Kind kind);

/// Compares `candidate` with the admissible set of `legal` on the markings
/// with m(p) ≤ bounds[p]. A counterexample is re-checked by evaluating the
/// candidate and re-running the reachability search from scratch before it
/// is reported; Error is thrown if the two disagree.
Verdict verify_against_oracle(const PetriNet& net, const MarkingPredicate& legal, const MarkingPredicate& candidate,
                              std::span<const Tokens> bounds, const ExploreCaps& caps = {});

}  // namespace admissify
