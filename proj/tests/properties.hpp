#pragma once

#include "admissify/constraint.hpp"
#include "admissify/net.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace admissify::testing {

/// A small random net with a legal constraint, a disjunction and universe bounds.
struct RandomCase {
    PetriNet net;
    LinearConstraint legal;
    ConstraintSet disjunction;
    std::vector<Tokens> bounds;
    std::string summary;
};

struct CaseLimits {
    std::size_t max_places = 5;
    std::size_t max_transitions = 4;
    Tokens max_bound = 4;
    double conservative_share = 0.75;
    double self_loop_share = 0.1;
};

RandomCase random_case(std::mt19937_64& rng, const CaseLimits& limits = {});

enum class Property {
    TransformingSubset,     // Q_t ⊆ Q and Q_t = {m ∈ Q | R_t(m) ⊆ Q}
    Idempotence,            // Γ(Q_t, t) = ∅, Q_tt = Q_t
    GainAfterRho,           // ρ zeroes the gain at p ∈ •t\t• and keeps it at self-loop inputs
    EmptyComplement,        // C_{i→j} = ∅ iff ϖ_i(t) ≤ 0 or ϖ_j(t) ≥ 0
    ChainContainment,       // each trace step is a subset of the previous one
    StepPreservesAdmissible,
    UnionTransform,         // union_transform = transforming_set of the union
    SingleTransform,        // ϱ(c, t) describes (Q_c)_t
    DisjunctionTransform,   // one step of ∨(W) describes (Q_∨(W))_t
    UnionSuperset,          // A(Q1 ∪ Q2) ⊇ A(Q1) ∪ A(Q2)
    FixpointIsAdmissible,   // A(Q) by iteration equals the per-marking reachability verdict
    CompleteIsFixpoint,     // a Complete trace has no escaping markings and equals A(L)
};

std::string to_string(Property p);
std::vector<Property> all_properties();

struct PropertyTally {
    std::size_t checked = 0;
    std::size_t discarded = 0;
    std::size_t failed = 0;
};

struct SuiteReport {
    std::size_t cases = 0;
    std::map<Property, PropertyTally> tallies;
    std::vector<std::string> failures;  // first few, with the case summary

    std::size_t checked() const;
    std::size_t discarded() const;
    std::size_t failed() const;
    double discard_share() const;
};

/// Runs the selected properties on `cases` random cases drawn from `seed`.
SuiteReport run_property_suite(std::uint64_t seed, std::size_t cases, const std::vector<Property>& properties,
                               const CaseLimits& limits = {});

}  // namespace admissify::testing
