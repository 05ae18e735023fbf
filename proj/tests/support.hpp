#pragma once

#include "admissify/constraint.hpp"
#include "admissify/expression.hpp"
#include "admissify/net.hpp"
#include "admissify/net_file.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace admissify::testing {

inline std::string fixture_path(const std::string& name) { return std::string(ADMISSIFY_FIXTURE_DIR) + "/" + name; }

inline NetFile load_fixture(const std::string& name) { return load_net_file(fixture_path(name + ".net")); }

using Terms = std::vector<std::pair<std::string, Tokens>>;

inline std::vector<Tokens> weights_of(const PetriNet& net, const Terms& terms) {
    std::vector<Tokens> w(net.place_count(), 0);
    for (const auto& [place, coefficient] : terms) w[net.place_index(place)] += coefficient;
    return w;
}

/// Sum of the listed places with unit weights, e.g. sum(net, {"p1", "p3"}).
inline std::vector<Tokens> sum(const PetriNet& net, const std::vector<std::string>& places) {
    Terms terms;
    for (const auto& p : places) terms.emplace_back(p, 1);
    return weights_of(net, terms);
}

inline LinearConstraint lc(const PetriNet& net, const Terms& terms, Tokens bound) {
    return LinearConstraint(weights_of(net, terms), bound);
}

inline std::vector<Tokens> sum(const PetriNet& net, std::initializer_list<std::string> places) {
    return sum(net, std::vector<std::string>(places));
}

inline LinearConstraint lc(const PetriNet& net, const std::vector<std::string>& places, Tokens bound) {
    return LinearConstraint(sum(net, places), bound);
}

// Braced place lists resolve here rather than to Terms.
inline LinearConstraint lc(const PetriNet& net, std::initializer_list<std::string> places, Tokens bound) {
    return lc(net, std::vector<std::string>(places), bound);
}

inline Atom le(std::vector<Tokens> w, Tokens b) { return at_most(std::move(w), b); }
inline Atom ge(std::vector<Tokens> w, Tokens b) { return at_least(std::move(w), b); }

/// Atoms of a block as a sorted list, so blocks compare by content.
inline std::vector<Atom> atom_multiset(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

inline bool same_atoms(const ConjunctionBlock& block, const std::vector<Atom>& expected) {
    return atom_multiset(block.atoms) == atom_multiset(expected);
}

/// ω·m = b, written the way reduce_block emits it.
inline std::vector<Atom> eq(const std::vector<Tokens>& w, Tokens b) { return {ge(w, b), le(w, b)}; }

/// lo ≤ ω·m ≤ hi
inline std::vector<Atom> within(const std::vector<Tokens>& w, Tokens lo, Tokens hi) { return {ge(w, lo), le(w, hi)}; }

inline std::vector<Atom> atoms(std::initializer_list<std::vector<Atom>> parts) {
    std::vector<Atom> out;
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

/// Reduced blocks equal the expected atom lists, position by position.
inline bool reduced_blocks_match(const std::vector<ConjunctionBlock>& blocks,
                                 const std::vector<std::vector<Atom>>& expected) {
    if (blocks.size() != expected.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!same_atoms(reduce_block(blocks[i]), expected[i])) return false;
    }
    return true;
}

}  // namespace admissify::testing
