#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace admissify {

using Tokens = std::int64_t;
using PlaceIndex = std::size_t;
using TransitionIndex = std::size_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Structural problem in a net description (duplicate id, dangling arc, ...).
class NetError : public Error {
  public:
    using Error::Error;
};

/// An exploration or orbit evaluation exhausted its caps before deciding.
class InconclusiveError : public Error {
  public:
    using Error::Error;
};

/// Token count per place, indexed in the net's canonical place order.
class Marking {
  public:
    Marking() = default;
    explicit Marking(std::size_t places) : tokens_(places, 0) {}
    explicit Marking(std::vector<Tokens> tokens) : tokens_(std::move(tokens)) {}
    Marking(std::initializer_list<Tokens> tokens) : tokens_(tokens) {}

    std::size_t size() const { return tokens_.size(); }
    Tokens operator[](PlaceIndex p) const { return tokens_[p]; }
    Tokens& operator[](PlaceIndex p) { return tokens_[p]; }
    std::span<const Tokens> tokens() const { return tokens_; }
    auto begin() const { return tokens_.begin(); }
    auto end() const { return tokens_.end(); }

    bool is_zero() const;

    auto operator<=>(const Marking&) const = default;
    bool operator==(const Marking&) const = default;

  private:
    std::vector<Tokens> tokens_;
};

struct MarkingHash {
    std::size_t operator()(const Marking& m) const noexcept;
};

enum class Controllability { Controllable, Uncontrollable };

struct PlaceDecl {
    std::string id;
    Tokens initial = 0;
};

struct TransitionDecl {
    std::string id;
    Controllability control = Controllability::Uncontrollable;
};

/// Directed arc between a place and a transition; the direction is inferred
/// from which endpoint names a place.
struct ArcDecl {
    std::string from;
    std::string to;
    Tokens weight = 1;
};

struct NetDescription {
    std::string name;
    std::vector<PlaceDecl> places;
    std::vector<TransitionDecl> transitions;
    std::vector<ArcDecl> arcs;
};

/// Ordinary Petri net N = (P, T_u ∪ T_c, F). Immutable after build().
class PetriNet {
  public:
    /// Validates the description. Throws NetError on duplicate or clashing ids,
    /// unknown arc endpoints, place-to-place / transition-to-transition arcs,
    /// repeated arcs and arc weights other than 1.
    static PetriNet build(const NetDescription& description);

    const std::string& name() const { return name_; }
    std::size_t place_count() const { return places_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    const std::string& place_name(PlaceIndex p) const { return places_.at(p); }
    const std::string& transition_name(TransitionIndex t) const { return transitions_.at(t); }
    std::span<const std::string> place_names() const { return places_; }

    std::optional<PlaceIndex> find_place(const std::string& id) const;
    std::optional<TransitionIndex> find_transition(const std::string& id) const;
    /// Like find_*, but throws NetError for unknown ids.
    PlaceIndex place_index(const std::string& id) const;
    TransitionIndex transition_index(const std::string& id) const;

    bool is_uncontrollable(TransitionIndex t) const { return uncontrollable_.at(t); }
    std::vector<TransitionIndex> uncontrollable_transitions() const;

    /// •t and t• in canonical place order. Self-loop places appear in both.
    std::span<const PlaceIndex> preset(TransitionIndex t) const { return presets_.at(t); }
    std::span<const PlaceIndex> postset(TransitionIndex t) const { return postsets_.at(t); }
    bool in_preset(PlaceIndex p, TransitionIndex t) const;
    bool in_postset(PlaceIndex p, TransitionIndex t) const;

    /// [N](p, t) = post - pre, so self-loop places read 0.
    Tokens incidence(PlaceIndex p, TransitionIndex t) const { return incidence_.at(t).at(p); }
    /// Column Δ_t of the incidence matrix.
    std::span<const Tokens> incidence_column(TransitionIndex t) const { return incidence_.at(t); }

    const Marking& initial_marking() const { return initial_; }
    const NetDescription& description() const { return description_; }

  private:
    PetriNet() = default;

    std::string name_;
    std::vector<std::string> places_;
    std::vector<std::string> transitions_;
    std::vector<bool> uncontrollable_;
    std::vector<std::vector<PlaceIndex>> presets_;
    std::vector<std::vector<PlaceIndex>> postsets_;
    std::vector<std::vector<Tokens>> incidence_;
    std::unordered_map<std::string, PlaceIndex> place_lookup_;
    std::unordered_map<std::string, TransitionIndex> transition_lookup_;
    Marking initial_;
    NetDescription description_;
};

/// Answer to "where does the ray base + n·delta (n = 0, 1, ...) first leave the set?"
/// Rays are only formed from growing orbits, so delta ≥ 0 componentwise.
struct RayExit {
    enum class Kind { Never, At, Unknown };
    Kind kind = Kind::Unknown;
    std::int64_t step = 0;

    static RayExit never() { return {Kind::Never, 0}; }
    static RayExit at(std::int64_t n) { return {Kind::At, n}; }
    static RayExit unknown() { return {Kind::Unknown, 0}; }
};

/// A (possibly infinite) marking set that can be queried for membership.
/// Implementations that can decide membership along a nonnegative ray exactly
/// override first_exit_on_ray; infinite single-transition orbits rely on it.
class MarkingPredicate {
  public:
    virtual ~MarkingPredicate() = default;
    virtual bool contains(const Marking& m) const = 0;
    virtual RayExit first_exit_on_ray(const Marking& base, std::span<const Tokens> delta) const;
};

/// Adapts an arbitrary callable. Rays are never decided analytically.
class FunctionPredicate final : public MarkingPredicate {
  public:
    explicit FunctionPredicate(std::function<bool(const Marking&)> fn) : fn_(std::move(fn)) {}
    bool contains(const Marking& m) const override { return fn_(m); }

  private:
    std::function<bool(const Marking&)> fn_;
};

bool enabled(const PetriNet& net, const Marking& m, TransitionIndex t);

/// m + Δ_t. Throws Error if t is disabled at m.
Marking fire(const PetriNet& net, const Marking& m, TransitionIndex t);

enum class OrbitStatus {
    Terminates,    // t eventually disabled; visited holds the whole orbit
    StaysForever,  // t enabled forever; visited = {m}
    Inconclusive,  // cap reached; visited holds the prefix
};

struct Orbit {
    OrbitStatus status = OrbitStatus::Terminates;
    /// Set for StaysForever orbits whose markings strictly grow (Δ_t ≠ 0).
    bool unbounded_growth = false;
    std::vector<Marking> visited;
};

/// R_t(N, m): markings reachable from m by firing t only.
Orbit t_orbit(const PetriNet& net, const Marking& m, TransitionIndex t, std::size_t cap = 100000);

enum class OrbitVerdict { Stays, Exits, Inconclusive };

struct OrbitCheck {
    OrbitVerdict verdict = OrbitVerdict::Stays;
    std::optional<Marking> exit_at;  // first orbit marking outside the set
};

/// Decides R_t(N, m) ⊆ set.
OrbitCheck orbit_stays_in(const PetriNet& net, const Marking& m, TransitionIndex t,
                          const MarkingPredicate& set, std::size_t cap = 100000);

struct ExploreCaps {
    std::size_t state_cap = 200000;
    std::size_t depth_cap = 10000;
};

enum class Admissibility { Admissible, WeaklyForbidden, Inconclusive };

struct ExploreResult {
    Admissibility verdict = Admissibility::Admissible;
    /// Firing sequence leading from the start marking to `violating`.
    std::vector<TransitionIndex> witness;
    std::optional<Marking> violating;
    std::size_t states = 0;
};

/// Breadth-first exploration of R(N, m, u_zero), i.e. firing uncontrollable
/// transitions only, looking for a marking where `violation` holds.
ExploreResult uncontrollable_explore(const PetriNet& net, const Marking& m,
                                     const std::function<bool(const Marking&)>& violation,
                                     const ExploreCaps& caps = {});

std::string to_string(const Marking& m);

}  // namespace admissify
