#include "admissify/net.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace admissify {

bool Marking::is_zero() const {
    return std::all_of(tokens_.begin(), tokens_.end(), [](Tokens v) { return v == 0; });
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
    // FNV-1a over the token counts.
    std::size_t h = 1469598103934665603ull;
    for (Tokens v : m) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_string(const Marking& m) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out << ',';
        out << m[i];
    }
    out << ')';
    return out.str();
}

PetriNet PetriNet::build(const NetDescription& description) {
    PetriNet net;
    net.name_ = description.name;
    net.description_ = description;

    std::set<std::string> seen;
    for (const auto& place : description.places) {
        if (place.id.empty()) throw NetError("empty place id");
        if (!seen.insert(place.id).second) throw NetError("duplicate id '" + place.id + "'");
        if (place.initial < 0) throw NetError("negative initial marking for place '" + place.id + "'");
        net.place_lookup_.emplace(place.id, net.places_.size());
        net.places_.push_back(place.id);
    }
    for (const auto& transition : description.transitions) {
        if (transition.id.empty()) throw NetError("empty transition id");
        if (!seen.insert(transition.id).second) throw NetError("duplicate id '" + transition.id + "'");
        net.transition_lookup_.emplace(transition.id, net.transitions_.size());
        net.transitions_.push_back(transition.id);
        net.uncontrollable_.push_back(transition.control == Controllability::Uncontrollable);
    }

    const std::size_t np = net.places_.size();
    const std::size_t nt = net.transitions_.size();
    std::vector<std::vector<bool>> pre(nt, std::vector<bool>(np, false));
    std::vector<std::vector<bool>> post(nt, std::vector<bool>(np, false));

    for (const auto& arc : description.arcs) {
        if (arc.weight != 1) {
            throw NetError("arc " + arc.from + " -> " + arc.to + " has weight " +
                           std::to_string(arc.weight) + "; only ordinary nets are supported");
        }
        auto from_place = net.find_place(arc.from);
        auto from_trans = net.find_transition(arc.from);
        auto to_place = net.find_place(arc.to);
        auto to_trans = net.find_transition(arc.to);
        if (!from_place && !from_trans) throw NetError("arc references unknown node '" + arc.from + "'");
        if (!to_place && !to_trans) throw NetError("arc references unknown node '" + arc.to + "'");
        if (from_place && to_trans) {
            if (pre[*to_trans][*from_place]) throw NetError("repeated arc " + arc.from + " -> " + arc.to);
            pre[*to_trans][*from_place] = true;
        } else if (from_trans && to_place) {
            if (post[*from_trans][*to_place]) throw NetError("repeated arc " + arc.from + " -> " + arc.to);
            post[*from_trans][*to_place] = true;
        } else {
            throw NetError("arc " + arc.from + " -> " + arc.to + " must connect a place and a transition");
        }
    }

    net.presets_.resize(nt);
    net.postsets_.resize(nt);
    net.incidence_.assign(nt, std::vector<Tokens>(np, 0));
    for (std::size_t t = 0; t < nt; ++t) {
        for (std::size_t p = 0; p < np; ++p) {
            if (pre[t][p]) net.presets_[t].push_back(p);
            if (post[t][p]) net.postsets_[t].push_back(p);
            net.incidence_[t][p] = static_cast<Tokens>(post[t][p]) - static_cast<Tokens>(pre[t][p]);
        }
    }

    std::vector<Tokens> initial;
    for (const auto& place : description.places) initial.push_back(place.initial);
    net.initial_ = Marking(std::move(initial));
    return net;
}

std::optional<PlaceIndex> PetriNet::find_place(const std::string& id) const {
    auto it = place_lookup_.find(id);
    if (it == place_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<TransitionIndex> PetriNet::find_transition(const std::string& id) const {
    auto it = transition_lookup_.find(id);
    if (it == transition_lookup_.end()) return std::nullopt;
    return it->second;
}

PlaceIndex PetriNet::place_index(const std::string& id) const {
    if (auto p = find_place(id)) return *p;
    throw NetError("unknown place '" + id + "'");
}

TransitionIndex PetriNet::transition_index(const std::string& id) const {
    if (auto t = find_transition(id)) return *t;
    throw NetError("unknown transition '" + id + "'");
}

std::vector<TransitionIndex> PetriNet::uncontrollable_transitions() const {
    std::vector<TransitionIndex> out;
    for (TransitionIndex t = 0; t < transitions_.size(); ++t) {
        if (uncontrollable_[t]) out.push_back(t);
    }
    return out;
}

bool PetriNet::in_preset(PlaceIndex p, TransitionIndex t) const {
    const auto& pre = presets_.at(t);
    return std::binary_search(pre.begin(), pre.end(), p);
}

bool PetriNet::in_postset(PlaceIndex p, TransitionIndex t) const {
    const auto& post = postsets_.at(t);
    return std::binary_search(post.begin(), post.end(), p);
}

RayExit MarkingPredicate::first_exit_on_ray(const Marking&, std::span<const Tokens>) const {
    return RayExit::unknown();
}

namespace {

void check_transition(const PetriNet& net, TransitionIndex t) {
    if (t >= net.transition_count()) throw NetError("unknown transition index " + std::to_string(t));
}

void check_dimension(const PetriNet& net, const Marking& m) {
    if (m.size() != net.place_count()) {
        throw Error("marking has " + std::to_string(m.size()) + " entries, net has " +
                    std::to_string(net.place_count()) + " places");
    }
}

Marking advance(const Marking& m, std::span<const Tokens> delta, std::int64_t times) {
    Marking out = m;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += delta[p] * times;
    return out;
}

}  // namespace

bool enabled(const PetriNet& net, const Marking& m, TransitionIndex t) {
    check_transition(net, t);
    check_dimension(net, m);
    for (PlaceIndex p : net.preset(t)) {
        if (m[p] <= 0) return false;
    }
    return true;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionIndex t) {
    if (!enabled(net, m, t)) {
        throw Error("transition " + net.transition_name(t) + " is not enabled at " + to_string(m));
    }
    return advance(m, net.incidence_column(t), 1);
}

Orbit t_orbit(const PetriNet& net, const Marking& m, TransitionIndex t, std::size_t cap) {
    if (cap == 0) throw Error("orbit cap must be at least 1");
    Orbit orbit;
    orbit.visited.push_back(m);
    if (!enabled(net, m, t)) return orbit;

    // •t ⊆ t•: no input place ever loses a token, so t fires forever.
    const auto pre = net.preset(t);
    const bool perpetual =
        std::all_of(pre.begin(), pre.end(), [&](PlaceIndex p) { return net.in_postset(p, t); });
    if (perpetual) {
        const auto delta = net.incidence_column(t);
        orbit.status = OrbitStatus::StaysForever;
        orbit.unbounded_growth = std::any_of(delta.begin(), delta.end(), [](Tokens d) { return d != 0; });
        return orbit;
    }

    Marking current = m;
    while (enabled(net, current, t)) {
        if (orbit.visited.size() > cap) {
            orbit.status = OrbitStatus::Inconclusive;
            return orbit;
        }
        current = advance(current, net.incidence_column(t), 1);
        orbit.visited.push_back(current);
    }
    return orbit;
}

OrbitCheck orbit_stays_in(const PetriNet& net, const Marking& m, TransitionIndex t,
                          const MarkingPredicate& set, std::size_t cap) {
    const Orbit orbit = t_orbit(net, m, t, cap);
    for (const auto& point : orbit.visited) {
        if (!set.contains(point)) return {OrbitVerdict::Exits, point};
    }
    switch (orbit.status) {
    case OrbitStatus::Terminates:
        return {OrbitVerdict::Stays, std::nullopt};
    case OrbitStatus::Inconclusive:
        return {OrbitVerdict::Inconclusive, std::nullopt};
    case OrbitStatus::StaysForever:
        break;
    }
    if (!orbit.unbounded_growth) return {OrbitVerdict::Stays, std::nullopt};

    const auto delta = net.incidence_column(t);
    const RayExit ray = set.first_exit_on_ray(m, delta);
    if (ray.kind == RayExit::Kind::Never) return {OrbitVerdict::Stays, std::nullopt};
    if (ray.kind == RayExit::Kind::At) return {OrbitVerdict::Exits, advance(m, delta, ray.step)};

    Marking current = m;
    for (std::size_t i = 0; i < cap; ++i) {
        current = advance(current, delta, 1);
        if (!set.contains(current)) return {OrbitVerdict::Exits, current};
    }
    return {OrbitVerdict::Inconclusive, std::nullopt};
}

ExploreResult uncontrollable_explore(const PetriNet& net, const Marking& m,
                                     const std::function<bool(const Marking&)>& violation,
                                     const ExploreCaps& caps) {
    check_dimension(net, m);
    ExploreResult result;
    result.states = 1;
    if (violation(m)) {
        result.verdict = Admissibility::WeaklyForbidden;
        result.violating = m;
        return result;
    }

    struct Node {
        std::size_t parent;
        TransitionIndex via;
        std::size_t depth;
    };
    std::vector<Marking> markings{m};
    std::vector<Node> nodes{{0, 0, 0}};
    std::unordered_map<Marking, std::size_t, MarkingHash> index{{m, 0}};
    std::deque<std::size_t> frontier{0};
    const auto uncontrollable = net.uncontrollable_transitions();
    bool truncated = false;

    while (!frontier.empty()) {
        const std::size_t current = frontier.front();
        frontier.pop_front();
        if (nodes[current].depth >= caps.depth_cap) {
            truncated = true;
            continue;
        }
        for (TransitionIndex t : uncontrollable) {
            if (!enabled(net, markings[current], t)) continue;
            Marking next = advance(markings[current], net.incidence_column(t), 1);
            if (index.contains(next)) continue;
            if (markings.size() >= caps.state_cap) {
                result.verdict = Admissibility::Inconclusive;
                result.states = markings.size();
                return result;
            }
            const std::size_t id = markings.size();
            index.emplace(next, id);
            markings.push_back(next);
            nodes.push_back({current, t, nodes[current].depth + 1});
            if (violation(next)) {
                result.verdict = Admissibility::WeaklyForbidden;
                result.violating = next;
                for (std::size_t at = id; at != 0; at = nodes[at].parent) result.witness.push_back(nodes[at].via);
                std::reverse(result.witness.begin(), result.witness.end());
                result.states = markings.size();
                return result;
            }
            frontier.push_back(id);
        }
    }
    result.states = markings.size();
    result.verdict = truncated ? Admissibility::Inconclusive : Admissibility::Admissible;
    return result;
}

}  // namespace admissify
