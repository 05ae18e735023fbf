#include "admissify/net.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace admissify;
using namespace admissify::testing;

namespace {

NetDescription tiny() {
    NetDescription d;
    d.name = "tiny";
    d.places = {{"a", 1}, {"b", 0}};
    d.transitions = {{"t", Controllability::Uncontrollable}, {"u", Controllability::Controllable}};
    d.arcs = {{"a", "t", 1}, {"t", "b", 1}, {"b", "u", 1}, {"u", "a", 1}};
    return d;
}

}  // namespace

TEST(PetriNet, BuildsIncidenceAndSets) {
    const PetriNet net = PetriNet::build(tiny());
    EXPECT_EQ(net.place_count(), 2u);
    EXPECT_EQ(net.transition_count(), 2u);
    EXPECT_EQ(net.incidence(0, 0), -1);
    EXPECT_EQ(net.incidence(1, 0), 1);
    EXPECT_TRUE(net.is_uncontrollable(0));
    EXPECT_FALSE(net.is_uncontrollable(1));
    EXPECT_EQ(net.uncontrollable_transitions(), std::vector<TransitionIndex>{0});
    EXPECT_EQ(net.initial_marking(), Marking({1, 0}));
}

TEST(PetriNet, SelfLoopHasZeroIncidence) {
    const PetriNet net = load_fixture("fig7").net;
    const TransitionIndex t = net.transition_index("t");
    const PlaceIndex p2 = net.place_index("p2");
    EXPECT_EQ(net.incidence(p2, t), 0);
    EXPECT_TRUE(net.in_preset(p2, t));
    EXPECT_TRUE(net.in_postset(p2, t));
}

TEST(PetriNet, RejectsUnknownArcEndpoint) {
    NetDescription d = tiny();
    d.arcs.push_back({"p9", "t", 1});
    EXPECT_THROW(PetriNet::build(d), NetError);
}

TEST(PetriNet, RejectsStructuralMistakes) {
    NetDescription dup = tiny();
    dup.places.push_back({"a", 0});
    EXPECT_THROW(PetriNet::build(dup), NetError);

    NetDescription same_kind = tiny();
    same_kind.arcs.push_back({"a", "b", 1});
    EXPECT_THROW(PetriNet::build(same_kind), NetError);

    NetDescription weighted = tiny();
    weighted.arcs[0].weight = 2;
    EXPECT_THROW(PetriNet::build(weighted), NetError);

    NetDescription repeated = tiny();
    repeated.arcs.push_back({"a", "t", 1});
    EXPECT_THROW(PetriNet::build(repeated), NetError);
}

TEST(PetriNet, ZeroTransitionsIsValid) {
    NetDescription d;
    d.places = {{"p", 0}};
    const PetriNet net = PetriNet::build(d);
    EXPECT_EQ(net.transition_count(), 0u);
    EXPECT_TRUE(net.uncontrollable_transitions().empty());
}

TEST(Firing, Fig2EnabledAndFire) {
    const PetriNet net = load_fixture("fig2").net;
    const TransitionIndex t = net.transition_index("t");
    EXPECT_TRUE(enabled(net, Marking{0, 2, 3}, t));
    EXPECT_FALSE(enabled(net, Marking{0, 0, 0}, t));
    EXPECT_EQ(fire(net, Marking{0, 2, 3}, t), Marking({1, 1, 2}));
    EXPECT_THROW(fire(net, Marking{2, 0, 1}, t), Error);
}

TEST(Firing, SourceTransitionAlwaysEnabled) {
    NetDescription d;
    d.places = {{"p", 0}};
    d.transitions = {{"s", Controllability::Uncontrollable}};
    d.arcs = {{"s", "p", 1}};
    const PetriNet net = PetriNet::build(d);
    EXPECT_TRUE(enabled(net, Marking{0}, 0));
    EXPECT_EQ(fire(net, Marking{0}, 0), Marking({1}));
}

TEST(Orbit, Fig2FromPrintedMarking) {
    const PetriNet net = load_fixture("fig2").net;
    const Orbit o = t_orbit(net, Marking{0, 2, 3}, net.transition_index("t"));
    EXPECT_EQ(o.status, OrbitStatus::Terminates);
    EXPECT_EQ(o.visited, (std::vector<Marking>{{0, 2, 3}, {1, 1, 2}, {2, 0, 1}}));
}

TEST(Orbit, DisabledGivesStart) {
    const PetriNet net = load_fixture("fig2").net;
    const Orbit o = t_orbit(net, Marking{1, 0, 0}, 0);
    EXPECT_EQ(o.status, OrbitStatus::Terminates);
    EXPECT_EQ(o.visited, std::vector<Marking>{Marking({1, 0, 0})});
}

TEST(Orbit, SelfLoopGrowsForever) {
    const PetriNet net = load_fixture("fig7").net;
    const TransitionIndex t = net.transition_index("t");
    const Orbit o = t_orbit(net, Marking{0, 1}, t);
    EXPECT_EQ(o.status, OrbitStatus::StaysForever);
    EXPECT_TRUE(o.unbounded_growth);
    // Simulated growth: p1 gains one token per firing, p2 never empties.
    Marking m{0, 1};
    for (int i = 0; i < 1000; ++i) {
        ASSERT_TRUE(enabled(net, m, t));
        const Marking next = fire(net, m, t);
        ASSERT_EQ(next[0], m[0] + 1);
        ASSERT_EQ(next[1], 1);
        m = next;
    }
}

TEST(Orbit, StaysInChecksMembership) {
    const PetriNet net = load_fixture("fig2").net;
    const TransitionIndex t = net.transition_index("t");
    const FunctionPredicate q([](const Marking& m) {
        static const std::vector<Marking> members{{1, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 2, 2}};
        return std::find(members.begin(), members.end(), m) != members.end();
    });
    const OrbitCheck out = orbit_stays_in(net, Marking{1, 1, 1}, t, q);
    EXPECT_EQ(out.verdict, OrbitVerdict::Exits);
    EXPECT_EQ(out.exit_at, Marking({2, 0, 0}));
    EXPECT_EQ(orbit_stays_in(net, Marking{1, 0, 0}, t, q).verdict, OrbitVerdict::Stays);

    const FunctionPredicate everything([](const Marking&) { return true; });
    EXPECT_EQ(orbit_stays_in(net, Marking{0, 2, 3}, t, everything).verdict, OrbitVerdict::Stays);
}

TEST(Orbit, UnboundedOrbitAgainstOpaquePredicateIsInconclusive) {
    const PetriNet net = load_fixture("fig7").net;
    const FunctionPredicate everything([](const Marking&) { return true; });
    EXPECT_EQ(orbit_stays_in(net, Marking{0, 1}, 0, everything, 50).verdict, OrbitVerdict::Inconclusive);
}

TEST(Explore, Fig6AdmissibleMarking) {
    const NetFile f = load_fixture("fig6");
    const auto& legal = *f.find_constraint("legal");
    const auto r = uncontrollable_explore(f.net, Marking{0, 0, 0, 1, 2},
                                          [&](const Marking& m) { return !legal.contains(m); });
    EXPECT_EQ(r.verdict, Admissibility::Admissible);
}

TEST(Explore, Fig6WeaklyForbiddenWitness) {
    const NetFile f = load_fixture("fig6");
    const auto& legal = *f.find_constraint("legal");
    const Marking start{0, 0, 0, 2, 2};
    const auto r = uncontrollable_explore(f.net, start, [&](const Marking& m) { return !legal.contains(m); });
    ASSERT_EQ(r.verdict, Admissibility::WeaklyForbidden);
    // Replaying the witness by hand must end in an illegal marking.
    Marking m = start;
    for (TransitionIndex t : r.witness) {
        ASSERT_TRUE(f.net.is_uncontrollable(t));
        m = fire(f.net, m, t);
    }
    EXPECT_EQ(m, *r.violating);
    EXPECT_GT(m[0] + m[1] + m[2], 3);
    // Firing t3 twice is one such path: (0,0,0,2,2) -> (1,1,0,1,1) -> (2,2,0,0,0).
    const TransitionIndex t3 = f.net.transition_index("t3");
    EXPECT_EQ(fire(f.net, fire(f.net, start, t3), t3), Marking({2, 2, 0, 0, 0}));
}

TEST(Explore, AlreadyViolatingHasEmptyWitness) {
    const NetFile f = load_fixture("fig6");
    const auto r = uncontrollable_explore(f.net, Marking{4, 0, 0, 0, 0},
                                          [](const Marking& m) { return m[0] + m[1] + m[2] > 3; });
    EXPECT_EQ(r.verdict, Admissibility::WeaklyForbidden);
    EXPECT_TRUE(r.witness.empty());
}

TEST(Explore, CapsYieldInconclusive) {
    const PetriNet net = load_fixture("fig7").net;
    const auto r = uncontrollable_explore(net, Marking{0, 1}, [](const Marking&) { return false; }, {50, 10000});
    EXPECT_EQ(r.verdict, Admissibility::Inconclusive);
}
