#include "admissify/net_file.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace admissify;
using namespace admissify::testing;

TEST(NetFile, Example2FixtureHasThreeUncontrollable) {
    const NetFile f = load_fixture("fig13");
    EXPECT_EQ(f.net.name(), "example2");
    EXPECT_EQ(f.net.uncontrollable_transitions(), (std::vector<TransitionIndex>{0, 1, 2}));
    EXPECT_EQ(f.net.initial_marking(), Marking({0, 1, 1, 1}));
    ASSERT_EQ(f.constraints.size(), 1u);
    EXPECT_EQ(f.constraints[0].name, "legal");
    EXPECT_EQ(f.constraints[0].constraint, lc(f.net, {"p0"}, 1));
}

TEST(NetFile, CommentsBlankLinesAndWeights) {
    const NetFile f = parse_net(
        "# header\n"
        "net demo\n"
        "\n"
        "place a init=2   # trailing comment\n"
        "place b\n"
        "trans t unctrl\n"
        "arc a -> t\n"
        "arc t -> b weight=1\n"
        "constraint c: 2a + b <= 4\n");
    EXPECT_EQ(f.net.place_count(), 2u);
    EXPECT_EQ(f.net.initial_marking(), Marking({2, 0}));
    EXPECT_EQ(*f.find_constraint("c"), LinearConstraint({2, 1}, 4));
    EXPECT_EQ(f.find_constraint("missing"), nullptr);
}

TEST(NetFile, ErrorsCarryLineNumbers) {
    try {
        parse_net("net x\nplace p\nbogus line\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_net("place p\ntrans t maybe\n"), ParseError);
    EXPECT_THROW(parse_net("place p\nplace q init=-1\n"), ParseError);
    EXPECT_THROW(parse_net("place p\nconstraint c: q <= 1\n"), ParseError);
    EXPECT_THROW(parse_net("place p\nconstraint c: p <= -1\n"), ParseError);
    EXPECT_THROW(parse_net("place p\ntrans t unctrl\narc p t\n"), ParseError);
}

TEST(NetFile, StructuralErrorsComeFromBuild) {
    EXPECT_THROW(parse_net("place p\ntrans t unctrl\narc p9 -> t\n"), NetError);
    EXPECT_THROW(parse_net("place p\ntrans t unctrl\narc p -> t weight=2\n"), NetError);
}

TEST(NetFile, InlineConstraint) {
    const NetFile f = load_fixture("fig6");
    EXPECT_EQ(parse_constraint("1 p1 + 1 p2 + 1 p3 <= 3", f.net), *f.find_constraint("legal"));
    EXPECT_EQ(parse_constraint("p1 + 2 p5 <= 3", f.net), lc(f.net, Terms{{"p1", 1}, {"p5", 2}}, 3));
    EXPECT_THROW(parse_constraint("p1 <= 3 extra", f.net), ParseError);
    EXPECT_THROW(parse_constraint("p1 >= 3", f.net), ParseError);
}

TEST(NetFile, MissingFileIsAnError) {
    EXPECT_THROW(load_net_file(fixture_path("no-such-file.net")), Error);
}

TEST(NetFile, RenderRoundTripsEveryFixture) {
    for (const char* name : {"fig2", "fig6", "fig7", "fig9", "fig10", "fig11", "fig12", "fig13"}) {
        const NetFile f = load_fixture(name);
        const NetFile g = parse_net(render_net(f));
        EXPECT_EQ(g.net.name(), f.net.name()) << name;
        EXPECT_EQ(std::vector<std::string>(g.net.place_names().begin(), g.net.place_names().end()),
                  std::vector<std::string>(f.net.place_names().begin(), f.net.place_names().end()))
            << name;
        EXPECT_EQ(g.net.initial_marking(), f.net.initial_marking()) << name;
        ASSERT_EQ(g.net.transition_count(), f.net.transition_count()) << name;
        for (TransitionIndex t = 0; t < f.net.transition_count(); ++t) {
            EXPECT_EQ(g.net.is_uncontrollable(t), f.net.is_uncontrollable(t));
            const auto a = f.net.incidence_column(t);
            const auto b = g.net.incidence_column(t);
            EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end())) << name;
            EXPECT_TRUE(std::ranges::equal(f.net.preset(t), g.net.preset(t))) << name;
        }
        ASSERT_EQ(g.constraints.size(), f.constraints.size()) << name;
        for (std::size_t i = 0; i < f.constraints.size(); ++i) {
            EXPECT_EQ(g.constraints[i].name, f.constraints[i].name);
            EXPECT_EQ(g.constraints[i].constraint, f.constraints[i].constraint);
        }
    }
}
