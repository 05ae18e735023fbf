#include "admissify/commands.hpp"
#include "admissify/render.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace admissify;
using namespace admissify::testing;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string net(const std::string& name) { return fixture_path(name + ".net"); }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, exit_code::usage);
    EXPECT_EQ(run({"frobnicate"}).code, exit_code::usage);
    EXPECT_EQ(run({"transform"}).code, exit_code::usage);
    EXPECT_EQ(run({"transform", "--net", net("fig6"), "--format", "xml"}).code, exit_code::usage);
    EXPECT_EQ(run({"transform", "--net", net("missing")}).code, exit_code::usage);
    EXPECT_EQ(run({"transform", "--net", net("fig9")}).code, exit_code::usage);  // two constraints, none named legal
    EXPECT_EQ(run({"transform", "--net", net("fig6"), "--sequence", "t9"}).code, exit_code::usage);
    EXPECT_EQ(run({"transform", "--net", net("fig6"), "--sequence", "t5"}).code, exit_code::usage);
    EXPECT_EQ(run({"verify", "--net", net("fig6")}).code, exit_code::usage);  // --bound missing
    EXPECT_EQ(run({"--help"}).code, exit_code::ok);
    EXPECT_EQ(run({"transform", "--help"}).code, exit_code::ok);
}

TEST(Cli, TransformTextFig11) {
    const Invocation r = run({"transform", "--net", net("fig11")});
    EXPECT_EQ(r.code, exit_code::ok);
    EXPECT_NE(r.out.find("sigma: t1 t2 t4 t3 t4 t3 t4"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("m(p1)+m(p3)+2m(p4)+2m(p5) <= 1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("status: complete"), std::string::npos);
}

TEST(Cli, TransformJsonExample2) {
    const Invocation r = run({"transform", "--net", net("fig13"), "--format", "json"});
    EXPECT_EQ(r.code, exit_code::ok);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["net"], "example2");
    EXPECT_EQ(j["status"], "complete-with-blocks");
    EXPECT_EQ(j["sigma"], Json::array({"t1", "t2", "t3"}));
    EXPECT_EQ(j["final"]["plain"].size(), 4u);
    ASSERT_EQ(j["steps"].size(), 3u);
    const Json& group = j["steps"][2]["groups"][0];
    EXPECT_EQ(group["from"], 3);
    EXPECT_EQ(group["to"], 2);
    ASSERT_EQ(group["blocks"].size(), 2u);
    EXPECT_EQ(group["blocks"][0]["satisfiable"], true);
    EXPECT_EQ(group["blocks"][1]["satisfiable"], false);
    EXPECT_EQ(j["legal"]["weights"]["p0"], 1);
    EXPECT_EQ(j["legal"]["bound"], 1);
}

TEST(Cli, InlineConstraintAndReplay) {
    const Invocation r = run({"transform", "--net", net("fig6"), "--constraint", "p1 + p2 + p3 <= 3", "--sequence", "t3,t4",
                       "--format", "json"});
    EXPECT_EQ(r.code, exit_code::ok);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["sigma"], Json::array({"t3", "t4"}));
    EXPECT_EQ(j["steps"][1]["groups"][0]["blocks"].size(), 4u);
}

TEST(Cli, StepLimitExitCode) {
    EXPECT_EQ(run({"transform", "--net", net("fig11"), "--max-steps", "3"}).code, exit_code::step_limit);
}

TEST(Cli, UnsatisfiableExitCode) {
    const std::string path = ::testing::TempDir() + "source.net";
    {
        std::ofstream f(path);
        f << "net src\nplace p\ntrans s unctrl\narc s -> p\nconstraint legal: p <= 2\n";
    }
    const Invocation r = run({"transform", "--net", path});
    EXPECT_EQ(r.code, exit_code::unsatisfiable);
    EXPECT_NE(r.out.find("unsatisfiable-transformation"), std::string::npos);
    // No admissible marking exists, and the empty result matches the oracle.
    EXPECT_EQ(run({"verify", "--net", path, "--bound", "3"}).code, exit_code::ok);
}

TEST(Cli, VerifyEqualOnFig6) {
    const Invocation r = run({"verify", "--net", net("fig6"), "--bound", "4"});
    EXPECT_EQ(r.code, exit_code::ok) << r.out << r.err;
    EXPECT_NE(r.out.find("verdict: equal"), std::string::npos) << r.out;
}

TEST(Cli, VerifyCounterexampleForEarlierMethod) {
    const Invocation r = run({"verify", "--net", net("fig6"), "--bound", "4", "--expression", "luo2", "--expression", "luo3",
                       "--format", "json"});
    EXPECT_EQ(r.code, exit_code::counterexample) << r.err;
    const Json j = Json::parse(r.out);
    const Json& v = j["verdict"];
    EXPECT_EQ(v["kind"], "counterexample");
    EXPECT_EQ(v["marking"], (Json{{"p1", 0}, {"p2", 0}, {"p3", 0}, {"p4", 1}, {"p5", 2}}));
    EXPECT_EQ(v["admissible"], true);
    EXPECT_EQ(v["universe"], 3125);
}

TEST(Cli, VerifyInconclusiveUnderTinyCaps) {
    const Invocation r = run({"verify", "--net", net("fig6"), "--bound", "3", "--state-cap", "2"});
    EXPECT_EQ(r.code, exit_code::inconclusive) << r.out << r.err;
}

TEST(Cli, BoundsParsing) {
    const NetFile f = load_fixture("fig2");
    EXPECT_EQ(parse_bounds("3", f.net), (std::vector<Tokens>{3, 3, 3}));
    EXPECT_EQ(parse_bounds("2,p2=4", f.net), (std::vector<Tokens>{2, 4, 2}));
    EXPECT_EQ(parse_bounds("p1=1,p2=2,p3=3", f.net), (std::vector<Tokens>{1, 2, 3}));
    EXPECT_THROW(parse_bounds("p1=1", f.net), Error);
    EXPECT_THROW(parse_bounds("p9=1,2", f.net), Error);
    EXPECT_THROW(parse_bounds("x", f.net), Error);
}
