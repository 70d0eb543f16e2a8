#include <chroma/cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chroma;

namespace {

const std::string samples = CHROMA_SAMPLES_DIR;

struct Run {
    int code;
    std::string out, err;

    [[nodiscard]] json::json value() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string & name, const std::string & text)
{
    auto path = (std::filesystem::temp_directory_path() / ("chroma_test_" + name)).string();
    std::ofstream(path) << text;
    return path;
}

}

TEST(Cli, Rank)
{
    auto r = run({"rank", "--in", samples + "/T1.json"});
    ASSERT_EQ(r.code, cli::ok) << r.err;
    auto j = r.value();
    EXPECT_EQ(j["[]"], "3");
    EXPECT_EQ(j["[[1,0]]"], "2");
    EXPECT_EQ(j["[[1,1]]"], "0");
}

TEST(Cli, AmalgamateUnsatSystem)
{
    auto r = run({"amalgamate", "--system", samples + "/bad_system.json", "--diagrams", samples + "/T1.json"});
    EXPECT_EQ(r.code, cli::negative);
    auto j = r.value();
    EXPECT_EQ(j["result"], "unsat");
    EXPECT_EQ(j["refutation"].size(), 2u);

    auto ap = run({"amalgamate", "--method", "ap", "--system", samples + "/bad_system.json", "--diagrams", samples + "/T1.json"});
    EXPECT_EQ(ap.code, cli::ok);
    EXPECT_EQ(ap.value()["result"], "identification");

    auto tight = run({"--budget", "1", "amalgamate", "--system", samples + "/bad_system.json", "--diagrams", samples + "/T1.json"});
    EXPECT_EQ(tight.code, cli::budget);
}

TEST(Cli, MemberAndQuotient)
{
    auto M = temp_file("mono.json", R"({"universe": [0, 1, 2], "colors": {"[0]": [1,0], "[1]": [1,0], "[2]": [1,0], "[0,1]": [2,0], "[0,2]": [2,0], "[1,2]": [2,0], "[0,1,2]": [3,0]}})");
    auto r = run({"member", "--structure", M, "--diagrams", samples + "/T1.json"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_EQ(r.value()["result"], "ok");

    auto q = run({"quotient", "--in", samples + "/T1.json", "--wbar", "[[1,0]]"});
    ASSERT_EQ(q.code, cli::ok) << q.err;
    EXPECT_EQ(q.value()["members"].size(), 4u);

    auto p = run({"prune", "--in", samples + "/T1.json", "--set", "[[[1,1]]]"});
    ASSERT_EQ(p.code, cli::ok) << p.err;
    EXPECT_EQ(p.value()["members"].size(), 2u);
}

TEST(Cli, MemberViolation)
{
    auto M = temp_file("pair.json", R"({"universe": [0, 1], "colors": {"[0]": [1,1], "[1]": [1,1], "[0,1]": [2,0]}})");
    auto r = run({"member", "--structure", M, "--diagrams", samples + "/T1.json"});
    EXPECT_EQ(r.code, cli::negative);
    EXPECT_EQ(r.value()["subset"], json::json::array({0, 1}));
}

TEST(Cli, WAlphaAndSpectra)
{
    auto w = run({"walpha-verify", "--alpha", "5", "--F", "0,2,5", "--max-arity", "4"});
    EXPECT_EQ(w.code, cli::ok) << w.err;
    EXPECT_EQ(w.value()["result"], "pass");

    auto s = run({"spectra", "--diagrams", samples + "/T1.json", "--lambda-max", "1"});
    ASSERT_EQ(s.code, cli::ok) << s.err;
    EXPECT_EQ(s.value()[0]["dap"], "no");
}

TEST(Cli, Build)
{
    auto params = temp_file("pair_params.json", R"({"m": 2, "wbar": [[1,0]], "wn": [[[1,0],[2,0]], [[1,0],[2,1]]]})");
    auto r = run({"build", "pair-split", "--params", params});
    ASSERT_EQ(r.code, cli::ok) << r.err;
    EXPECT_EQ(r.value()["universe"].size(), 4u);
}

TEST(Cli, BadInput)
{
    EXPECT_EQ(run({}).code, cli::bad_input);
    EXPECT_EQ(run({"rank"}).code, cli::bad_input);
    auto missing = run({"rank", "--in", samples + "/missing.json"});
    EXPECT_EQ(missing.code, cli::bad_input);
    EXPECT_NE(missing.err.find("missing.json"), std::string::npos);
    auto broken = temp_file("broken.json", "{\"arities\": ");
    auto b = run({"rank", "--in", broken});
    EXPECT_EQ(b.code, cli::bad_input);
    EXPECT_NE(b.err.find("malformed JSON"), std::string::npos);
    EXPECT_EQ(run({"amalgamate", "--method", "magic", "--system", "x", "--diagrams", "y"}).code, cli::bad_input);
    EXPECT_EQ(run({"build", "nothing", "--params", temp_file("empty.json", "{}")}).code, cli::bad_input);
    EXPECT_EQ(run({"--help"}).code, cli::ok);
}
