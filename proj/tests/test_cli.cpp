#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using confcoh::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::temp_directory_path() / ("confcoh_test_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

const char* table_json = R"J([
  {"q": 0, "t": 0, "monomial": "1", "class": "a1", "value": 1},
  {"q": 0, "t": 0, "monomial": "1", "class": "a2", "value": 1},
  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a1", "value": 2},
  {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a2", "value": 3},
  {"q": 4, "t": 0, "monomial": "w(1,2)*w(3,4)", "class": "a1", "value": 5},
  {"q": 4, "t": 0, "monomial": "w(1,2)*w(3,4)", "class": "a2", "value": "1/2"}
])J";

} // namespace

TEST(Cli, Reduce)
{
    const Outcome r = invoke({"reduce", "w(1,3)*w(2,3)", "--q", "3", "--n", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "w(1,2)*w(2,3) - w(1,2)*w(1,3)\n");
    EXPECT_EQ(invoke({"reduce", "w(1,2)*w(1,2)", "--q", "2"}).out, "0\n");
    EXPECT_EQ(invoke({"reduce", "3*w(1,2)", "--q", "2", "--mod", "3"}).out, "0\n");
}

TEST(Cli, RoundTripIsIdempotent)
{
    for (const char* expr : {"w(1,3)*w(2,3)", "w(2,4)*w(1,4)*w(3,4) - 2*w(1,2)", "w(3,1)*w(4,2) + 7"}) {
        const std::string once = invoke({"reduce", expr, "--q", "4"}).out;
        const std::string text = once.substr(0, once.size() - 1);
        EXPECT_EQ(invoke({"reduce", text, "--q", "4"}).out, once) << expr;
    }
}

TEST(Cli, PoincareAndBasis)
{
    EXPECT_EQ(invoke({"poincare", "--q", "3", "--n", "3"}).out, "1 + 3*t^2 + 2*t^4\n");
    EXPECT_EQ(invoke({"basis", "--q", "3", "--degree", "4"}).out, "w(1,2)*w(1,3)\nw(1,2)*w(2,3)\n");
    const json q = json::parse(invoke({"qdims", "--q", "3"}).out);
    EXPECT_EQ(q["ranks"], (json{{"5", "2"}, {"7", "3"}, {"9", "1"}}));
}

TEST(Cli, StrataAndFaces)
{
    const Outcome strata = invoke({"strata", "--q", "3"});
    EXPECT_EQ(std::count(strata.out.begin(), strata.out.end(), '\n'), 8);
    const Outcome dot = invoke({"strata", "--q", "3", "--dot"});
    EXPECT_EQ(dot.out.rfind("digraph strata {", 0), 0u);
    const Outcome faces = invoke({"verify-faces", "--q", "4"});
    EXPECT_EQ(faces.code, 0);
    const json report = json::parse(faces.out);
    EXPECT_TRUE(report["passed"].get<bool>());
    EXPECT_EQ(report["faces"], 11);
}

TEST(Cli, Sigma)
{
    const json s = json::parse(invoke({"sigma", "1", "2", "2", "0"}).out);
    EXPECT_EQ(s["map"], (json{1, 4, 5, 2, 3}));
}

TEST(Cli, CoproductJson)
{
    const Outcome r = invoke({"coproduct", "w(1,2)*w(3,4)", "--Q", "4", "--T", "0"});
    ASSERT_EQ(r.code, 0);
    const json terms = json::parse(r.out);
    ASSERT_EQ(terms.size(), 3u);
    EXPECT_EQ(terms[1], (json{{"q", 2}, {"t", 0}, {"r", 2}, {"s", 0}, {"left", "w(1,2)"}, {"right", "w(1,2)"},
                              {"coeff", "1"}}));
}

TEST(Cli, EvalWithTable)
{
    const std::string path = temp_file("table.json", table_json);
    const Outcome r = invoke({"eval", "--beta", "w(1,2)*w(3,4)", "--Q", "4", "--T", "0", "--table", path, "--a1",
                              "a1", "--a2", "a2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json result = json::parse(r.out);
    // 1 * 1/2 + 2 * 3 + 5 * 1
    EXPECT_EQ(result["value"], "23/2");
    EXPECT_EQ(result["terms"].size(), 3u);
    EXPECT_TRUE(result["warnings"].empty());

    const Outcome strict = invoke({"eval", "--beta", "w(1,3)", "--Q", "3", "--T", "0", "--table", path, "--a1",
                                   "a1", "--a2", "a2", "--strict"});
    EXPECT_EQ(strict.code, 4);
    EXPECT_EQ(json::parse(strict.err)["error"], "missing_entry");

    const Outcome degrees = invoke({"eval", "--beta", "w(1,2)*w(3,4)", "--Q", "4", "--T", "0", "--table", path,
                                    "--a1", "a1:1", "--a2", "a2:2", "--degree-shift", "2"});
    EXPECT_EQ(degrees.code, 3);
}

TEST(Cli, Bracket)
{
    const Outcome r = invoke({"bracket", "--beta", "w(1,2)", "--Q", "2", "--T", "1", "--a1", "a", "--a2", "b"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json result = json::parse(r.out);
    EXPECT_EQ(result["value"], "0");
    EXPECT_TRUE(result["certificate"]["valid"].get<bool>());
    EXPECT_EQ(invoke({"bracket", "--beta", "w(1,2)", "--Q", "2", "--T", "0", "--a1", "a", "--a2", "b", "--n", "4"})
                  .code,
              5);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    EXPECT_EQ(invoke({"reduce", "w(1,2"}).code, 1);
    const Outcome parse = invoke({"reduce", "w(1,2", "--q", "2"});
    EXPECT_EQ(parse.code, 2);
    const json rec = json::parse(parse.err);
    EXPECT_EQ(rec["error"], "parse");
    EXPECT_EQ(rec["exit_code"], 2);
    EXPECT_EQ(invoke({"reduce", "w(1,2)", "--q", "2", "--n", "2"}).code, 3);
    EXPECT_EQ(invoke({"reduce", "w(1,2)", "--q", "2", "--mod", "4"}).code, 3);
    EXPECT_EQ(invoke({"eval", "--beta", "1", "--Q", "0", "--T", "0", "--table", "/nonexistent/t.json", "--a1", "a",
                      "--a2", "b"})
                  .code,
              6);
    const std::string bad = temp_file("bad.json", "[\n{\"q\": 0}\n]");
    const Outcome table = invoke({"eval", "--beta", "1", "--Q", "0", "--T", "0", "--table", bad, "--a1", "a", "--a2",
                                  "b"});
    EXPECT_EQ(table.code, 2);
    EXPECT_NE(json::parse(table.err)["message"].get<std::string>().find("line 2"), std::string::npos);
}

TEST(Cli, HelpListsSubcommands)
{
    const Outcome r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* cmd : {"reduce", "basis", "poincare", "strata", "verify-faces", "coproduct", "eval", "bracket"})
        EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
}

TEST(Cli, Deterministic)
{
    const std::vector<std::string> args{"coproduct", "w(1,3)*w(2,4) - w(1,2)", "--Q", "2", "--T", "2"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
}
