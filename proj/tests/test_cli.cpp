#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "smplab");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = smplab::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string golden = R"({"A": [[1, 1], [0, 1]], "B": [[1, 0], [1, 1]]})";
const std::string demo_dir = SMPLAB_DEMO_DIR;

} // namespace

TEST(Cli, FrickeOfAB)
{
    const Result r = run({"fricke", "--word", "01"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "z\n");
    EXPECT_EQ(run({"fricke", "--word", "001", "--at", "1,2,3,4,5"}).out, "-5.0\n");
}

TEST(Cli, ClassifyReferenceTuple)
{
    const Result r = run({"classify", "--tuple", "3,3,8,1,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = smplab::io::Json::parse(r.out);
    EXPECT_EQ(j["regions"]["copar"], true);
    EXPECT_EQ(j["regions"]["cross"], false);
}

TEST(Cli, ClassifyPairFromFileAndInline)
{
    const Result inline_run = run({"classify", "--pair", golden});
    const Result file_run = run({"classify", "--pair", demo_dir + "/golden_pair.json"});
    ASSERT_EQ(inline_run.code, 0) << inline_run.err;
    EXPECT_EQ(inline_run.out, file_run.out);
}

TEST(Cli, BatchEmitsOneLinePerPair)
{
    const Result r = run({"classify", "--batch", demo_dir + "/pairs.ndjson"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, SmpOutputFeedsBackIntoClassify)
{
    const Result realized = run({"realize", "--tuple", "3,3,8,1,1"});
    ASSERT_EQ(realized.code, 0);
    const Result classified = run({"classify", "--pair", realized.out});
    ASSERT_EQ(classified.code, 0) << classified.err;
    EXPECT_EQ(smplab::io::Json::parse(classified.out)["regions"]["copar"], true);
    const Result smp = run({"smp", "--pair", realized.out});
    ASSERT_EQ(smp.code, 0);
    EXPECT_EQ(smplab::io::Json::parse(smp.out)["word"], "01");
}

TEST(Cli, JsrIsDeterministic)
{
    const Result a = run({"jsr", "--pair", golden, "--max-len", "10", "--threads", "1"});
    const Result b = run({"jsr", "--pair", golden, "--max-len", "10", "--threads", "3"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(smplab::io::Json::parse(a.out)["best_word"], "01");
}

TEST(Cli, MonteCarloIsDeterministic)
{
    const Result a = run({"montecarlo", "--seed", "5", "--samples", "5000", "--threads", "1"});
    const Result b = run({"montecarlo", "--seed", "5", "--samples", "5000", "--threads", "4"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), smplab::io::monte_carlo_csv_header());
}

TEST(Cli, ChristoffelAndSignature)
{
    EXPECT_EQ(run({"christoffel", "--p", "2", "--q", "5"}).out, "00101\n");
    EXPECT_EQ(run({"signature", "--word", "10100"}).out, "3,2,2\n");
    const auto tree = smplab::io::Json::parse(run({"christoffel", "--tree", "2"}).out);
    EXPECT_EQ(tree.size(), 7u);
}

TEST(Cli, LyapunovRationalAndDecimal)
{
    const Result r = run({"lyap", "--pair", golden, "--gamma", "1/2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(r.out), std::log((1.0 + std::sqrt(5.0)) / 2.0), 1e-14);
    EXPECT_EQ(run({"lyap", "--pair", golden, "--gamma", "0.618034"}).code, 0);
}

TEST(Cli, ExampleVerifies)
{
    const Result r = run({"example", "--n", "2", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(smplab::io::Json::parse(r.out)["verification"]["passes"], true);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"jsr", "--pair", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(run({"jsr", "--pair", "{not json"}).code, 2);
    EXPECT_EQ(run({"jsr", "--pair", R"({"A": [[1, 2]], "B": [[1, 0], [0, 1]]})"}).code, 2);
    EXPECT_EQ(run({"classify", "--tuple", "1,2,3"}).code, 2);
    EXPECT_EQ(run({"fricke", "--word", "0120"}).code, 2);
    // Preconditions on valid input.
    EXPECT_EQ(run({"sturmian", "--pair", golden}).code, 1);
    EXPECT_EQ(run({"symmetrize", "--pair", golden}).code, 1);
    EXPECT_EQ(run({"signature", "--word", "0101"}).code, 1);
    EXPECT_EQ(run({"jsr", "--pair", golden, "--max-len", "30"}).code, 1);
}

TEST(Cli, ReproduceListsTwelveChecks)
{
    const Result r = run({"reproduce", "--list"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 12);
    const Result one = run({"reproduce", "--only", "9"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out.rfind("PASS", 0), 0u);
}
