#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "quadrep/cli.hpp"

using quadrep::cli::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "quadrep");
    std::ostringstream out, err;
    const int code = quadrep::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args)
{
    const Result r = run(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

} // namespace

TEST(Cli, RepnumAllMethods)
{
    const Json j = run_json({"repnum", "--disc", "5", "--ideal", "ok", "--m", "1", "--b", "4", "--method", "all"});
    EXPECT_EQ(j["N"], 6);
    EXPECT_EQ(j["agree"], true);
    EXPECT_EQ(j["methods"]["brute"], 6);
    EXPECT_EQ(j["methods"]["formula"], 6);
    EXPECT_EQ(j["methods"]["gauss-dft"], 6);
}

TEST(Cli, SigmaAllForms)
{
    const Json j = run_json({"sigma", "--disc", "21", "--ideal", "ok", "--m", "1", "--s", "0", "--form", "all"});
    EXPECT_EQ(j["def"], 4.0);
    EXPECT_EQ(j["decomp"], 4.0);
    EXPECT_EQ(j["euler"], 4.0);
}

TEST(Cli, SeriesVerifyPasses)
{
    const Result r = run({"series", "--disc", "5", "--ideal", "ok", "--m", "1", "--s", "4", "--B", "5000", "--verify"});
    EXPECT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["pass"], true);
    EXPECT_TRUE(j.contains("lhs"));
    EXPECT_TRUE(j.contains("rhs"));
    EXPECT_EQ(j["factors"].size(), 15u);
}

TEST(Cli, SeriesVerifyFailureExitCode)
{
    const Result r = run({"series", "--disc", "5", "--m", "1", "--s", "3", "--B", "50", "--verify", "--tol", "1e-12"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(Json::parse(r.out)["pass"], false);
}

TEST(Cli, GaussAndGenusAndIdeal)
{
    const Json g = run_json({"gauss", "--disc", "5", "--a", "1", "--b", "5"});
    EXPECT_EQ(g["closed"]["kind"], "ramified");
    EXPECT_EQ(g["closed"]["coeff"], "5");
    EXPECT_EQ(g["agree"], true);

    const Json c = run_json({"gauss", "--kind", "classical", "--a", "2", "--c", "5"});
    EXPECT_EQ(c["closed"]["coeff"], "-1");

    const Json t = run_json({"gauss", "--kind", "twisted", "--p", "5", "--r", "2", "--c", "1"});
    EXPECT_LT(std::abs(t["value"]["re"].get<double>()), 1e-9);

    const Json gen = run_json({"genus", "--disc", "21", "--ideal", "prime:5,1"});
    EXPECT_EQ(gen["fingerprint"]["3"], -1);
    EXPECT_EQ(gen["fingerprint"]["7"], -1);

    const Json pa = run_json({"ideal", "--disc", "21", "--op", "primes-above", "--p", "5"});
    EXPECT_EQ(pa["primes"][0]["ideal"], "prim:5,1");
    EXPECT_EQ(pa["primes"][1]["ideal"], "prim:5,9");

    const Json mul = run_json({"ideal", "--disc", "21", "--ideal", "prim:3,3", "--op", "mul", "--other", "prim:3,3"});
    EXPECT_EQ(mul["product"], "frac:3:1,1");

    const Json inv = run_json({"ideal", "--disc", "21", "--ideal", "prim:5,1", "--op", "inverse"});
    EXPECT_EQ(inv["inverse"], "frac:1/5:5,9");

    const Json nrm = run_json({"ideal", "--disc", "21", "--ideal", "frac:1/5:5,1", "--op", "norm"});
    EXPECT_EQ(nrm["norm"], "1/5");

    const Json val = run_json({"ideal", "--disc", "21", "--ideal", "prim:25,11", "--op", "valuation", "--p", "5"});
    EXPECT_EQ(val["valuation"], 2);

    const Json pr = run_json({"ideal", "--disc", "5", "--op", "principal", "--elem", "1+1*sqrtD/2"});
    EXPECT_EQ(pr["ideal"], "ok");
}

TEST(Cli, OutputFormats)
{
    const Result csv = run({"repnum", "--disc", "5", "--m", "1", "--b", "4", "--output", "csv"});
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.rfind("key,value\nN,6\nagree,true\n", 0), 0u) << csv.out;

    const Result plain = run({"sigma", "--disc", "5", "--m", "2", "--s", "1", "--output", "plain"});
    EXPECT_EQ(plain.code, 0);
    EXPECT_NE(plain.out.find("vanishes: true"), std::string::npos) << plain.out;
}

TEST(Cli, ByteStableOutput)
{
    const std::vector<std::string> args{"series", "--disc", "21", "--ideal", "prime:5,1", "--m", "5", "--verify"};
    EXPECT_EQ(run(args).out, run(args).out);
    const Result meta = run({"genus", "--disc", "21", "--meta"});
    EXPECT_EQ(meta.out, run({"genus", "--disc", "21"}).out);
    EXPECT_NE(meta.err.find("timestamp"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"repnum", "--disc", "5", "--b", "4"}).code, 2);
    EXPECT_EQ(run({"repnum", "--disc", "4", "--m", "1", "--b", "4"}).code, 2);
    EXPECT_EQ(run({"repnum", "--disc", "21", "--ideal", "prim:5,2", "--m", "1", "--b", "4"}).code, 2);
    EXPECT_EQ(run({"sigma", "--disc", "5", "--m", "1", "--s", "0", "--form", "bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
    EXPECT_EQ(run({"repnum", "--disc", "5", "--m", "1", "--b", "4", "--output", "xml"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ComputationErrors)
{
    // b above the enumeration bound
    const Result r = run({"repnum", "--disc", "5", "--m", "1", "--b", "200", "--method", "brute", "--max-b", "100"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error"), std::string::npos);
    EXPECT_EQ(run({"sigma", "--disc", "5", "--m", "0", "--s", "1"}).code, 1);
}

TEST(Cli, ConfigPrecedence)
{
    const auto path = std::filesystem::temp_directory_path() / "quadrep_test.cfg";
    {
        std::ofstream f(path);
        f << "# bounds\nmax_enum_b = 100\noutput=plain\n";
    }
    const std::vector<std::string> base{"repnum", "--disc", "5", "--m", "1", "--b", "150", "--method", "brute",
                                        "--config", path.string()};
    EXPECT_EQ(run(base).code, 1);

    ::setenv("QUADREP_MAX_B", "1000", 1);
    const Result env = run(base);
    EXPECT_EQ(env.code, 0) << env.err;
    EXPECT_EQ(env.out.rfind("N: ", 0), 0u) << env.out;

    auto flagged = base;
    flagged.insert(flagged.end(), {"--max-b", "120"});
    EXPECT_EQ(run(flagged).code, 1);
    ::unsetenv("QUADREP_MAX_B");

    {
        std::ofstream f(path);
        f << "unknown_key=3\n";
    }
    EXPECT_EQ(run(base).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, VerifySigmaSuite)
{
    const Json j = run_json({"verify", "--suite", "sigma"});
    EXPECT_EQ(j["pass"], true);
    ASSERT_EQ(j["criteria"].size(), 1u);
    EXPECT_EQ(j["criteria"][0]["id"], "A4");
}

TEST(Cli, BigIntegersAreStrings)
{
    EXPECT_TRUE(quadrep::cli::integer_json(std::int64_t{1} << 53).is_string());
    EXPECT_TRUE(quadrep::cli::integer_json((std::int64_t{1} << 53) - 1).is_number());
    EXPECT_TRUE(quadrep::cli::integer_json(quadrep::Integer(1) << 80).is_string());
}

TEST(Cli, BinaryExitCodes)
{
    const std::string bin = QUADREP_BINARY;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("repnum --disc 5 --m 1 --b 4"), 0);
    EXPECT_EQ(status("repnum --disc 5 --m 1"), 2);
    EXPECT_EQ(status("sigma --disc 5 --m 0 --s 1"), 1);
    EXPECT_EQ(status("series --disc 5 --m 1 --s 3 --B 50 --verify --tol 1e-12"), 3);
}
