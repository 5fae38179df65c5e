#include "hermform/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hermform {
namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    args.insert(args.begin(), "--ascii");
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

bool has(const std::string& text, const std::string& needle)
{
    return text.find(needle) != std::string::npos;
}

TEST(Cli, List)
{
    Result r = run({"list"});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "nakamura:III.2"));
    EXPECT_TRUE(has(r.out, "ce:u=U,v=V"));
}

TEST(Cli, UnknownVerbAndOptions)
{
    EXPECT_EQ(run({"frobnicate"}).status, 1);
    EXPECT_EQ(run({"cohomology", "--bogus"}).status, 1);
    EXPECT_EQ(run({}).status, 1);
    Result r = run({"cohomology"});
    EXPECT_EQ(r.status, 1);
    EXPECT_TRUE(has(r.err, "--model"));
    EXPECT_EQ(run({"cohomology", "--model", "nope"}).status, 1);
    EXPECT_EQ(run({"formality", "--model", "iwasawa", "--notion", "kahler"}).status, 1);
    EXPECT_EQ(run({"cohomology", "--model", "iwasawa", "--theories", "xyz"}).status, 1);
}

TEST(Cli, CohomologyDiamondAndJsonAgree)
{
    Result text = run({"cohomology", "--model", "torus:n=1", "--theories", "bc"});
    EXPECT_EQ(text.status, 0);
    EXPECT_EQ(text.out, "Bott-Chern h_BC:\n    1\n  1   1\n    1\n");
    Result json = run({"cohomology", "--model", "torus:n=1", "--json"});
    EXPECT_EQ(json.status, 0);
    EXPECT_TRUE(has(json.out, "\"h_bc\""));
    EXPECT_EQ(json.out, run({"cohomology", "--model", "torus:n=1", "--json"}).out);
}

TEST(Cli, DiamondLayout)
{
    EXPECT_EQ(cli::render_diamond({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}),
              "      1\n"
              "    4   2\n"
              "  7   5   3\n"
              "    8   6\n"
              "      9\n");
}

TEST(Cli, FormalityObstruction)
{
    Result r = run({"formality", "--model", "nakamura:III.2", "--notion", "bott-chern"});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "obstructed: holomorphic form phi^3 with del(phi^3) != 0")) << r.out;
    std::ostringstream out, err;
    cli::run({"formality", "--model", "nakamura:III.2", "--notion", "bott-chern"}, out, err);
    EXPECT_TRUE(has(out.str(), "obstructed: holomorphic form φ³ with ∂φ³ ≠ 0")) << out.str();
}

TEST(Cli, Massey)
{
    Result r = run({"--seed", "7", "massey", "--model", "nakamura:III.2", "--a", "p1*p2", "--b", "q1*q2", "--c",
                    "q1*q2", "--perturb", "5"});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(has(r.out, "triple ABC-Massey product: nonzero"));
    EXPECT_TRUE(has(r.out, "representative: phi^{3 ~1~2~3}"));
    EXPECT_TRUE(has(r.out, "perturbed potentials agreeing: 5/5 (seed 7)"));
    Result bad = run({"massey", "--model", "torus:n=2", "--a", "p1", "--b", "q1", "--c", "p2"});
    EXPECT_EQ(bad.status, 1);
}

TEST(Cli, VerifySingleCase)
{
    Result r = run({"verify-appendix", "--case", "III.2"});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "1/1 cases verified"));
    EXPECT_EQ(run({"verify-appendix", "--case", "V.17"}).status, 1);
    Result v17 = run({"verify-appendix", "--case", "V.17", "--param", "alpha=1", "--param", "beta=-1"});
    EXPECT_EQ(v17.status, 0);
    EXPECT_TRUE(has(v17.out, "1/1 cases verified"));
}

TEST(Cli, CalabiEckmann)
{
    Result r = run({"ce", "--u", "1", "--v", "1", "--all-checks"});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(has(r.out, "geometrically Bott-Chern formal: yes"));
    EXPECT_TRUE(has(r.out, "harmonic dimensions equal quotient dimensions: yes"));
    Result no = run({"ce", "--u", "2", "--v", "2"});
    EXPECT_TRUE(has(no.out, "geometrically Bott-Chern formal: no"));
    EXPECT_TRUE(has(no.out, "violated: (del dbar)*"));
}

TEST(Cli, Obstruct)
{
    const std::string path = temp_file("k3.json", R"({"n": 2, "betti": [1, 0, 22, 0, 1]})");
    Result r = run({"obstruct", "--input", path});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "geometric formality: obstructed"));
    EXPECT_TRUE(has(r.out, "b_2 = 22 > 6 = b_2(T^4)"));
    Result json = run({"obstruct", "--input", path, "--json"});
    EXPECT_TRUE(has(json.out, "\"not_obstructed_by_these_tests\"") || has(json.out, "\"obstructed\""));
    const std::string bad = temp_file("bad.json", R"({"n": 2, "h_bc": [[1,2,0],[3,1,0],[0,0,1]]})");
    EXPECT_EQ(run({"obstruct", "--input", bad}).status, 1);
    EXPECT_EQ(run({"obstruct", "--input", "/nonexistent.json"}).status, 1);
}

TEST(Cli, Parse)
{
    const std::string good = temp_file("good.alg", "model t dim 2\nholo p1 p2\nd p2 = p1*p2\n");
    Result r = run({"parse", good, "--validate"});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "ok: t, complex dimension 2"));
    const std::string bad = temp_file("bad.alg", "model t dim 2\nholo p1 p2\nd p2 = p1 *\n");
    Result e = run({"parse", bad, "--validate"});
    EXPECT_EQ(e.status, 1);
    EXPECT_TRUE(has(e.err, "line 3, column 12"));
}

} // namespace
} // namespace hermform
