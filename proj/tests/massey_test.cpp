#include "hermform/errors.hpp"
#include "hermform/massey.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace hermform {

void PrintTo(const AppendixCase& c, std::ostream* os)
{
    *os << c.id;
}

namespace {

using testing::catalog_model;
using testing::kSeed;

TEST(Massey, IwasawaByHand)
{
    // d p3 = -p1 p2 gives del dbar(p3 q3) = -p1 p2 q1 q2, so f_ab = -p3 q3,
    // f_bc = 0 and the representative is -(-1)^2 f_ab q1 q2 = p3 q1 q2 q3.
    Model m = catalog_model("nakamura:III.2");
    Hodge h(m);
    const ModelSpec& s = m.spec();
    MasseyVerdict v = triple_abc_massey(h, parse_form(s, "p1*p2"), parse_form(s, "q1*q2"), parse_form(s, "q1*q2"));
    EXPECT_EQ(v.f_ab, parse_form(s, "-p3*q3"));
    EXPECT_TRUE(v.f_bc.is_zero());
    EXPECT_EQ(v.representative, parse_form(s, "p3*q1*q2*q3"));
    EXPECT_EQ(v.bidegree, (Bidegree{1, 3}));
    EXPECT_TRUE(v.nonzero);
    EXPECT_EQ(v.aeppli_harmonic, v.representative);
}

TEST(Massey, PotentialIsMinimumNorm)
{
    Model m = catalog_model("nakamura:IV.3");
    Hodge h(m);
    const Form t = wedge(parse_form(m.spec(), "p1*p2"), parse_form(m.spec(), "q1*q2"));
    Form f = solve_potential(h, t, {2, 2});
    EXPECT_EQ(m.del(m.dbar(f)), t);
    const Bidegree src{1, 1};
    Vector c = h.coordinates(f, src);
    const Subspace kernel = kernel_basis(h.ddbar(src));
    for (const auto& k : kernel.basis())
        EXPECT_TRUE(h.metric(src).inner(c, k).is_zero());
}

TEST(Massey, UndefinedWhenProductIsNotExact)
{
    Model m = catalog_model("torus:n=2");
    Hodge h(m);
    const ModelSpec& s = m.spec();
    EXPECT_THROW(triple_abc_massey(h, parse_form(s, "p1"), parse_form(s, "q1"), parse_form(s, "p2")), MasseyUndefined);
}

TEST(Massey, RejectsNonHarmonicInput)
{
    Model m = catalog_model("nakamura:III.2");
    Hodge h(m);
    const ModelSpec& s = m.spec();
    EXPECT_THROW(triple_abc_massey(h, parse_form(s, "p3"), parse_form(s, "q1"), parse_form(s, "q1")),
                 PreconditionError);
    EXPECT_THROW(triple_abc_massey(h, parse_form(s, "p1 + q1"), parse_form(s, "q1"), parse_form(s, "q1")),
                 PreconditionError);
}

TEST(Massey, RejectsWrongPotential)
{
    Model m = catalog_model("nakamura:III.2");
    Hodge h(m);
    const ModelSpec& s = m.spec();
    Form a = parse_form(s, "p1*p2"), b = parse_form(s, "q1*q2");
    EXPECT_THROW(triple_abc_massey(h, a, b, b, parse_form(s, "p3*q3"), Form(m.algebra())), PreconditionError);
}

class AppendixCaseTest : public ::testing::TestWithParam<AppendixCase> {};

TEST_P(AppendixCaseTest, ProductIsNonzero)
{
    AppendixReport r = verify_appendix_case(GetParam());
    EXPECT_TRUE(r.nonzero) << r.message;
    EXPECT_EQ(r.verified, r.nonzero && r.matches_listed);
}

INSTANTIATE_TEST_SUITE_P(Listed, AppendixCaseTest, ::testing::ValuesIn(appendix_cases()),
                         [](const ::testing::TestParamInfo<AppendixCase>& info) {
                             std::string name = info.param.id;
                             for (const auto& [k, v] : info.param.params)
                                 name += "_" + k + (v == Scalar(-1) ? "m1" : v.to_string());
                             for (char& c : name)
                                 if (!std::isalnum(static_cast<unsigned char>(c)))
                                     c = '_';
                             return name;
                         });

TEST(Massey, V9ListedRepresentativeHasWrongBidegree)
{
    AppendixCase c = appendix_case("V.9");
    AppendixReport r = verify_appendix_case(c);
    EXPECT_TRUE(r.nonzero);
    EXPECT_FALSE(r.matches_listed);
    EXPECT_EQ(r.verdict.bidegree, (Bidegree{1, 2}));
    Model m = load_model(c.model);
    EXPECT_EQ(parse_form(m.spec(), c.expected).bidegree(), (Bidegree{1, 3}));
    Hodge h(m);
    const ModelSpec& s = m.spec();
    MasseyVerdict v = triple_abc_massey(h, parse_form(s, c.a), parse_form(s, c.b), parse_form(s, c.c));
    EXPECT_TRUE(v.aeppli_harmonic.proportionality(parse_form(s, "p3*q2*q3")));
}

TEST(Massey, V17OtherParameters)
{
    for (long alpha : {2L, 3L})
        for (long beta : {1L, -1L, 2L}) {
            AppendixCase c = appendix_case("V.17", {{"alpha", Scalar(alpha)}, {"beta", Scalar(beta)}});
            AppendixReport r = verify_appendix_case(c);
            EXPECT_TRUE(r.verified) << alpha << "," << beta << ": " << r.message;
        }
    // alpha beta (1 + alpha + beta) = 0 is excluded.
    EXPECT_THROW(load_model("nakamura:V.17", {{"alpha", Scalar(1)}, {"beta", Scalar(-2)}}), Error);
}

TEST(MasseyProperty, VerdictIndependentOfPotentials)
{
    std::mt19937_64 rng(kSeed);
    for (const auto& c : appendix_cases()) {
        Model m = load_model(c.model, c.params);
        Hodge h(m);
        const ModelSpec& s = m.spec();
        EXPECT_EQ(perturbation_disagreements(h, parse_form(s, c.a), parse_form(s, c.b), parse_form(s, c.c), 20, rng), 0)
            << c.id;
    }
}

} // namespace
} // namespace hermform
