#include "hermform/algebra.hpp"
#include "hermform/errors.hpp"
#include "hermform/model.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace hermform {
namespace {

using testing::catalog_model;
using testing::kSeed;
using testing::random_form;

// Sign of sorting the concatenated odd factors of a and b into declaration
// order, counted by adjacent swaps.
int bubble_sign(const GradedAlgebra& alg, const Monomial& a, const Monomial& b)
{
    std::vector<std::size_t> seq;
    for (const Monomial* m : {&a, &b})
        for (std::size_t k = 0; k < alg.size(); ++k)
            if (alg.generator(k).odd() && m->exponent(k) > 0)
                seq.push_back(k);
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
            if (seq[j] > seq[j + 1]) {
                std::swap(seq[j], seq[j + 1]);
                sign = -sign;
            }
    return sign;
}

std::vector<Monomial> all_monomials(const Model& m)
{
    std::vector<Monomial> out;
    for (int p = 0; p <= m.n(); ++p)
        for (int q = 0; q <= m.n(); ++q)
            for (const auto& mono : m.algebra()->basis({p, q}))
                out.push_back(mono);
    return out;
}

TEST(Algebra, CoframeCounts)
{
    Model m = catalog_model("iwasawa");
    const auto& alg = *m.algebra();
    // (p,q)-monomials of an exterior algebra on 3 + 3 generators.
    EXPECT_EQ(alg.basis({1, 1}).size(), 9u);
    EXPECT_EQ(alg.basis({2, 1}).size(), 9u);
    EXPECT_EQ(alg.basis({3, 3}).size(), 1u);
    EXPECT_TRUE(alg.basis({4, 0}).empty());
}

TEST(Algebra, MonomialOrderPutsEarlierGeneratorsFirst)
{
    Model m = catalog_model("iwasawa");
    auto b = m.algebra()->basis({2, 0});
    ASSERT_EQ(b.size(), 3u);
    auto name = [&](const Monomial& x) {
        std::string s;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x.exponent(k))
                s += m.algebra()->generator(k).name;
        return s;
    };
    EXPECT_EQ(name(b[0]), "p1p2");
    EXPECT_EQ(name(b[1]), "p1p3");
    EXPECT_EQ(name(b[2]), "p2p3");
}

TEST(Algebra, TruncationKillsPowers)
{
    Model m = catalog_model("ce:u=1,v=2");
    Form w1 = m.generator("w1"), w2 = m.generator("w2");
    EXPECT_TRUE(wedge(w1, w1).is_zero());
    EXPECT_FALSE(wedge(w2, w2).is_zero());
    EXPECT_TRUE(wedge(w2, wedge(w2, w2)).is_zero());
    Form phi = m.generator("phi");
    EXPECT_TRUE(wedge(phi, phi).is_zero());
}

TEST(AlgebraProperty, KoszulSignMatchesBubbleSort)
{
    for (const char* id : {"iwasawa", "nakamura:V.3", "ce:u=2,v=1"}) {
        Model m = catalog_model(id);
        const auto& alg = *m.algebra();
        auto monos = all_monomials(m);
        std::mt19937_64 rng(kSeed);
        for (int t = 0; t < 400; ++t) {
            const Monomial& a = monos[rng() % monos.size()];
            const Monomial& b = monos[rng() % monos.size()];
            SignedMonomial s = alg.multiply(a, b);
            bool overflow = false;
            for (std::size_t k = 0; k < alg.size(); ++k)
                overflow = overflow || a.exponent(k) + b.exponent(k) >= alg.generator(k).truncation;
            if (overflow) {
                EXPECT_EQ(s.sign, 0);
                continue;
            }
            EXPECT_EQ(s.sign, bubble_sign(alg, a, b)) << id;
            for (std::size_t k = 0; k < alg.size(); ++k)
                EXPECT_EQ(s.monomial.exponent(k), a.exponent(k) + b.exponent(k));
        }
    }
}

TEST(AlgebraProperty, GradedCommutativeAndAssociative)
{
    for (const char* id : {"iwasawa", "ce:u=1,v=1", "nakamura:IV.3"}) {
        Model m = catalog_model(id);
        Hodge h(m);
        std::mt19937_64 rng(kSeed + 1);
        for (int t = 0; t < 40; ++t) {
            auto bd = [&] { return Bidegree{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}; };
            const Bidegree ba = bd(), bb = bd(), bc = bd();
            Form a = random_form(rng, h, ba), b = random_form(rng, h, bb), c = random_form(rng, h, bc);
            const Scalar sign((ba.total() * bb.total()) % 2 ? -1 : 1);
            EXPECT_EQ(wedge(a, b), sign * wedge(b, a)) << id;
            EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) << id;
            EXPECT_EQ(wedge(a, b + c), wedge(a, b) + wedge(a, c));
        }
    }
}

TEST(AlgebraProperty, ConjugationIsAnAntilinearAlgebraInvolution)
{
    for (const char* id : {"iwasawa", "ce:u=1,v=2"}) {
        Model m = catalog_model(id);
        Hodge h(m);
        std::mt19937_64 rng(kSeed + 2);
        for (int t = 0; t < 40; ++t) {
            const Bidegree ba{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
            const Bidegree bb{static_cast<int>(rng() % 2), static_cast<int>(rng() % 3)};
            Form a = random_form(rng, h, ba), b = random_form(rng, h, bb);
            EXPECT_EQ(a.conjugate().conjugate(), a);
            EXPECT_EQ(wedge(a, b).conjugate(), wedge(a.conjugate(), b.conjugate()));
            EXPECT_EQ((Scalar::i() * a).conjugate(), -Scalar::i() * a.conjugate());
            if (!a.is_zero())
                EXPECT_EQ(*a.conjugate().bidegree(), ba.conjugate());
        }
    }
}

TEST(AlgebraProperty, DifferentialsAreDerivationsSquaringToZero)
{
    for (const auto& id : testing::small_catalog_ids()) {
        Model m = catalog_model(id);
        Hodge h(m);
        std::mt19937_64 rng(kSeed + 3);
        for (int t = 0; t < 12; ++t) {
            const Bidegree ba{static_cast<int>(rng() % (m.n() + 1)), static_cast<int>(rng() % (m.n() + 1))};
            const Bidegree bb{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
            Form a = random_form(rng, h, ba), b = random_form(rng, h, bb);
            const Scalar sign(ba.total() % 2 ? -1 : 1);
            EXPECT_EQ(m.del(wedge(a, b)), wedge(m.del(a), b) + sign * wedge(a, m.del(b))) << id;
            EXPECT_EQ(m.dbar(wedge(a, b)), wedge(m.dbar(a), b) + sign * wedge(a, m.dbar(b))) << id;
            EXPECT_TRUE(m.del(m.del(a)).is_zero()) << id;
            EXPECT_TRUE(m.dbar(m.dbar(a)).is_zero()) << id;
            EXPECT_TRUE((m.del(m.dbar(a)) + m.dbar(m.del(a))).is_zero()) << id;
            EXPECT_EQ(m.del(a).conjugate(), m.dbar(a.conjugate())) << id;
        }
    }
}

TEST(Algebra, ProportionalityDetectsScalarMultiples)
{
    Model m = catalog_model("iwasawa");
    Form a = m.generator("p1") + Scalar::i() * m.generator("p2");
    Form b = Scalar(mpq_class(-3, 2)) * a;
    auto r = b.proportionality(a);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, Scalar(mpq_class(-3, 2)));
    EXPECT_FALSE((a + m.generator("p3")).proportionality(a));
    EXPECT_FALSE(Form(m.algebra()).proportionality(a));
}

TEST(Algebra, RejectsInconsistentGenerators)
{
    GeneratorSpec a{"a", {1, 0}, 2, 1}, b{"b", {1, 0}, 2, 0};
    EXPECT_THROW(GradedAlgebra({a, b}), ModelError);
    GeneratorSpec odd{"x", {1, 0}, 3, 1}, oddc{"y", {0, 1}, 3, 0};
    EXPECT_THROW(GradedAlgebra({odd, oddc}), ModelError);
    GeneratorSpec real{"w", {1, 0}, 2, 0};
    EXPECT_THROW(GradedAlgebra({real}), ModelError);
    GeneratorSpec zero{"z", {0, 0}, 2, 0};
    EXPECT_THROW(GradedAlgebra({zero}), ModelError);
}

TEST(Model, RejectsNonSquareZeroStructure)
{
    const char* src = "model bad dim 3\nholo p1 p2 p3\nd p1 = p1*p3\nd p3 = p1*p2\n";
    try {
        parse_model(src);
        FAIL() << "expected ModelError";
    } catch (const ModelError& e) {
        EXPECT_NE(std::string(e.what()).find("p3"), std::string::npos) << e.what();
    }
}

TEST(Model, RejectsWrongBidegree)
{
    EXPECT_THROW(parse_model("model bad dim 2\nholo p1 p2\nd p2 = p1\n"), Error);
    EXPECT_THROW(parse_model("model bad dim 2\nholo p1 p2\nd p2 = p1*q2\n"), Error);
}

TEST(Model, ConjugateCompletion)
{
    Model m = catalog_model("iwasawa");
    // d p3 = -p1 p2 forces dbar q3 = -q1 q2 and del q3 = 0.
    EXPECT_EQ(m.dbar(m.generator("q3")), -wedge(m.generator("q1"), m.generator("q2")));
    EXPECT_TRUE(m.del(m.generator("q3")).is_zero());
    EXPECT_TRUE(m.dbar(m.generator("p3")).is_zero());
}

TEST(Model, ExampleOneAction)
{
    // (i z1, i z2, -z3) preserves d p3 = -p1 p2.
    Model m = load_model("example1:invariant");
    EXPECT_EQ(m.basis({1, 1}).size(), 5u);
    EXPECT_EQ(m.basis({0, 0}).size(), 1u);
    EXPECT_EQ(m.basis({3, 3}).size(), 1u);
    // The group law forces dp3 to transform like p1 p2.
    const DiagonalAction a = example1_action();
    EXPECT_EQ(a.scalars[0] * a.scalars[1], a.scalars[2]);
}

TEST(Model, NonEquivariantActionRejected)
{
    // (i z1, -i z2, -z3) scales p1 p2 by 1 but p3 by -1.
    const Scalar i = Scalar::i();
    auto spec = parse_model(catalog_source("iwasawa"));
    DiagonalAction literal{{i, -i, Scalar(-1), -i, i, Scalar(-1)}};
    EXPECT_THROW(Model(spec, literal), ModelError);
    DiagonalAction bad_unit{{Scalar(2), Scalar(1), Scalar(2), Scalar(2), Scalar(1), Scalar(2)}};
    EXPECT_THROW(Model(spec, bad_unit), Error);
}

} // namespace
} // namespace hermform
