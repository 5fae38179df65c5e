#include "hermform/errors.hpp"
#include "hermform/formality.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace hermform {
namespace {

using testing::catalog_model;
using testing::small_catalog_ids;

constexpr Notion kNotions[] = {Notion::geom_dolbeault, Notion::geom_bott_chern, Notion::geom_abc, Notion::geom_aeppli,
                               Notion::geom_de_rham};

TEST(Formality, TorusIsFormalInEverySense)
{
    Hodge h(catalog_model("torus:n=2"));
    for (Notion n : kNotions) {
        FormalityReport r = check_formality(h, n);
        EXPECT_TRUE(r.verdict) << to_string(n);
        EXPECT_FALSE(r.witness);
    }
    EXPECT_FALSE(holomorphic_closedness_obstruction(h));
    for (const auto& row : ddbar_p0_report(h))
        EXPECT_TRUE(row.all());
}

TEST(Formality, CalabiEckmannStandardMetric)
{
    struct Row {
        int u, v;
        bool bc, dolbeault;
    };
    const Row rows[] = {{0, 0, true, true},   {0, 1, true, true},   {1, 1, true, false}, {0, 2, false, true},
                        {1, 2, false, false}, {2, 2, false, false}, {2, 3, false, false}};
    for (const auto& r : rows) {
        Hodge h(catalog_model("ce:u=" + std::to_string(r.u) + ",v=" + std::to_string(r.v)));
        EXPECT_EQ(check_formality(h, Notion::geom_bott_chern).verdict, r.bc) << r.u << "," << r.v;
        EXPECT_EQ(check_formality(h, Notion::geom_dolbeault).verdict, r.dolbeault) << r.u << "," << r.v;
    }
}

TEST(Formality, CalabiEckmannWitnessIsTheExactSquare)
{
    Model m = catalog_model("ce:u=1,v=2");
    Hodge h(m);
    FormalityReport r = check_formality(h, Notion::geom_bott_chern);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->condition, "(del dbar)*");
    EXPECT_EQ(r.witness->product, wedge(r.witness->first, *r.witness->second));
    const Form phi = m.generator("phi"), phib = m.generator("phib");
    const Form w1 = m.generator("w1"), w2 = m.generator("w2");
    const Form exact = m.del(m.dbar(wedge(phi, phib)));
    EXPECT_EQ(exact, wedge(w1, w1) + wedge(w2, w2));
    EXPECT_TRUE(m.del(m.dbar(r.witness->image)).proportionality(exact));
}

TEST(Formality, WitnessesAreGenuine)
{
    for (const auto& id : small_catalog_ids()) {
        Hodge h(catalog_model(id));
        for (Notion n : {Notion::geom_dolbeault, Notion::geom_bott_chern, Notion::geom_aeppli, Notion::geom_de_rham}) {
            FormalityReport r = check_formality(h, n);
            EXPECT_EQ(r.verdict, !r.witness) << id << " " << to_string(n);
            if (!r.witness)
                continue;
            const Witness& w = *r.witness;
            ASSERT_TRUE(w.second);
            EXPECT_EQ(w.product, wedge(w.first, *w.second));
            EXPECT_FALSE(w.image.is_zero());
            if (n == Notion::geom_de_rham)
                continue;
            const Theory t = n == Notion::geom_dolbeault ? Theory::dolbeault
                             : n == Notion::geom_bott_chern ? Theory::bott_chern
                                                            : Theory::aeppli;
            auto v = h.harmonic_violation(t, w.product, *w.product.bidegree());
            ASSERT_TRUE(v);
            EXPECT_EQ(v->condition, w.condition);
        }
    }
}

TEST(FormalityProperty, ImplicationDiagram)
{
    for (const auto& id : small_catalog_ids()) {
        Hodge h(catalog_model(id));
        const bool dol = check_formality(h, Notion::geom_dolbeault).verdict;
        const bool bc = check_formality(h, Notion::geom_bott_chern).verdict;
        const bool abc = check_formality(h, Notion::geom_abc).verdict;
        const FormalityReport aep = check_formality(h, Notion::geom_aeppli);
        const bool dr = check_formality(h, Notion::geom_de_rham).verdict;
        EXPECT_TRUE(!abc || bc) << id;
        EXPECT_TRUE(!aep.verdict || abc) << id;
        EXPECT_TRUE(!aep.verdict || dol) << id;
        EXPECT_TRUE(!aep.verdict || dr) << id;
        EXPECT_EQ(*aep.module_condition, *aep.spaces_coincide) << id;
        if (holomorphic_closedness_obstruction(h))
            EXPECT_FALSE(bc) << id;
        if (aep.verdict)
            for (const auto& row : ddbar_p0_report(h))
                EXPECT_TRUE(row.all()) << id;
    }
}

TEST(Formality, HolomorphicObstructionOnParallelisableModels)
{
    Model m = catalog_model("nakamura:III.2");
    Hodge h(m);
    auto f = holomorphic_closedness_obstruction(h);
    ASSERT_TRUE(f);
    EXPECT_EQ(*f, m.generator("p3"));
    EXPECT_FALSE(check_formality(h, Notion::geom_bott_chern).verdict);
    auto rows = ddbar_p0_report(h);
    EXPECT_TRUE(rows[0].all());
    EXPECT_FALSE(rows[1].bc_p0_equals_dbar);
}

TEST(Formality, ParseNotion)
{
    EXPECT_EQ(parse_notion("bott-chern"), Notion::geom_bott_chern);
    EXPECT_EQ(parse_notion("geom_abc"), Notion::geom_abc);
    EXPECT_EQ(parse_notion("de-rham"), Notion::geom_de_rham);
    EXPECT_FALSE(parse_notion("kahler"));
}

} // namespace
} // namespace hermform
