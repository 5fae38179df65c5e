#include "hermform/errors.hpp"
#include "hermform/hodge.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace hermform {
namespace {

using testing::catalog_model;
using testing::kSeed;
using testing::random_form;
using testing::small_catalog_ids;

constexpr Theory kBigraded[] = {Theory::dolbeault, Theory::conj_dolbeault, Theory::bott_chern, Theory::aeppli};

long choose(int n, int k)
{
    long r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

// Tables are shared across tests: harmonic spaces are cached per Hodge.
const Hodge& hodge_of(const std::string& id)
{
    static std::map<std::string, Hodge> cache;
    auto it = cache.find(id);
    if (it == cache.end())
        it = cache.emplace(id, Hodge(catalog_model(id))).first;
    return it->second;
}

TEST(Hodge, TorusNumbersAreBinomials)
{
    for (int n = 1; n <= 3; ++n) {
        CohomologyTable t = hodge_of("torus:n=" + std::to_string(n)).table();
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                const long h = choose(n, p) * choose(n, q);
                EXPECT_EQ(t.h_dbar[p][q], h);
                EXPECT_EQ(t.h_bc[p][q], h);
                EXPECT_EQ(t.h_a[p][q], h);
            }
        for (int k = 0; k <= 2 * n; ++k)
            EXPECT_EQ(t.betti[k], choose(2 * n, k));
    }
}

TEST(Hodge, IwasawaBottChernNumbers)
{
    // Rows by total degree, from (k,0) to (0,k).
    const std::vector<std::vector<int>> expected{{1}, {2, 2}, {3, 4, 3}, {1, 6, 6, 1}, {2, 8, 2}, {3, 3}, {1}};
    CohomologyTable t = hodge_of("iwasawa").table();
    for (int k = 0; k <= 6; ++k) {
        std::vector<int> row;
        for (int p = std::min(k, 3); p >= std::max(0, k - 3); --p)
            row.push_back(t.h_bc[p][k - p]);
        EXPECT_EQ(row, expected[k]) << "degree " << k;
    }
    EXPECT_EQ(t.betti, (std::vector<int>{1, 4, 8, 10, 8, 4, 1}));
    EXPECT_EQ(t.h_dbar[0][1], 2);
    EXPECT_EQ(t.h_dbar[1][1], 6);
}

TEST(HodgeProperty, HarmonicDimensionsMatchQuotients)
{
    for (const auto& id : small_catalog_ids()) {
        const Hodge& h = hodge_of(id);
        for (int p = 0; p <= h.n(); ++p)
            for (int q = 0; q <= h.n(); ++q)
                for (Theory t : kBigraded)
                    EXPECT_EQ(h.harmonic(t, {p, q}).forms.size(), h.cohomology_dim(t, {p, q}))
                        << id << " " << to_string(t) << " " << to_string(Bidegree{p, q});
        for (int k = 0; k <= 2 * h.n(); ++k)
            EXPECT_EQ(h.harmonic_de_rham(k).forms.size(), h.betti_dim(k)) << id << " b_" << k;
    }
}

TEST(HodgeProperty, StarRouteAgreesWithAdjointRoute)
{
    for (const char* id : {"iwasawa", "nakamura:III.3", "ce:u=1,v=1", "ce:u=1,v=2", "example1:invariant"}) {
        const Hodge& h = hodge_of(id);
        for (int p = 0; p <= h.n(); ++p)
            for (int q = 0; q <= h.n(); ++q)
                for (Theory t : kBigraded)
                    EXPECT_TRUE(h.harmonic_via_star(t, {p, q}).same_as(h.harmonic(t, {p, q}).space))
                        << id << " " << to_string(t) << " " << to_string(Bidegree{p, q});
    }
}

TEST(HodgeProperty, HarmonicFormsSatisfyTheirEquations)
{
    for (const auto& id : small_catalog_ids()) {
        const Hodge& h = hodge_of(id);
        for (int p = 0; p <= h.n(); ++p)
            for (int q = 0; q <= h.n(); ++q)
                for (Theory t : kBigraded)
                    for (const Form& f : h.harmonic(t, {p, q}).forms)
                        EXPECT_FALSE(h.harmonic_violation(t, f, {p, q})) << id;
        for (int k = 0; k <= 2 * h.n(); ++k)
            for (const Form& f : h.harmonic_de_rham(k).forms)
                EXPECT_FALSE(h.de_rham_violation(f, k)) << id;
    }
}

TEST(HodgeProperty, StarExchangesBottChernAndAeppli)
{
    for (const auto& id : small_catalog_ids()) {
        const Hodge& h = hodge_of(id);
        const int n = h.n();
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                const Bidegree dual{n - p, n - q};
                std::vector<Vector> images;
                for (const Form& f : h.harmonic(Theory::bott_chern, {p, q}).forms)
                    images.push_back(h.coordinates(h.star(f), dual));
                EXPECT_TRUE(Subspace::span(h.dim(dual), images).same_as(h.harmonic(Theory::aeppli, dual).space))
                    << id << " " << to_string(Bidegree{p, q});
            }
    }
}

TEST(HodgeProperty, ConjugationSymmetriesOfTables)
{
    for (const auto& id : small_catalog_ids()) {
        const Hodge& h = hodge_of(id);
        CohomologyTable t = h.table();
        const int n = h.n();
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                EXPECT_EQ(t.h_bc[p][q], t.h_bc[q][p]) << id;
                EXPECT_EQ(t.h_a[p][q], t.h_a[q][p]) << id;
                EXPECT_EQ(t.h_dbar[p][q], t.h_del[q][p]) << id;
                EXPECT_EQ(t.h_dbar[p][q], t.h_dbar[n - p][n - q]) << id;
                EXPECT_EQ(t.h_bc[p][q], t.h_a[n - p][n - q]) << id;
                std::vector<Vector> conj;
                for (const Form& f : h.harmonic(Theory::bott_chern, {p, q}).forms)
                    conj.push_back(h.coordinates(f.conjugate(), {q, p}));
                EXPECT_TRUE(Subspace::span(h.dim({q, p}), conj).same_as(h.harmonic(Theory::bott_chern, {q, p}).space));
            }
        for (int k = 0; k <= 2 * n; ++k)
            EXPECT_EQ(t.betti[k], t.betti[2 * n - k]) << id;
    }
}

TEST(HodgeProperty, FrolicherInequalities)
{
    for (const auto& id : small_catalog_ids()) {
        CohomologyTable t = hodge_of(id).table();
        const int n = t.n;
        for (int k = 0; k <= 2 * n; ++k) {
            int dbar = 0, bc_a = 0;
            for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) {
                dbar += t.h_dbar[p][k - p];
                bc_a += t.h_bc[p][k - p] + t.h_a[p][k - p];
            }
            EXPECT_LE(t.betti[k], dbar) << id << " k=" << k;
            EXPECT_LE(2 * t.betti[k], bc_a) << id << " k=" << k;
        }
    }
}

TEST(HodgeProperty, ParallelisableFactorization)
{
    for (const auto& id : nakamura_ids()) {
        CohomologyTable t = hodge_of(id).table();
        for (int p = 0; p <= t.n; ++p)
            for (int q = 0; q <= t.n; ++q)
                EXPECT_EQ(t.h_dbar[p][q], choose(t.n, p) * t.h_dbar[0][q]) << id << " " << p << "," << q;
    }
}

TEST(HodgeProperty, StarNormalizesInnerProduct)
{
    Model m = catalog_model("nakamura:IV.3");
    InnerProduct ip;
    std::mt19937_64 rng(kSeed);
    for (int p = 0; p <= m.n(); ++p)
        for (int q = 0; q <= m.n(); ++q)
            for (const auto& mono : m.basis({p, q}))
                ip.set_weight(mono, mpq_class(static_cast<long>(1 + rng() % 4), static_cast<long>(1 + rng() % 3)));
    Hodge h(m, ip);
    const Form vol = Form::monomial(m.algebra(), m.volume());
    for (int t = 0; t < 30; ++t) {
        const Bidegree b{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
        Form a = random_form(rng, h, b), c = random_form(rng, h, b);
        EXPECT_EQ(wedge(a, h.star(c)), h.inner(a, c) * vol);
    }
}

TEST(HodgeProperty, StarIsAnInvolutionUpToSign)
{
    Hodge h(catalog_model("nakamura:IV.3"));
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < 30; ++t) {
        const Bidegree b{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
        Form a = random_form(rng, h, b);
        if (a.is_zero())
            continue;
        auto s = h.star(h.star(a)).proportionality(a);
        ASSERT_TRUE(s);
        EXPECT_TRUE(*s == Scalar(1) || *s == Scalar(-1));
    }
}

TEST(HodgeProperty, WeightedHarmonicDimensionsAreMetricIndependent)
{
    Model m = catalog_model("ce:u=1,v=1");
    Hodge standard(m);
    std::mt19937_64 rng(kSeed + 1);
    for (int trial = 0; trial < 3; ++trial) {
        InnerProduct ip;
        for (int p = 0; p <= m.n(); ++p)
            for (int q = 0; q <= m.n(); ++q)
                for (const auto& mono : m.basis({p, q}))
                    ip.set_weight(mono, mpq_class(static_cast<long>(1 + rng() % 5)));
        Hodge h(m, ip);
        for (int p = 0; p <= m.n(); ++p)
            for (int q = 0; q <= m.n(); ++q)
                for (Theory t : kBigraded)
                    EXPECT_EQ(h.harmonic(t, {p, q}).forms.size(), standard.harmonic(t, {p, q}).forms.size());
    }
}

TEST(Hodge, ClassOfIgnoresExactTerms)
{
    const Hodge& h = hodge_of("iwasawa");
    std::mt19937_64 rng(kSeed + 2);
    for (const Bidegree b : {Bidegree{1, 1}, Bidegree{2, 1}, Bidegree{2, 2}}) {
        for (const Form& f : h.harmonic(Theory::bott_chern, b).forms) {
            Form g = random_form(rng, h, b + Bidegree{-1, -1});
            Form shifted = f + h.model().del(h.model().dbar(g));
            CohomologyClass c0 = h.class_of(f, Theory::bott_chern, b);
            CohomologyClass c1 = h.class_of(shifted, Theory::bott_chern, b);
            EXPECT_EQ(c0.coordinates, c1.coordinates);
            EXPECT_EQ(c1.harmonic, f);
        }
        for (const Form& f : h.harmonic(Theory::aeppli, b).forms) {
            Form x = random_form(rng, h, b + Bidegree{-1, 0}), y = random_form(rng, h, b + Bidegree{0, -1});
            Form shifted = f + h.model().del(x) + h.model().dbar(y);
            EXPECT_EQ(h.class_of(shifted, Theory::aeppli, b).harmonic, f);
        }
    }
}

TEST(Hodge, ClassOfRequiresClosedForm)
{
    const Hodge& h = hodge_of("iwasawa");
    Form p3 = h.model().generator("p3");
    EXPECT_THROW(h.class_of(p3, Theory::bott_chern, {1, 0}), PreconditionError);
    EXPECT_THROW(h.coordinates(p3, {0, 1}), PreconditionError);
}

} // namespace
} // namespace hermform
