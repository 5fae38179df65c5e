#include "hermform/formality.hpp"

#include "hermform/errors.hpp"

#include <functional>

namespace hermform {

std::string to_string(Notion n)
{
    switch (n) {
    case Notion::geom_dolbeault: return "geom_dolbeault";
    case Notion::geom_bott_chern: return "geom_bott_chern";
    case Notion::geom_abc: return "geom_abc";
    case Notion::geom_aeppli: return "geom_aeppli";
    case Notion::geom_de_rham: return "geom_de_rham";
    }
    return "?";
}

std::optional<Notion> parse_notion(const std::string& s)
{
    if (s == "geom_dolbeault" || s == "dolbeault" || s == "dbar")
        return Notion::geom_dolbeault;
    if (s == "geom_bott_chern" || s == "bott-chern" || s == "bott_chern" || s == "bc")
        return Notion::geom_bott_chern;
    if (s == "geom_abc" || s == "abc")
        return Notion::geom_abc;
    if (s == "geom_aeppli" || s == "aeppli")
        return Notion::geom_aeppli;
    if (s == "geom_de_rham" || s == "de-rham" || s == "de_rham" || s == "dr" || s == "riemannian")
        return Notion::geom_de_rham;
    return std::nullopt;
}

namespace {

std::vector<Bidegree> bidegrees(const Hodge& h)
{
    std::vector<Bidegree> out;
    for (int p = 0; p <= h.n(); ++p)
        for (int q = 0; q <= h.n(); ++q)
            out.push_back({p, q});
    return out;
}

using FormsAt = std::function<const std::vector<Form>&(Bidegree)>;
// Returns the failed condition and its image when x (of bidegree b) is not in the target space.
using Test = std::function<std::optional<Violation>(const Form& x, Bidegree b)>;

std::optional<Witness> scan_products(const Hodge& h, const FormsAt& left, const FormsAt& right, const Test& test)
{
    const auto bs = bidegrees(h);
    for (Bidegree b1 : bs)
        for (const Form& x : left(b1))
            for (Bidegree b2 : bs) {
                const Bidegree t = b1 + b2;
                if (!h.in_range(t))
                    continue;
                for (const Form& y : right(b2)) {
                    Form xy = wedge(x, y);
                    if (xy.is_zero())
                        continue;
                    if (auto v = test(xy, t))
                        return Witness{x, y, xy, v->condition, v->image};
                }
            }
    return std::nullopt;
}

Test harmonic_test(const Hodge& h, Theory t)
{
    return [&h, t](const Form& x, Bidegree b) -> std::optional<Violation> {
        if (h.harmonic(t, b).space.contains(h.coordinates(x, b)))
            return std::nullopt;
        auto v = h.harmonic_violation(t, x, b);
        if (!v)
            throw InvariantViolation("form satisfies the harmonic equations but lies outside the harmonic basis span");
        return v;
    };
}

FormsAt harmonic_forms(const Hodge& h, Theory t)
{
    return [&h, t](Bidegree b) -> const std::vector<Form>& { return h.harmonic(t, b).forms; };
}

FormalityReport check_abc(const Hodge& h)
{
    FormalityReport r{Notion::geom_abc, true, std::nullopt, std::nullopt, std::nullopt};
    std::map<Bidegree, std::vector<Form>> spanning;
    std::map<Bidegree, Subspace> spaces;
    for (Bidegree b : bidegrees(h)) {
        const auto& bc = h.harmonic(Theory::bott_chern, b);
        const auto& a = h.harmonic(Theory::aeppli, b);
        spaces[b] = sum(bc.space, a.space);
        auto& f = spanning[b];
        f = bc.forms;
        f.insert(f.end(), a.forms.begin(), a.forms.end());
    }
    Test in_sum = [&](const Form& x, Bidegree b) -> std::optional<Violation> {
        if (!h.in_range(b))
            return x.is_zero() ? std::nullopt : std::optional<Violation>(Violation{"outside H_A + H_BC", x});
        Vector v = h.coordinates(x, b);
        if (spaces.at(b).contains(v))
            return std::nullopt;
        Vector p = orthogonal_project(spaces.at(b), v, h.metric(b));
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] -= p[k];
        return Violation{"outside H_A + H_BC", h.form(b, v)};
    };
    for (Bidegree b : bidegrees(h))
        for (const Form& x : spanning[b]) {
            const std::pair<Form, Bidegree> images[] = {{h.model().del(x), b + Bidegree{1, 0}},
                                                        {h.model().dbar(x), b + Bidegree{0, 1}}};
            for (const auto& [img, tb] : images) {
                if (img.is_zero())
                    continue;
                if (auto v = in_sum(img, tb)) {
                    r.verdict = false;
                    r.witness = Witness{x, std::nullopt, img, &img == &images[0].first ? "del" : "dbar", v->image};
                    return r;
                }
            }
        }
    FormsAt forms = [&](Bidegree b) -> const std::vector<Form>& { return spanning.at(b); };
    if (auto w = scan_products(h, forms, forms, in_sum)) {
        r.verdict = false;
        r.witness = std::move(w);
    }
    return r;
}

bool spaces_coincide(const Hodge& h)
{
    for (Bidegree b : bidegrees(h)) {
        const auto& bc = h.harmonic(Theory::bott_chern, b).space;
        if (!bc.same_as(h.harmonic(Theory::dolbeault, b).space) || !bc.same_as(h.harmonic(Theory::aeppli, b).space))
            return false;
    }
    for (int k = 0; k <= 2 * h.n(); ++k) {
        std::vector<Vector> vs;
        for (Bidegree b : h.total_bidegrees(k))
            for (const Form& f : h.harmonic(Theory::bott_chern, b).forms)
                vs.push_back(h.total_coordinates(f, k));
        if (!Subspace::span(h.total_dim(k), vs).same_as(h.harmonic_de_rham(k).space))
            return false;
    }
    return !scan_products(h, harmonic_forms(h, Theory::bott_chern), harmonic_forms(h, Theory::bott_chern),
                          harmonic_test(h, Theory::bott_chern));
}

FormalityReport check_de_rham(const Hodge& h)
{
    FormalityReport r{Notion::geom_de_rham, true, std::nullopt, std::nullopt, std::nullopt};
    const int top = 2 * h.n();
    for (int k1 = 0; k1 <= top; ++k1)
        for (const Form& x : h.harmonic_de_rham(k1).forms)
            for (int k2 = 0; k1 + k2 <= top; ++k2)
                for (const Form& y : h.harmonic_de_rham(k2).forms) {
                    Form xy = wedge(x, y);
                    if (xy.is_zero())
                        continue;
                    const int k = k1 + k2;
                    if (h.harmonic_de_rham(k).space.contains(h.total_coordinates(xy, k)))
                        continue;
                    auto v = h.de_rham_violation(xy, k);
                    if (!v)
                        throw InvariantViolation("form satisfies d = d* = 0 but lies outside the harmonic basis span");
                    r.verdict = false;
                    r.witness = Witness{x, y, xy, v->condition, v->image};
                    return r;
                }
    return r;
}

} // namespace

FormalityReport check_formality(const Hodge& h, Notion notion)
{
    FormalityReport r{notion, true, std::nullopt, std::nullopt, std::nullopt};
    switch (notion) {
    case Notion::geom_dolbeault:
    case Notion::geom_bott_chern: {
        const Theory t = notion == Notion::geom_dolbeault ? Theory::dolbeault : Theory::bott_chern;
        r.witness = scan_products(h, harmonic_forms(h, t), harmonic_forms(h, t), harmonic_test(h, t));
        r.verdict = !r.witness;
        return r;
    }
    case Notion::geom_abc:
        return check_abc(h);
    case Notion::geom_aeppli:
        r.witness = scan_products(h, harmonic_forms(h, Theory::aeppli), harmonic_forms(h, Theory::bott_chern),
                                  harmonic_test(h, Theory::aeppli));
        r.module_condition = !r.witness;
        r.spaces_coincide = spaces_coincide(h);
        r.verdict = *r.module_condition;
        return r;
    case Notion::geom_de_rham:
        return check_de_rham(h);
    }
    return r;
}

std::optional<Form> holomorphic_closedness_obstruction(const Hodge& h)
{
    for (int p = 1; p <= h.n(); ++p) {
        const Bidegree b{p, 0};
        Subspace k = kernel_basis(h.dbar(b));
        for (const auto& v : k.basis())
            if (!is_zero(h.del(b).apply(v)))
                return h.form(b, v);
    }
    return std::nullopt;
}

std::vector<DdbarRow> ddbar_p0_report(const Hodge& h)
{
    const int n = h.n();
    auto same = [&](Theory s, Theory t, Bidegree b) { return h.harmonic(s, b).space.same_as(h.harmonic(t, b).space); };
    std::vector<DdbarRow> out;
    for (int p = 0; p <= n; ++p)
        out.push_back({p, same(Theory::bott_chern, Theory::dolbeault, {p, 0}),
                       same(Theory::bott_chern, Theory::conj_dolbeault, {0, p}),
                       same(Theory::aeppli, Theory::dolbeault, {p, n}),
                       same(Theory::aeppli, Theory::conj_dolbeault, {n, p})});
    return out;
}

} // namespace hermform
