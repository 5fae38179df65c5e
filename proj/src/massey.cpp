#include "hermform/massey.hpp"

#include "hermform/errors.hpp"
#include "hermform/notation.hpp"

namespace hermform {
namespace {

Bidegree require_bidegree(const Form& f, const char* what)
{
    auto b = f.bidegree();
    if (!b)
        throw PreconditionError(std::string(what) + " must be a nonzero homogeneous form");
    return *b;
}

void require_bc_harmonic(const Hodge& h, const Form& f, const char* what)
{
    Bidegree b = require_bidegree(f, what);
    if (auto v = h.harmonic_violation(Theory::bott_chern, f, b))
        throw PreconditionError(std::string(what) + " is not Bott-Chern harmonic (" + v->condition + " is nonzero)");
}

Scalar parity_sign(Bidegree b)
{
    return Scalar(b.total() % 2 ? -1 : 1);
}

void require_potential(const Hodge& h, const Form& f, const Form& target, Bidegree target_bidegree, const char* what)
{
    const Bidegree src = target_bidegree + Bidegree{-1, -1};
    Vector img = h.ddbar(src).apply(h.coordinates(f, src));
    if (!(h.form(target_bidegree, img) == target))
        throw PreconditionError(std::string(what) + " does not solve its potential equation");
}

} // namespace

Form solve_potential(const Hodge& h, const Form& target, Bidegree target_bidegree)
{
    const Bidegree src = target_bidegree + Bidegree{-1, -1};
    Vector t = h.coordinates(target, target_bidegree);
    if (!h.in_range(src) || h.dim(src) == 0) {
        if (!is_zero(t))
            throw MasseyUndefined("target is not del dbar-exact");
        return Form(h.model().algebra());
    }
    const Matrix m = h.ddbar(src);
    auto x = solve(m, t);
    if (!x)
        throw MasseyUndefined("target is not del dbar-exact");
    Subspace kernel = kernel_basis(m);
    Vector k = orthogonal_project(kernel, *x, h.metric(src));
    for (std::size_t j = 0; j < x->size(); ++j)
        (*x)[j] -= k[j];
    return h.form(src, *x);
}

MasseyVerdict triple_abc_massey(const Hodge& h, const Form& a, const Form& b, const Form& c)
{
    require_bc_harmonic(h, a, "first class");
    require_bc_harmonic(h, b, "second class");
    require_bc_harmonic(h, c, "third class");
    const Bidegree ba = *a.bidegree(), bb = *b.bidegree(), bc = *c.bidegree();
    Form t_ab = parity_sign(ba) * wedge(a, b);
    Form t_bc = parity_sign(bb) * wedge(b, c);
    Form f_ab = solve_potential(h, t_ab, ba + bb);
    Form f_bc = solve_potential(h, t_bc, bb + bc);
    return triple_abc_massey(h, a, b, c, f_ab, f_bc);
}

MasseyVerdict triple_abc_massey(const Hodge& h, const Form& a, const Form& b, const Form& c, const Form& f_ab,
                                const Form& f_bc)
{
    require_bc_harmonic(h, a, "first class");
    require_bc_harmonic(h, b, "second class");
    require_bc_harmonic(h, c, "third class");
    const Bidegree ba = *a.bidegree(), bb = *b.bidegree(), bc = *c.bidegree();
    require_potential(h, f_ab, parity_sign(ba) * wedge(a, b), ba + bb, "f_ab");
    require_potential(h, f_bc, parity_sign(bb) * wedge(b, c), bb + bc, "f_bc");

    MasseyVerdict v{f_ab, f_bc, Form(h.model().algebra()), ba + bb + bc + Bidegree{-1, -1}, {},
                    Form(h.model().algebra()), {}, false};
    v.representative = parity_sign(ba) * wedge(a, f_bc) - parity_sign(bb) * wedge(f_ab, c);
    if (!is_zero(h.ddbar(v.bidegree).apply(h.coordinates(v.representative, v.bidegree))))
        throw InvariantViolation("Massey representative is not del dbar-closed");

    const HarmonicBasis& target = h.harmonic(Theory::aeppli, v.bidegree);
    CohomologyClass cls = h.class_of(v.representative, Theory::aeppli, v.bidegree);
    v.aeppli_coordinates = cls.coordinates;
    v.aeppli_harmonic = cls.harmonic;

    std::vector<Vector> gens;
    for (const auto& xi : h.harmonic(Theory::aeppli, bb + bc + Bidegree{-1, -1}).forms)
        gens.push_back(h.class_of(wedge(a, xi), Theory::aeppli, v.bidegree).coordinates);
    for (const auto& zeta : h.harmonic(Theory::aeppli, ba + bb + Bidegree{-1, -1}).forms)
        gens.push_back(h.class_of(wedge(zeta, c), Theory::aeppli, v.bidegree).coordinates);
    v.indeterminacy = Subspace::span(target.forms.size(), gens);
    v.nonzero = !v.indeterminacy.contains(v.aeppli_coordinates);
    return v;
}

Form random_potential_shift(const Hodge& h, Bidegree b, std::mt19937_64& rng)
{
    Form out(h.model().algebra());
    if (!h.in_range(b) || h.dim(b) == 0)
        return out;
    std::uniform_int_distribution<long> coeff(-3, 3);
    Subspace kernel = kernel_basis(h.ddbar(b));
    Vector v(h.dim(b));
    for (const auto& k : kernel.basis()) {
        const Scalar c(mpq_class(coeff(rng)), mpq_class(coeff(rng)));
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] += c * k[j];
    }
    return h.form(b, v);
}

int perturbation_disagreements(const Hodge& h, const Form& a, const Form& b, const Form& c, int trials,
                               std::mt19937_64& rng)
{
    const MasseyVerdict base = triple_abc_massey(h, a, b, c);
    const Bidegree ab = *a.bidegree() + *b.bidegree() + Bidegree{-1, -1};
    const Bidegree bc = *b.bidegree() + *c.bidegree() + Bidegree{-1, -1};
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
        Form f_ab = base.f_ab + random_potential_shift(h, ab, rng);
        Form f_bc = base.f_bc + random_potential_shift(h, bc, rng);
        MasseyVerdict v = triple_abc_massey(h, a, b, c, f_ab, f_bc);
        Vector diff = v.aeppli_coordinates;
        for (std::size_t j = 0; j < diff.size(); ++j)
            diff[j] -= base.aeppli_coordinates[j];
        if (v.nonzero != base.nonzero || !base.indeterminacy.contains(diff))
            ++bad;
    }
    return bad;
}

AppendixReport verify_appendix_case(const AppendixCase& c)
{
    Model model = load_model(c.model, c.params);
    Hodge h(model);
    const ModelSpec& spec = model.spec();
    Form a = parse_form(spec, c.a), b = parse_form(spec, c.b), g = parse_form(spec, c.c);
    Form expected = parse_form(spec, c.expected);

    AppendixReport r{c, false, false, false, std::nullopt, triple_abc_massey(h, a, b, g), {}};
    r.nonzero = r.verdict.nonzero;
    if (!r.verdict.aeppli_harmonic.is_zero())
        r.ratio = r.verdict.aeppli_harmonic.proportionality(expected);
    r.matches_listed = r.ratio.has_value();
    r.verified = r.nonzero && r.matches_listed;

    const bool ascii = true;
    if (r.verified) {
        r.message = "nonzero; projection = " + r.ratio->to_string() + " * listed representative";
    } else if (!r.nonzero) {
        r.message = "product lies in the indeterminacy";
    } else {
        auto eb = expected.bidegree();
        if (eb && *eb != r.verdict.bidegree)
            r.message = "listed representative " + format_form(expected, ascii) + " has bidegree " + to_string(*eb) +
                        " but the product lies in " + to_string(r.verdict.bidegree);
        else
            r.message = "projection " + format_form(r.verdict.aeppli_harmonic, ascii) +
                        " is not a multiple of the listed representative";
    }
    return r;
}

} // namespace hermform
