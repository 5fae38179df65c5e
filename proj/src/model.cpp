#include "hermform/model.hpp"

#include "hermform/errors.hpp"

namespace hermform {
namespace {

const char* op_name(Operator op)
{
    return op == Operator::del ? "del" : "dbar";
}

Bidegree shift(Operator op)
{
    return op == Operator::del ? Bidegree{1, 0} : Bidegree{0, 1};
}

Form monomial_form(const AlgebraPtr& alg, std::vector<std::uint8_t> exps)
{
    return Form::monomial(alg, Monomial(std::move(exps)));
}

// D applied to a single monomial: sum over positions k of
// (-1)^{|prefix|} prefix * (e_k g_k^{e_k - 1} Dg_k) * suffix.
Form apply_monomial(const ModelSpec& spec, Operator op, const Monomial& m)
{
    const auto& alg = spec.algebra;
    const std::size_t n = alg->size();
    Form out(alg);
    int prefix_degree = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const int e = m.exponent(k);
        if (e == 0)
            continue;
        const Form& dg = spec.value(op, k);
        if (!dg.is_zero()) {
            std::vector<std::uint8_t> pre(n, 0), mid(n, 0), post(n, 0);
            for (std::size_t j = 0; j < k; ++j)
                pre[j] = m.exponents()[j];
            mid[k] = static_cast<std::uint8_t>(e - 1);
            for (std::size_t j = k + 1; j < n; ++j)
                post[j] = m.exponents()[j];
            Form middle = wedge(monomial_form(alg, std::move(mid)), dg);
            middle *= Scalar(e * (prefix_degree % 2 ? -1 : 1));
            out += wedge(wedge(monomial_form(alg, std::move(pre)), middle), monomial_form(alg, std::move(post)));
        }
        prefix_degree += e * alg->generator(k).bidegree.total();
    }
    return out;
}

} // namespace

ModelSpec::ModelSpec(std::string name_, int n_, AlgebraPtr algebra_)
    : name(std::move(name_)), n(n_), algebra(std::move(algebra_)), del(algebra->size()), dbar(algebra->size())
{
}

void ModelSpec::assign(Operator op, std::size_t generator, Form value)
{
    if (value.algebra() != algebra)
        throw PreconditionError("assignment uses a different algebra");
    (op == Operator::del ? del : dbar).at(generator) = std::move(value);
}

const Form& ModelSpec::value(Operator op, std::size_t generator) const
{
    const auto& slot = (op == Operator::del ? del : dbar).at(generator);
    if (!slot)
        throw InvariantViolation("model used before finalize()");
    return *slot;
}

Form apply(const ModelSpec& spec, Operator op, const Form& a)
{
    if (a.algebra() != spec.algebra)
        throw PreconditionError("form belongs to a different model");
    Form out(spec.algebra);
    for (const auto& [m, c] : a.terms()) {
        Form t = apply_monomial(spec, op, m);
        t *= c;
        out += t;
    }
    return out;
}

ModelSpecPtr finalize(ModelSpec spec)
{
    const auto& alg = *spec.algebra;
    const std::size_t n = alg.size();
    if (spec.n <= 0)
        throw ModelError("complex dimension must be positive");

    // Conjugate completion: dbar(conj g) = conj(del g), del(conj g) = conj(dbar g).
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t c = alg.generator(k).conjugate;
        if (!spec.dbar[c] && spec.del[k])
            spec.dbar[c] = spec.del[k]->conjugate();
        if (!spec.del[c] && spec.dbar[k])
            spec.del[c] = spec.dbar[k]->conjugate();
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!spec.del[k])
            spec.del[k] = Form(spec.algebra);
        if (!spec.dbar[k])
            spec.dbar[k] = Form(spec.algebra);
    }

    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = alg.generator(k);
        for (Operator op : {Operator::del, Operator::dbar}) {
            const Form& v = spec.value(op, k);
            auto b = v.bidegree();
            if (!v.is_zero() && (!b || *b != g.bidegree + shift(op)))
                throw ModelError(std::string(op_name(op)) + " " + g.name + " must be homogeneous of bidegree " +
                                 to_string(g.bidegree + shift(op)));
        }
        const std::size_t c = g.conjugate;
        if (!(spec.value(Operator::dbar, c) == spec.value(Operator::del, k).conjugate()) ||
            !(spec.value(Operator::del, c) == spec.value(Operator::dbar, k).conjugate()))
            throw ModelError("differentials of " + g.name + " and " + alg.generator(c).name +
                             " are not conjugate to each other");
    }

    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = alg.generator(k);
        if (g.odd())
            continue;
        std::vector<std::uint8_t> e(n, 0);
        e[k] = static_cast<std::uint8_t>(g.truncation - 1);
        Form top = Form::monomial(spec.algebra, Monomial(e));
        for (Operator op : {Operator::del, Operator::dbar})
            if (!wedge(top, spec.value(op, k)).is_zero())
                throw ModelError(std::string(op_name(op)) + " " + g.name + " is incompatible with " + g.name + "^" +
                                 std::to_string(g.truncation) + " = 0");
    }

    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = alg.generator(k);
        const Form& dg = spec.value(Operator::del, k);
        const Form& bg = spec.value(Operator::dbar, k);
        auto fail = [&](const std::string& what, Bidegree b) {
            throw ModelError(what + " is not zero on generator " + g.name + " (image in bidegree " + to_string(b) + ")");
        };
        if (!apply(spec, Operator::del, dg).is_zero())
            fail("del^2", g.bidegree + Bidegree{2, 0});
        if (!apply(spec, Operator::dbar, bg).is_zero())
            fail("dbar^2", g.bidegree + Bidegree{0, 2});
        if (!(apply(spec, Operator::del, bg) + apply(spec, Operator::dbar, dg)).is_zero())
            fail("del dbar + dbar del", g.bidegree + Bidegree{1, 1});
    }

    if (alg.basis({spec.n, spec.n}).size() != 1)
        throw ModelError("bidegree (" + std::to_string(spec.n) + "," + std::to_string(spec.n) +
                         ") must contain exactly one monomial");
    return std::make_shared<const ModelSpec>(std::move(spec));
}

Model::Model(ModelSpecPtr spec, std::optional<DiagonalAction> action, std::string name)
    : spec_(std::move(spec)), action_(std::move(action)), name_(name.empty() ? spec_->name : std::move(name))
{
    const auto& alg = *spec_->algebra;
    if (action_) {
        action_->validate(alg);
        for (std::size_t k = 0; k < alg.size(); ++k)
            for (Operator op : {Operator::del, Operator::dbar})
                for (const auto& [m, c] : spec_->value(op, k).terms())
                    if (!(action_->weight(m) == action_->scalars[k]))
                        throw ModelError(std::string(op_name(op)) + " " + alg.generator(k).name +
                                         " is not equivariant under the action");
    }
    auto top = basis({spec_->n, spec_->n});
    if (top.size() != 1)
        throw ModelError("the volume monomial is not invariant under the action");
    volume_ = top.front();
}

bool Model::contains(const Monomial& m) const
{
    if (!spec_->algebra->admissible(m))
        return false;
    return !action_ || action_->weight(m) == Scalar(1);
}

std::vector<Monomial> Model::basis(Bidegree b) const
{
    auto all = spec_->algebra->basis(b);
    if (!action_)
        return all;
    std::vector<Monomial> out;
    for (auto& m : all)
        if (action_->weight(m) == Scalar(1))
            out.push_back(std::move(m));
    return out;
}

Form Model::generator(const std::string& name) const
{
    auto k = spec_->algebra->index_of(name);
    if (!k)
        throw Error("unknown generator " + name);
    return Form::generator(spec_->algebra, *k);
}

} // namespace hermform
