#include "hermform/algebra.hpp"

#include "hermform/errors.hpp"

#include <algorithm>

namespace hermform {

std::string to_string(Bidegree b)
{
    return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

GradedAlgebra::GradedAlgebra(std::vector<GeneratorSpec> generators) : gens_(std::move(generators))
{
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        const auto& g = gens_[k];
        if (g.bidegree.p < 0 || g.bidegree.q < 0 || g.bidegree.total() == 0)
            throw ModelError("generator " + g.name + " must have positive total degree");
        if (g.truncation < 1 || g.truncation > 255)
            throw ModelError("generator " + g.name + " has an invalid truncation");
        if (g.odd() && g.truncation != 2)
            throw ModelError("odd generator " + g.name + " must have truncation 2");
        if (g.conjugate >= gens_.size())
            throw ModelError("generator " + g.name + " has no conjugate");
        const auto& c = gens_[g.conjugate];
        if (c.conjugate != k)
            throw ModelError("conjugation is not an involution at " + g.name);
        if (c.bidegree != g.bidegree.conjugate())
            throw ModelError("conjugate of " + g.name + " must have bidegree " + to_string(g.bidegree.conjugate()));
        if (c.truncation != g.truncation)
            throw ModelError("conjugate generators " + g.name + ", " + c.name + " have different truncations");
        if (g.conjugate == k && g.bidegree.p != g.bidegree.q)
            throw ModelError("real generator " + g.name + " must have bidegree (p,p)");
        for (std::size_t j = 0; j < k; ++j)
            if (gens_[j].name == g.name)
                throw ModelError("duplicate generator " + g.name);
    }
}

std::optional<std::size_t> GradedAlgebra::index_of(const std::string& name) const
{
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name == name)
            return k;
    return std::nullopt;
}

std::optional<Monomial> GradedAlgebra::generator_monomial(std::size_t k) const
{
    if (gens_[k].truncation < 2)
        return std::nullopt;
    std::vector<std::uint8_t> e(gens_.size(), 0);
    e[k] = 1;
    return Monomial(std::move(e));
}

Bidegree GradedAlgebra::bidegree(const Monomial& m) const
{
    Bidegree b;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        b.p += m.exponent(k) * gens_[k].bidegree.p;
        b.q += m.exponent(k) * gens_[k].bidegree.q;
    }
    return b;
}

bool GradedAlgebra::admissible(const Monomial& m) const
{
    if (m.size() != gens_.size())
        return false;
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (m.exponent(k) >= gens_[k].truncation)
            return false;
    return true;
}

SignedMonomial GradedAlgebra::multiply(const Monomial& a, const Monomial& b) const
{
    const std::size_t n = gens_.size();
    std::vector<std::uint8_t> e(n);
    for (std::size_t k = 0; k < n; ++k) {
        int s = a.exponent(k) + b.exponent(k);
        if (s >= gens_[k].truncation)
            return {};
        e[k] = static_cast<std::uint8_t>(s);
    }
    // Each odd factor of b moves left past the odd factors of a with larger index.
    int odd_a_after = 0;
    int swaps = 0;
    for (std::size_t k = n; k-- > 0;) {
        if (!gens_[k].odd())
            continue;
        if (b.exponent(k))
            swaps += odd_a_after;
        if (a.exponent(k))
            ++odd_a_after;
    }
    return {swaps % 2 ? -1 : 1, Monomial(std::move(e))};
}

SignedMonomial GradedAlgebra::conjugate(const Monomial& m) const
{
    const std::size_t n = gens_.size();
    std::vector<std::uint8_t> e(n, 0);
    std::vector<std::size_t> odd_images;
    for (std::size_t k = 0; k < n; ++k) {
        if (!m.exponent(k))
            continue;
        e[gens_[k].conjugate] = static_cast<std::uint8_t>(m.exponent(k));
        if (gens_[k].odd())
            odd_images.push_back(gens_[k].conjugate);
    }
    int inversions = 0;
    for (std::size_t i = 0; i < odd_images.size(); ++i)
        for (std::size_t j = i + 1; j < odd_images.size(); ++j)
            if (odd_images[i] > odd_images[j])
                ++inversions;
    return {inversions % 2 ? -1 : 1, Monomial(std::move(e))};
}

std::vector<Monomial> GradedAlgebra::basis(Bidegree b) const
{
    std::vector<Monomial> out;
    if (b.p < 0 || b.q < 0)
        return out;
    const std::size_t n = gens_.size();
    std::vector<std::uint8_t> e(n, 0);
    auto rec = [&](auto&& self, std::size_t k, int p, int q) -> void {
        if (k == n) {
            if (p == 0 && q == 0)
                out.emplace_back(e);
            return;
        }
        const auto& g = gens_[k];
        for (int x = 0; x < g.truncation; ++x) {
            int pp = p - x * g.bidegree.p;
            int qq = q - x * g.bidegree.q;
            if (pp < 0 || qq < 0)
                break;
            e[k] = static_cast<std::uint8_t>(x);
            self(self, k + 1, pp, qq);
        }
        e[k] = 0;
    };
    rec(rec, 0, b.p, b.q);
    std::sort(out.begin(), out.end());
    return out;
}

Form Form::unit(AlgebraPtr algebra)
{
    Form f(algebra);
    f.terms_.emplace(algebra->unit(), Scalar(1));
    return f;
}

Form Form::monomial(AlgebraPtr algebra, const Monomial& m, const Scalar& c)
{
    Form f(std::move(algebra));
    if (!f.alg_->admissible(m))
        throw PreconditionError("monomial violates a truncation");
    f.add_term(m, c);
    return f;
}

Form Form::generator(AlgebraPtr algebra, std::size_t k)
{
    auto m = algebra->generator_monomial(k);
    Form f(algebra);
    if (m)
        f.add_term(*m, Scalar(1));
    return f;
}

std::optional<Bidegree> Form::bidegree() const
{
    if (terms_.empty())
        return std::nullopt;
    Bidegree b = alg_->bidegree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (alg_->bidegree(m) != b)
            return std::nullopt;
    return b;
}

bool Form::is_homogeneous() const
{
    return terms_.empty() || bidegree().has_value();
}

Form Form::component(Bidegree b) const
{
    Form f(alg_);
    for (const auto& [m, c] : terms_)
        if (alg_->bidegree(m) == b)
            f.terms_.emplace(m, c);
    return f;
}

void Form::add_term(const Monomial& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Form::require_same_algebra(const Form& o) const
{
    if (alg_ != o.alg_)
        throw PreconditionError("forms belong to different models");
}

Form& Form::operator+=(const Form& o)
{
    require_same_algebra(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o)
{
    require_same_algebra(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Form& Form::operator*=(const Scalar& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

Form Form::operator-() const
{
    Form f = *this;
    for (auto& [m, c] : f.terms_)
        c = -c;
    return f;
}

bool operator==(const Form& a, const Form& b)
{
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
}

std::optional<Scalar> Form::proportionality(const Form& other) const
{
    require_same_algebra(other);
    if (terms_.empty() || other.terms_.empty() || terms_.size() != other.terms_.size())
        return std::nullopt;
    const auto& [m0, c0] = *terms_.begin();
    auto it = other.terms_.find(m0);
    if (it == other.terms_.end())
        return std::nullopt;
    Scalar ratio = c0 / it->second;
    for (const auto& [m, c] : terms_) {
        auto jt = other.terms_.find(m);
        if (jt == other.terms_.end() || !(c == ratio * jt->second))
            return std::nullopt;
    }
    return ratio;
}

Form Form::conjugate() const
{
    Form f(alg_);
    for (const auto& [m, c] : terms_) {
        SignedMonomial s = alg_->conjugate(m);
        f.add_term(s.monomial, c.conj() * Scalar(s.sign));
    }
    return f;
}

Form wedge(const Form& a, const Form& b)
{
    if (a.algebra() != b.algebra())
        throw PreconditionError("wedge: forms belong to different models");
    const auto& alg = *a.algebra();
    Form out(a.algebra());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            SignedMonomial s = alg.multiply(ma, mb);
            if (s.sign == 0)
                continue;
            out.add_term(s.monomial, ca * cb * Scalar(s.sign));
        }
    return out;
}

Scalar DiagonalAction::weight(const Monomial& m) const
{
    Scalar w(1);
    for (std::size_t k = 0; k < m.size(); ++k)
        for (int e = 0; e < m.exponent(k); ++e)
            w *= scalars[k];
    return w;
}

void DiagonalAction::validate(const GradedAlgebra& algebra) const
{
    if (scalars.size() != algebra.size())
        throw Error("action must assign a scalar to every generator");
    for (std::size_t k = 0; k < scalars.size(); ++k) {
        const Scalar& s = scalars[k];
        if (s.norm2() != 1 || !(s.re() == 0 || s.im() == 0))
            throw Error("action scalar on " + algebra.generator(k).name + " is not one of 1, -1, i, -i");
        if (!(scalars[algebra.generator(k).conjugate] == s.conj()))
            throw Error("action is not compatible with conjugation at " + algebra.generator(k).name);
    }
}

} // namespace hermform
