#pragma once

#include "hermform/algebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hermform {

enum class Operator { del, dbar };

/// Generators plus the values of del and dbar on them. Unassigned entries are
/// completed from the conjugate generator, or set to zero, by finalize().
struct ModelSpec {
    std::string name;
    int n = 0;
    AlgebraPtr algebra;
    std::vector<std::optional<Form>> del;
    std::vector<std::optional<Form>> dbar;
    std::vector<std::pair<std::string, Scalar>> parameters;

    ModelSpec(std::string name, int n, AlgebraPtr algebra);

    void assign(Operator op, std::size_t generator, Form value);
    const Form& value(Operator op, std::size_t generator) const;
};

using ModelSpecPtr = std::shared_ptr<const ModelSpec>;

/// Completes conjugate assignments and validates the model: bidegrees of the
/// assignments, conjugation compatibility, truncation compatibility, the
/// three square-zero identities on generators, and a unique volume monomial.
/// Throws ModelError naming the offending generator.
ModelSpecPtr finalize(ModelSpec spec);

/// Applies del or dbar to an arbitrary form by the graded Leibniz rule.
Form apply(const ModelSpec& spec, Operator op, const Form& a);

/// A validated model, optionally restricted to the monomials fixed by a
/// diagonal action.
class Model {
public:
    explicit Model(ModelSpecPtr spec, std::optional<DiagonalAction> action = std::nullopt,
                   std::string name = {});

    const std::string& name() const { return name_; }
    const ModelSpec& spec() const { return *spec_; }
    const ModelSpecPtr& spec_ptr() const { return spec_; }
    const AlgebraPtr& algebra() const { return spec_->algebra; }
    int n() const { return spec_->n; }
    const std::optional<DiagonalAction>& action() const { return action_; }

    /// Basis monomials of bidegree b (invariant ones when an action is set).
    std::vector<Monomial> basis(Bidegree b) const;
    bool contains(const Monomial& m) const;
    Monomial volume() const { return volume_; }

    Form del(const Form& a) const { return apply(*spec_, Operator::del, a); }
    Form dbar(const Form& a) const { return apply(*spec_, Operator::dbar, a); }
    Form d(const Form& a) const { return del(a) + dbar(a); }

    Form generator(const std::string& name) const;

private:
    ModelSpecPtr spec_;
    std::optional<DiagonalAction> action_;
    std::string name_;
    Monomial volume_;
};

} // namespace hermform
