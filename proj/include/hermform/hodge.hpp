#pragma once

#include "hermform/linalg.hpp"
#include "hermform/model.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hermform {

enum class Theory { dolbeault, conj_dolbeault, bott_chern, aeppli, de_rham };

std::string to_string(Theory t);
/// Accepts "dbar", "del", "bc", "a", "dr" and the full names.
std::optional<Theory> parse_theory(const std::string& s);

/// Diagonal Hermitian inner product in the monomial basis. Every monomial has
/// weight 1 unless overridden.
class InnerProduct {
public:
    void set_weight(const Monomial& m, mpq_class w);
    mpq_class weight(const Monomial& m) const;

private:
    std::map<Monomial, mpq_class> overrides_;
};

struct HarmonicBasis {
    Theory theory = Theory::dolbeault;
    Bidegree bidegree;  // for de Rham: (k, 0)
    int degree = 0;     // total degree
    std::vector<Form> forms;
    Subspace space;     // coordinates of forms, in basis order
};

/// A failed defining equation: its name and the nonzero image.
struct Violation {
    std::string condition;
    Form image;
};

struct CohomologyClass {
    Vector coordinates;  // in the harmonic basis
    Form harmonic;       // harmonic representative
};

struct CohomologyTable {
    std::string model;
    int n = 0;
    // Indexed [p][q].
    std::vector<std::vector<int>> h_dbar, h_del, h_bc, h_a;
    std::vector<int> betti;

    const std::vector<std::vector<int>>& grid(Theory t) const;
};

/// Operators, Hodge star and harmonic spaces of a model under an inner product.
class Hodge {
public:
    explicit Hodge(Model model, InnerProduct ip = {});
    Hodge(const Hodge&);
    Hodge(Hodge&&) noexcept;
    Hodge& operator=(const Hodge&);
    Hodge& operator=(Hodge&&) noexcept;
    ~Hodge();

    const Model& model() const { return model_; }
    int n() const { return model_.n(); }
    bool in_range(Bidegree b) const { return b.p >= 0 && b.q >= 0 && b.p <= n() && b.q <= n(); }

    const std::vector<Monomial>& basis(Bidegree b) const;
    std::size_t dim(Bidegree b) const { return basis(b).size(); }
    const DiagonalMetric& metric(Bidegree b) const;

    /// Coordinates of the bidegree-b part of a; throws PreconditionError if a
    /// has terms of other bidegrees or outside the model.
    Vector coordinates(const Form& a, Bidegree b) const;
    Form form(Bidegree b, std::span<const Scalar> v) const;

    /// del: b -> b+(1,0) and dbar: b -> b+(0,1) in the monomial bases.
    const Matrix& del(Bidegree b) const;
    const Matrix& dbar(Bidegree b) const;
    /// del dbar: b -> b+(1,1).
    Matrix ddbar(Bidegree b) const;
    /// Adjoint of an operator leaving bidegree src, landing in tgt.
    Matrix adjoint_of(const Matrix& a, Bidegree src, Bidegree tgt) const;

    /// Conjugate-linear star: *v = S conj(v), S = star_matrix(b).
    const Matrix& star_matrix(Bidegree b) const;
    Form star(const Form& a) const;
    Scalar inner(const Form& a, const Form& b) const;

    const HarmonicBasis& harmonic(Theory t, Bidegree b) const;
    const HarmonicBasis& harmonic_de_rham(int k) const;
    /// Same space from the star formulation (dbar *a = 0 and companions).
    Subspace harmonic_via_star(Theory t, Bidegree b) const;
    std::optional<Violation> harmonic_violation(Theory t, const Form& a, Bidegree b) const;
    std::optional<Violation> de_rham_violation(const Form& a, int k) const;

    /// Quotient dimension by fraction-free ranks; uses no inner product.
    std::size_t cohomology_dim(Theory t, Bidegree b) const;
    std::size_t betti_dim(int k) const;

    /// Harmonic part of a closed form; the residual is checked to be exact.
    CohomologyClass class_of(const Form& a, Theory t, Bidegree b) const;
    CohomologyClass class_of_de_rham(const Form& a, int k) const;

    /// Dimensions of all harmonic spaces.
    CohomologyTable table() const;

    // Total-degree plumbing for the de Rham complex: bidegrees (p, k-p) in
    // increasing p, bases concatenated in that order.
    std::vector<Bidegree> total_bidegrees(int k) const;
    std::size_t total_dim(int k) const;
    DiagonalMetric total_metric(int k) const;
    Matrix d_total(int k) const;
    Vector total_coordinates(const Form& a, int k) const;
    Form total_form(int k, std::span<const Scalar> v) const;

private:
    struct Block;
    struct Cache;

    const Block& block(Bidegree b) const;
    /// Image of the exact operator of t landing in b; for de Rham b = (k, 0).
    const Subspace& exact_space(Theory t, Bidegree b) const;
    HarmonicBasis compute_harmonic(Theory t, Bidegree b) const;
    HarmonicBasis compute_de_rham(int k) const;
    std::vector<Matrix> adjoint_conditions(Theory t, Bidegree b, std::vector<std::string>* names) const;

    Model model_;
    InnerProduct ip_;
    std::vector<Block> blocks_;  // (n+3)^2 entries, bidegrees -1..n+1
    std::shared_ptr<Cache> cache_;
};

} // namespace hermform
