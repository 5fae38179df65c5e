#pragma once

#include "hermform/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hermform {

struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const { return p + q; }
    Bidegree conjugate() const { return {q, p}; }

    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
};

std::string to_string(Bidegree b);

struct GeneratorSpec {
    std::string name;
    Bidegree bidegree;
    /// Maximum exponent + 1; always 2 for odd generators. A truncation of 1
    /// makes the generator vanish.
    int truncation = 2;
    /// Position of the conjugate generator (own position for real generators).
    std::size_t conjugate = 0;

    bool odd() const { return bidegree.total() % 2 != 0; }
};

/// Exponent vector over the generators in declaration order.
///
/// Ordering is reversed lexicographic on the exponents, so monomials that use
/// earlier generators come first: with generators (p1, p2, p3) the degree-1
/// monomials sort as p1, p2, p3 and p1p2 precedes p1p3.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint8_t> exponents) : exps_(std::move(exponents)) {}

    std::size_t size() const { return exps_.size(); }
    int exponent(std::size_t k) const { return exps_[k]; }
    const std::vector<std::uint8_t>& exponents() const { return exps_; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        return b.exps_ <=> a.exps_;
    }

private:
    std::vector<std::uint8_t> exps_;
};

/// Signed monomial; sign 0 means the product vanished.
struct SignedMonomial {
    int sign = 0;
    Monomial monomial;
};

/// Free bigraded-commutative algebra on the declared generators modulo the
/// truncation relations g^truncation = 0.
class GradedAlgebra {
public:
    explicit GradedAlgebra(std::vector<GeneratorSpec> generators);

    std::size_t size() const { return gens_.size(); }
    const GeneratorSpec& generator(std::size_t k) const { return gens_[k]; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    Monomial unit() const { return Monomial(std::vector<std::uint8_t>(gens_.size(), 0)); }
    /// The generator as a monomial; nullopt when its truncation is 1.
    std::optional<Monomial> generator_monomial(std::size_t k) const;
    Bidegree bidegree(const Monomial& m) const;
    int total_degree(const Monomial& m) const { return bidegree(m).total(); }
    bool admissible(const Monomial& m) const;

    /// a*b reordered to declaration order, with the Koszul sign of the odd
    /// transpositions. Zero sign when a truncation is exceeded.
    SignedMonomial multiply(const Monomial& a, const Monomial& b) const;
    SignedMonomial conjugate(const Monomial& m) const;

    /// All admissible monomials of bidegree b, in Monomial order.
    std::vector<Monomial> basis(Bidegree b) const;

private:
    std::vector<GeneratorSpec> gens_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Sparse element of the algebra: monomial -> nonzero coefficient.
class Form {
public:
    explicit Form(AlgebraPtr algebra) : alg_(std::move(algebra)) {}

    static Form zero(AlgebraPtr algebra) { return Form(std::move(algebra)); }
    static Form unit(AlgebraPtr algebra);
    static Form monomial(AlgebraPtr algebra, const Monomial& m, const Scalar& c = Scalar(1));
    static Form generator(AlgebraPtr algebra, std::size_t k);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Bidegree when nonzero and homogeneous.
    std::optional<Bidegree> bidegree() const;
    bool is_homogeneous() const;
    Form component(Bidegree b) const;

    void add_term(const Monomial& m, const Scalar& c);

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Scalar& s);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Scalar& s, Form a) { return a *= s; }
    Form operator-() const;

    friend bool operator==(const Form& a, const Form& b);

    /// Some nonzero c with *this == c * other, if one exists.
    std::optional<Scalar> proportionality(const Form& other) const;

    Form conjugate() const;

private:
    void require_same_algebra(const Form& o) const;

    AlgebraPtr alg_;
    std::map<Monomial, Scalar> terms_;
};

Form wedge(const Form& a, const Form& b);

/// Diagonal action g -> lambda_g g on generators by unit scalars (+-1, +-i).
struct DiagonalAction {
    std::vector<Scalar> scalars;

    Scalar weight(const Monomial& m) const;
    /// Throws Error when a scalar is not a unit or conj g is not acted on by
    /// the conjugate scalar.
    void validate(const GradedAlgebra& algebra) const;
};

} // namespace hermform
