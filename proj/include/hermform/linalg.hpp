#pragma once

#include "hermform/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hermform {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
bool is_zero(std::span<const Scalar> v);

/// Dense row-major matrix over Gaussian rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
    /// Stack blocks with equal column counts on top of each other.
    static Matrix vstack(std::span<const Matrix> blocks);
    static Matrix hstack(std::span<const Matrix> blocks);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;

    Vector apply(std::span<const Scalar> v) const;
    Matrix operator*(const Matrix& o) const;
    Matrix conj_transpose() const;
    Matrix conj() const;
    bool is_zero() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form produced by Gauss-Jordan elimination.
struct Echelon {
    std::vector<Vector> rows;          // nonzero rows only, pivot entries equal 1
    std::vector<std::size_t> pivots;   // pivot column of each row
    std::size_t cols = 0;
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Rank by fraction-free (Bareiss) elimination over the Gaussian integers,
/// after clearing denominators row by row. Shares no code with row_reduce.
std::size_t rank_fraction_free(const Matrix& m);

/// Positive diagonal Hermitian form <a, b> = sum_k w_k a_k conj(b_k).
class DiagonalMetric {
public:
    DiagonalMetric() = default;
    explicit DiagonalMetric(std::vector<mpq_class> weights);
    static DiagonalMetric standard(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    const mpq_class& weight(std::size_t k) const { return weights_[k]; }
    Scalar inner(std::span<const Scalar> a, std::span<const Scalar> b) const;

private:
    std::vector<mpq_class> weights_;
};

/// Adjoint of a: src -> tgt with respect to diagonal metrics, i.e.
/// W_src^{-1} a^H W_tgt.
Matrix adjoint(const Matrix& a, const DiagonalMetric& src, const DiagonalMetric& tgt);

/// Linear subspace of a coordinate space. Keeps the basis it was built from
/// (dropping dependent vectors) plus a reduced echelon form for membership.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vector>& basis() const { return basis_; }

    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace& other) const;
    /// Same set of vectors (not just same dimension).
    bool same_as(const Subspace& other) const;

    /// Coordinates of v in basis(); nullopt when v is not in the subspace.
    std::optional<Vector> coordinates(std::span<const Scalar> v) const;

private:
    Vector reduce(std::span<const Scalar> v) const;

    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
    Echelon echelon_;
};

Subspace kernel_basis(const Matrix& m);
Subspace column_space(const Matrix& m);
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

bool contains(const Subspace& s, std::span<const Scalar> v);
Subspace intersection(const Subspace& s, const Subspace& t);
Subspace sum(const Subspace& s, const Subspace& t);

/// Orthogonal projection of v onto s under the metric, from the normal
/// equations G c = (<v, b_i>)_i. Returns coordinates in s.basis().
Vector projection_coordinates(const Subspace& s, std::span<const Scalar> v, const DiagonalMetric& metric);
Vector orthogonal_project(const Subspace& s, std::span<const Scalar> v, const DiagonalMetric& metric);

/// Orthogonal complement of s inside the ambient space.
Subspace orthogonal_complement(const Subspace& s, const DiagonalMetric& metric);

Vector combine(const std::vector<Vector>& vectors, std::span<const Scalar> coefficients, std::size_t ambient);

} // namespace hermform
