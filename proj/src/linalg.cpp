#include "hermform/linalg.hpp"

#include "hermform/errors.hpp"

#include <algorithm>
#include <utility>

namespace hermform {

Vector zero_vector(std::size_t n)
{
    return Vector(n);
}

bool is_zero(std::span<const Scalar> v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        m(k, k) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionMismatch("row length does not match column count");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows)
{
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw DimensionMismatch("column length does not match row count");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

Matrix Matrix::vstack(std::span<const Matrix> blocks)
{
    if (blocks.empty())
        return {};
    std::size_t cols = blocks.front().cols();
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw DimensionMismatch("vstack: column counts differ");
        rows += b.rows();
    }
    Matrix m(rows, cols);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m(offset + r, c) = b(r, c);
        offset += b.rows();
    }
    return m;
}

Matrix Matrix::hstack(std::span<const Matrix> blocks)
{
    if (blocks.empty())
        return {};
    std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows)
            throw DimensionMismatch("hstack: row counts differ");
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                m(r, offset + c) = b(r, c);
        offset += b.cols();
    }
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::apply(std::span<const Scalar> v) const
{
    if (v.size() != cols_)
        throw DimensionMismatch("matrix-vector size mismatch");
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero())
            continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& a = (*this)(r, c);
            if (!a.is_zero())
                out[r] += a * v[c];
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_)
        throw DimensionMismatch("matrix product size mismatch");
    Matrix m(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(r, k);
            if (a.is_zero())
                continue;
            for (std::size_t c = 0; c < o.cols_; ++c) {
                const Scalar& b = o(k, c);
                if (!b.is_zero())
                    m(r, c) += a * b;
            }
        }
    return m;
}

Matrix Matrix::conj_transpose() const
{
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = (*this)(r, c).conj();
    return m;
}

Matrix Matrix::conj() const
{
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
        m.data_[k] = data_[k].conj();
    return m;
}

bool Matrix::is_zero() const
{
    return hermform::is_zero(data_);
}

Echelon row_reduce(const Matrix& m)
{
    std::vector<Vector> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows[r].assign(m.row(r).begin(), m.row(r).end());

    Echelon e;
    e.cols = m.cols();
    std::size_t next = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        std::size_t pivot = next;
        while (pivot < rows.size() && rows[pivot][c].is_zero())
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[next], rows[pivot]);
        Vector& prow = rows[next];
        Scalar inv = prow[c].inverse();
        support.clear();
        for (std::size_t k = c; k < prow.size(); ++k) {
            if (prow[k].is_zero())
                continue;
            prow[k] *= inv;
            support.push_back(k);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next || rows[r][c].is_zero())
                continue;
            Scalar f = rows[r][c];
            for (std::size_t k : support)
                rows[r][k] -= f * prow[k];
        }
        e.pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    e.rows = std::move(rows);
    return e;
}

std::size_t rank(const Matrix& m)
{
    return row_reduce(m).pivots.size();
}

DiagonalMetric::DiagonalMetric(std::vector<mpq_class> weights) : weights_(std::move(weights))
{
    for (const auto& w : weights_)
        if (sgn(w) <= 0)
            throw PreconditionError("metric weights must be strictly positive");
}

DiagonalMetric DiagonalMetric::standard(std::size_t n)
{
    return DiagonalMetric(std::vector<mpq_class>(n, mpq_class(1)));
}

Scalar DiagonalMetric::inner(std::span<const Scalar> a, std::span<const Scalar> b) const
{
    if (a.size() != weights_.size() || b.size() != weights_.size())
        throw DimensionMismatch("inner product size mismatch");
    Scalar s;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero() || b[k].is_zero())
            continue;
        s += a[k] * b[k].conj() * Scalar(weights_[k]);
    }
    return s;
}

Matrix adjoint(const Matrix& a, const DiagonalMetric& src, const DiagonalMetric& tgt)
{
    if (src.size() != a.cols() || tgt.size() != a.rows())
        throw DimensionMismatch("adjoint: metric sizes do not match the operator");
    Matrix h = a.conj_transpose();
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c) {
            if (h(r, c).is_zero())
                continue;
            h(r, c) *= Scalar(tgt.weight(c) / src.weight(r));
        }
    return h;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors)
{
    Subspace s(ambient);
    for (const auto& v : vectors) {
        if (v.size() != ambient)
            throw DimensionMismatch("vector does not live in the ambient space");
        Vector r = s.reduce(v);
        if (is_zero(r))
            continue;
        s.basis_.push_back(v);
        // Insert r as a new echelon row and restore reduced form.
        std::size_t c = 0;
        while (r[c].is_zero())
            ++c;
        Scalar inv = r[c].inverse();
        for (auto& x : r)
            if (!x.is_zero())
                x *= inv;
        for (auto& row : s.echelon_.rows) {
            if (row[c].is_zero())
                continue;
            Scalar f = row[c];
            for (std::size_t k = 0; k < ambient; ++k)
                if (!r[k].is_zero())
                    row[k] -= f * r[k];
        }
        auto pos = std::lower_bound(s.echelon_.pivots.begin(), s.echelon_.pivots.end(), c);
        auto idx = pos - s.echelon_.pivots.begin();
        s.echelon_.pivots.insert(pos, c);
        s.echelon_.rows.insert(s.echelon_.rows.begin() + idx, std::move(r));
    }
    s.echelon_.cols = ambient;
    return s;
}

Subspace Subspace::whole(std::size_t ambient)
{
    std::vector<Vector> e(ambient, Vector(ambient));
    for (std::size_t k = 0; k < ambient; ++k)
        e[k][k] = 1;
    return span(ambient, e);
}

Vector Subspace::reduce(std::span<const Scalar> v) const
{
    Vector r(v.begin(), v.end());
    for (std::size_t k = 0; k < echelon_.rows.size(); ++k) {
        std::size_t c = echelon_.pivots[k];
        if (r[c].is_zero())
            continue;
        Scalar f = r[c];
        const Vector& row = echelon_.rows[k];
        for (std::size_t j = c; j < r.size(); ++j)
            if (!row[j].is_zero())
                r[j] -= f * row[j];
    }
    return r;
}

bool Subspace::contains(std::span<const Scalar> v) const
{
    if (v.size() != ambient_)
        throw DimensionMismatch("membership: ambient dimensions differ");
    return is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_ != ambient_)
        throw DimensionMismatch("containment: ambient dimensions differ");
    return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vector& v) { return contains(v); });
}

bool Subspace::same_as(const Subspace& other) const
{
    return dim() == other.dim() && contains(other);
}

std::optional<Vector> Subspace::coordinates(std::span<const Scalar> v) const
{
    if (!contains(v))
        return std::nullopt;
    Matrix b = Matrix::from_columns(basis_, ambient_);
    return solve(b, v);
}

Subspace kernel_basis(const Matrix& m)
{
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < e.rows.size(); ++k)
            if (!e.rows[k][f].is_zero())
                v[e.pivots[k]] = -e.rows[k][f];
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

Subspace column_space(const Matrix& m)
{
    std::vector<Vector> cols;
    cols.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return Subspace::span(m.rows(), cols);
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b)
{
    if (b.size() != m.rows())
        throw DimensionMismatch("solve: right-hand side has the wrong length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    Echelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    Vector x(m.cols());
    for (std::size_t k = 0; k < e.rows.size(); ++k)
        x[e.pivots[k]] = e.rows[k][m.cols()];
    return x;
}

bool contains(const Subspace& s, std::span<const Scalar> v)
{
    return s.contains(v);
}

Subspace intersection(const Subspace& s, const Subspace& t)
{
    if (s.ambient() != t.ambient())
        throw DimensionMismatch("intersection: ambient dimensions differ");
    const std::size_t n = s.ambient();
    std::vector<Vector> cols = s.basis();
    for (const auto& v : t.basis()) {
        Vector neg(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            neg[k] = -v[k];
        cols.push_back(std::move(neg));
    }
    Subspace relations = kernel_basis(Matrix::from_columns(cols, n));
    std::vector<Vector> out;
    for (const auto& rel : relations.basis()) {
        std::span<const Scalar> a(rel.data(), s.dim());
        out.push_back(combine(s.basis(), a, n));
    }
    return Subspace::span(n, out);
}

Subspace sum(const Subspace& s, const Subspace& t)
{
    if (s.ambient() != t.ambient())
        throw DimensionMismatch("sum: ambient dimensions differ");
    std::vector<Vector> all = s.basis();
    all.insert(all.end(), t.basis().begin(), t.basis().end());
    return Subspace::span(s.ambient(), all);
}

Vector combine(const std::vector<Vector>& vectors, std::span<const Scalar> coefficients, std::size_t ambient)
{
    Vector out(ambient);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (coefficients[j].is_zero())
            continue;
        for (std::size_t k = 0; k < ambient; ++k)
            if (!vectors[j][k].is_zero())
                out[k] += coefficients[j] * vectors[j][k];
    }
    return out;
}

Vector projection_coordinates(const Subspace& s, std::span<const Scalar> v, const DiagonalMetric& metric)
{
    if (v.size() != s.ambient() || metric.size() != s.ambient())
        throw DimensionMismatch("projection: ambient dimensions differ");
    const std::size_t d = s.dim();
    Matrix gram(d, d);
    Vector rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            gram(i, j) = metric.inner(s.basis()[j], s.basis()[i]);
        rhs[i] = metric.inner(v, s.basis()[i]);
    }
    auto c = solve(gram, rhs);
    if (!c)
        throw InvariantViolation("Gram matrix of an independent basis is singular");
    return *c;
}

Vector orthogonal_project(const Subspace& s, std::span<const Scalar> v, const DiagonalMetric& metric)
{
    return combine(s.basis(), projection_coordinates(s, v, metric), s.ambient());
}

Subspace orthogonal_complement(const Subspace& s, const DiagonalMetric& metric)
{
    const std::size_t n = s.ambient();
    Matrix m(s.dim(), n);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = s.basis()[i][k].conj() * Scalar(metric.weight(k));
    return kernel_basis(m);
}

} // namespace hermform
