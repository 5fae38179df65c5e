#include "hermform/hodge.hpp"

#include "hermform/errors.hpp"

#include <mutex>

namespace hermform {

std::string to_string(Theory t)
{
    switch (t) {
    case Theory::dolbeault: return "dolbeault";
    case Theory::conj_dolbeault: return "conj_dolbeault";
    case Theory::bott_chern: return "bott_chern";
    case Theory::aeppli: return "aeppli";
    case Theory::de_rham: return "de_rham";
    }
    return "?";
}

std::optional<Theory> parse_theory(const std::string& s)
{
    if (s == "dbar" || s == "dolbeault")
        return Theory::dolbeault;
    if (s == "del" || s == "conj_dolbeault" || s == "conj-dolbeault")
        return Theory::conj_dolbeault;
    if (s == "bc" || s == "bott_chern" || s == "bott-chern")
        return Theory::bott_chern;
    if (s == "a" || s == "aeppli")
        return Theory::aeppli;
    if (s == "dr" || s == "de_rham" || s == "de-rham")
        return Theory::de_rham;
    return std::nullopt;
}

void InnerProduct::set_weight(const Monomial& m, mpq_class w)
{
    w.canonicalize();
    if (sgn(w) <= 0)
        throw PreconditionError("inner product weights must be positive");
    overrides_[m] = std::move(w);
}

mpq_class InnerProduct::weight(const Monomial& m) const
{
    auto it = overrides_.find(m);
    return it == overrides_.end() ? mpq_class(1) : it->second;
}

const std::vector<std::vector<int>>& CohomologyTable::grid(Theory t) const
{
    switch (t) {
    case Theory::dolbeault: return h_dbar;
    case Theory::conj_dolbeault: return h_del;
    case Theory::bott_chern: return h_bc;
    case Theory::aeppli: return h_a;
    case Theory::de_rham: break;
    }
    throw PreconditionError("de Rham numbers are not bigraded");
}

struct Hodge::Block {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
    DiagonalMetric metric;
    Matrix del;
    Matrix dbar;
    Matrix star;
};

struct Hodge::Cache {
    struct Conditions {
        std::vector<Matrix> matrices;
        std::vector<std::string> names;
    };
    struct DeRhamOperators {
        Matrix d;
        Matrix d_adjoint;  // adjoint of d from degree k-1
    };

    std::mutex mutex;
    std::map<std::pair<int, Bidegree>, HarmonicBasis> harmonic;
    std::map<int, HarmonicBasis> de_rham;
    std::map<std::pair<int, Bidegree>, Conditions> conditions;
    std::map<int, DeRhamOperators> de_rham_ops;
    std::map<std::pair<int, Bidegree>, Subspace> exact;
};

namespace {

Matrix operator_matrix(const Model& model, Operator op, const std::vector<Monomial>& src,
                       const std::vector<Monomial>& tgt, const std::map<Monomial, std::size_t>& tgt_index)
{
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Form image = apply(model.spec(), op, Form::monomial(model.algebra(), src[j]));
        for (const auto& [mono, c] : image.terms()) {
            auto it = tgt_index.find(mono);
            if (it == tgt_index.end())
                throw InvariantViolation("differential leaves the model basis");
            m(it->second, j) = c;
        }
    }
    return m;
}

Matrix conj_times(const Matrix& op, const Matrix& star)
{
    return (op * star).conj();
}

} // namespace

Hodge::Hodge(const Hodge&) = default;
Hodge::Hodge(Hodge&&) noexcept = default;
Hodge& Hodge::operator=(const Hodge&) = default;
Hodge& Hodge::operator=(Hodge&&) noexcept = default;
Hodge::~Hodge() = default;

Hodge::Hodge(Model model, InnerProduct ip) : model_(std::move(model)), ip_(std::move(ip)), cache_(std::make_shared<Cache>())
{
    const int n = model_.n();
    const int side = n + 3;
    blocks_.resize(static_cast<std::size_t>(side * side));
    for (int p = -1; p <= n + 1; ++p)
        for (int q = -1; q <= n + 1; ++q) {
            Block& b = blocks_[static_cast<std::size_t>((p + 1) * side + (q + 1))];
            if (in_range({p, q}))
                b.basis = model_.basis({p, q});
            std::vector<mpq_class> w;
            for (std::size_t k = 0; k < b.basis.size(); ++k) {
                b.index.emplace(b.basis[k], k);
                w.push_back(ip_.weight(b.basis[k]));
            }
            b.metric = DiagonalMetric(std::move(w));
        }
    for (int p = -1; p <= n + 1; ++p)
        for (int q = -1; q <= n + 1; ++q) {
            Block& b = blocks_[static_cast<std::size_t>((p + 1) * side + (q + 1))];
            auto target = [&](Bidegree t) -> const Block* {
                if (t.p > n + 1 || t.q > n + 1)
                    return nullptr;
                return &blocks_[static_cast<std::size_t>((t.p + 1) * side + (t.q + 1))];
            };
            const Block* td = target({p + 1, q});
            const Block* tb = target({p, q + 1});
            b.del = td ? operator_matrix(model_, Operator::del, b.basis, td->basis, td->index) : Matrix(0, b.basis.size());
            b.dbar = tb ? operator_matrix(model_, Operator::dbar, b.basis, tb->basis, tb->index) : Matrix(0, b.basis.size());
        }

    const Monomial vol = model_.volume();
    const auto& alg = *model_.algebra();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            Block& b = blocks_[static_cast<std::size_t>((p + 1) * side + (q + 1))];
            const Block& c = blocks_[static_cast<std::size_t>((n - p + 1) * side + (n - q + 1))];
            b.star = Matrix(c.basis.size(), b.basis.size());
            for (std::size_t j = 0; j < b.basis.size(); ++j) {
                const Monomial& m = b.basis[j];
                std::vector<std::uint8_t> e(vol.size());
                for (std::size_t k = 0; k < vol.size(); ++k) {
                    if (m.exponent(k) > vol.exponent(k))
                        throw ModelError("monomial without a complement in the volume form");
                    e[k] = static_cast<std::uint8_t>(vol.exponent(k) - m.exponent(k));
                }
                Monomial mc(std::move(e));
                auto it = c.index.find(mc);
                SignedMonomial s = alg.multiply(m, mc);
                if (it == c.index.end() || s.sign == 0 || !(s.monomial == vol))
                    throw ModelError("monomial without a complement in the volume form");
                b.star(it->second, j) = Scalar(b.metric.weight(j)) * Scalar(s.sign);
            }
        }
}

const Hodge::Block& Hodge::block(Bidegree b) const
{
    const int side = n() + 3;
    if (b.p < -1 || b.q < -1 || b.p > n() + 1 || b.q > n() + 1) {
        static const Block empty;
        return empty;
    }
    return blocks_[static_cast<std::size_t>((b.p + 1) * side + (b.q + 1))];
}

const std::vector<Monomial>& Hodge::basis(Bidegree b) const
{
    return block(b).basis;
}

const DiagonalMetric& Hodge::metric(Bidegree b) const
{
    return block(b).metric;
}

Vector Hodge::coordinates(const Form& a, Bidegree b) const
{
    if (a.algebra() != model_.algebra())
        throw PreconditionError("form belongs to a different model");
    const Block& blk = block(b);
    Vector v(blk.basis.size());
    for (const auto& [m, c] : a.terms()) {
        auto it = blk.index.find(m);
        if (it == blk.index.end())
            throw PreconditionError("form has terms outside bidegree " + to_string(b) + " of the model");
        v[it->second] = c;
    }
    return v;
}

Form Hodge::form(Bidegree b, std::span<const Scalar> v) const
{
    const auto& bs = basis(b);
    if (v.size() != bs.size())
        throw DimensionMismatch("coordinate vector does not match bidegree " + to_string(b));
    Form f(model_.algebra());
    for (std::size_t k = 0; k < bs.size(); ++k)
        f.add_term(bs[k], v[k]);
    return f;
}

const Matrix& Hodge::del(Bidegree b) const
{
    return block(b).del;
}

const Matrix& Hodge::dbar(Bidegree b) const
{
    return block(b).dbar;
}

Matrix Hodge::ddbar(Bidegree b) const
{
    if (!in_range(b) || !in_range(b + Bidegree{1, 1}))
        return Matrix(dim(b + Bidegree{1, 1}), dim(b));
    return del(b + Bidegree{0, 1}) * dbar(b);
}

Matrix Hodge::adjoint_of(const Matrix& a, Bidegree src, Bidegree tgt) const
{
    return adjoint(a, metric(src), metric(tgt));
}

const Matrix& Hodge::star_matrix(Bidegree b) const
{
    if (!in_range(b))
        throw PreconditionError("star: bidegree out of range");
    return block(b).star;
}

Form Hodge::star(const Form& a) const
{
    Form out(model_.algebra());
    for (int p = 0; p <= n(); ++p)
        for (int q = 0; q <= n(); ++q) {
            Form part = a.component({p, q});
            if (part.is_zero())
                continue;
            Vector v = coordinates(part, {p, q});
            for (auto& x : v)
                x = x.conj();
            out += form({n() - p, n() - q}, star_matrix({p, q}).apply(v));
        }
    return out;
}

Scalar Hodge::inner(const Form& a, const Form& b) const
{
    Scalar s;
    for (int p = 0; p <= n(); ++p)
        for (int q = 0; q <= n(); ++q) {
            Vector x = coordinates(a.component({p, q}), {p, q});
            Vector y = coordinates(b.component({p, q}), {p, q});
            s += metric({p, q}).inner(x, y);
        }
    return s;
}

std::vector<Matrix> Hodge::adjoint_conditions(Theory t, Bidegree b, std::vector<std::string>* names) const
{
    std::vector<Matrix> out;
    auto add = [&](Matrix m, const char* name) {
        out.push_back(std::move(m));
        if (names)
            names->emplace_back(name);
    };
    const Bidegree down_p = b + Bidegree{-1, 0};
    const Bidegree down_q = b + Bidegree{0, -1};
    const Bidegree down_pq = b + Bidegree{-1, -1};
    switch (t) {
    case Theory::dolbeault:
        add(dbar(b), "dbar");
        add(adjoint_of(dbar(down_q), down_q, b), "dbar*");
        break;
    case Theory::conj_dolbeault:
        add(del(b), "del");
        add(adjoint_of(del(down_p), down_p, b), "del*");
        break;
    case Theory::bott_chern:
        add(del(b), "del");
        add(dbar(b), "dbar");
        add(adjoint_of(ddbar(down_pq), down_pq, b), "(del dbar)*");
        break;
    case Theory::aeppli:
        add(ddbar(b), "del dbar");
        add(adjoint_of(del(down_p), down_p, b), "del*");
        add(adjoint_of(dbar(down_q), down_q, b), "dbar*");
        break;
    case Theory::de_rham:
        throw PreconditionError("de Rham harmonic forms are indexed by total degree");
    }
    return out;
}

HarmonicBasis Hodge::compute_harmonic(Theory t, Bidegree b) const
{
    HarmonicBasis h;
    h.theory = t;
    h.bidegree = b;
    h.degree = b.total();
    if (!in_range(b)) {
        h.space = Subspace(0);
        return h;
    }
    auto conds = adjoint_conditions(t, b, nullptr);
    h.space = kernel_basis(Matrix::vstack(conds));
    for (const auto& v : h.space.basis())
        h.forms.push_back(form(b, v));
    return h;
}

const HarmonicBasis& Hodge::harmonic(Theory t, Bidegree b) const
{
    auto key = std::make_pair(static_cast<int>(t), b);
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->harmonic.find(key);
        if (it != cache_->harmonic.end())
            return it->second;
    }
    HarmonicBasis h = compute_harmonic(t, b);
    std::lock_guard lock(cache_->mutex);
    return cache_->harmonic.emplace(key, std::move(h)).first->second;
}

Subspace Hodge::harmonic_via_star(Theory t, Bidegree b) const
{
    if (!in_range(b))
        return Subspace(0);
    const Bidegree c{n() - b.p, n() - b.q};
    const Matrix& s = star_matrix(b);
    std::vector<Matrix> conds;
    switch (t) {
    case Theory::dolbeault:
        conds = {dbar(b), conj_times(dbar(c), s)};
        break;
    case Theory::conj_dolbeault:
        conds = {del(b), conj_times(del(c), s)};
        break;
    case Theory::bott_chern:
        conds = {del(b), dbar(b), conj_times(ddbar(c), s)};
        break;
    case Theory::aeppli:
        conds = {ddbar(b), conj_times(del(c), s), conj_times(dbar(c), s)};
        break;
    case Theory::de_rham:
        throw PreconditionError("de Rham harmonic forms are indexed by total degree");
    }
    return kernel_basis(Matrix::vstack(conds));
}

std::optional<Violation> Hodge::harmonic_violation(Theory t, const Form& a, Bidegree b) const
{
    if (!in_range(b))
        return std::nullopt;
    if (t == Theory::de_rham)
        throw PreconditionError("de Rham harmonic forms are indexed by total degree");
    Vector v = coordinates(a, b);
    const auto key = std::make_pair(static_cast<int>(t), b);
    const Cache::Conditions* conds = nullptr;
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->conditions.find(key);
        if (it != cache_->conditions.end())
            conds = &it->second;
    }
    if (!conds) {
        Cache::Conditions c;
        c.matrices = adjoint_conditions(t, b, &c.names);
        std::lock_guard lock(cache_->mutex);
        conds = &cache_->conditions.emplace(key, std::move(c)).first->second;
    }
    // Targets of each condition, in the order produced by adjoint_conditions.
    std::vector<Bidegree> targets;
    switch (t) {
    case Theory::dolbeault: targets = {b + Bidegree{0, 1}, b + Bidegree{0, -1}}; break;
    case Theory::conj_dolbeault: targets = {b + Bidegree{1, 0}, b + Bidegree{-1, 0}}; break;
    case Theory::bott_chern: targets = {b + Bidegree{1, 0}, b + Bidegree{0, 1}, b + Bidegree{-1, -1}}; break;
    case Theory::aeppli: targets = {b + Bidegree{1, 1}, b + Bidegree{-1, 0}, b + Bidegree{0, -1}}; break;
    case Theory::de_rham: break;
    }
    for (std::size_t k = 0; k < conds->matrices.size(); ++k) {
        Vector img = conds->matrices[k].apply(v);
        if (!is_zero(img))
            return Violation{conds->names[k], form(targets[k], img)};
    }
    return std::nullopt;
}

std::vector<Bidegree> Hodge::total_bidegrees(int k) const
{
    std::vector<Bidegree> out;
    for (int p = 0; p <= n(); ++p)
        if (k - p >= 0 && k - p <= n())
            out.push_back({p, k - p});
    return out;
}

std::size_t Hodge::total_dim(int k) const
{
    std::size_t d = 0;
    for (auto b : total_bidegrees(k))
        d += dim(b);
    return d;
}

DiagonalMetric Hodge::total_metric(int k) const
{
    std::vector<mpq_class> w;
    for (auto b : total_bidegrees(k))
        for (std::size_t j = 0; j < dim(b); ++j)
            w.push_back(metric(b).weight(j));
    return DiagonalMetric(std::move(w));
}

Matrix Hodge::d_total(int k) const
{
    Matrix m(total_dim(k + 1), total_dim(k));
    std::size_t col = 0;
    for (auto src : total_bidegrees(k)) {
        std::size_t row = 0;
        for (auto tgt : total_bidegrees(k + 1)) {
            const Matrix* piece = nullptr;
            if (tgt == src + Bidegree{1, 0})
                piece = &del(src);
            else if (tgt == src + Bidegree{0, 1})
                piece = &dbar(src);
            if (piece)
                for (std::size_t r = 0; r < piece->rows(); ++r)
                    for (std::size_t c = 0; c < piece->cols(); ++c)
                        m(row + r, col + c) = (*piece)(r, c);
            row += dim(tgt);
        }
        col += dim(src);
    }
    return m;
}

Vector Hodge::total_coordinates(const Form& a, int k) const
{
    Vector v;
    std::size_t used = 0;
    for (auto b : total_bidegrees(k)) {
        Form part = a.component(b);
        used += part.terms().size();
        Vector x = coordinates(part, b);
        v.insert(v.end(), x.begin(), x.end());
    }
    if (used != a.terms().size())
        throw PreconditionError("form has terms outside total degree " + std::to_string(k));
    return v;
}

Form Hodge::total_form(int k, std::span<const Scalar> v) const
{
    if (v.size() != total_dim(k))
        throw DimensionMismatch("coordinate vector does not match total degree " + std::to_string(k));
    Form f(model_.algebra());
    std::size_t offset = 0;
    for (auto b : total_bidegrees(k)) {
        f += form(b, v.subspan(offset, dim(b)));
        offset += dim(b);
    }
    return f;
}

HarmonicBasis Hodge::compute_de_rham(int k) const
{
    HarmonicBasis h;
    h.theory = Theory::de_rham;
    h.bidegree = {k, 0};
    h.degree = k;
    const std::size_t dk = total_dim(k);
    Matrix adj = adjoint(d_total(k - 1), total_metric(k - 1), total_metric(k));
    std::vector<Matrix> conds{d_total(k), adj};
    if (dk == 0) {
        h.space = Subspace(0);
        return h;
    }
    h.space = kernel_basis(Matrix::vstack(conds));
    for (const auto& v : h.space.basis())
        h.forms.push_back(total_form(k, v));
    return h;
}

const HarmonicBasis& Hodge::harmonic_de_rham(int k) const
{
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->de_rham.find(k);
        if (it != cache_->de_rham.end())
            return it->second;
    }
    HarmonicBasis h = compute_de_rham(k);
    std::lock_guard lock(cache_->mutex);
    return cache_->de_rham.emplace(k, std::move(h)).first->second;
}

std::optional<Violation> Hodge::de_rham_violation(const Form& a, int k) const
{
    Vector v = total_coordinates(a, k);
    const Cache::DeRhamOperators* ops = nullptr;
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->de_rham_ops.find(k);
        if (it != cache_->de_rham_ops.end())
            ops = &it->second;
    }
    if (!ops) {
        Cache::DeRhamOperators o{d_total(k), adjoint(d_total(k - 1), total_metric(k - 1), total_metric(k))};
        std::lock_guard lock(cache_->mutex);
        ops = &cache_->de_rham_ops.emplace(k, std::move(o)).first->second;
    }
    Vector dv = ops->d.apply(v);
    if (!is_zero(dv))
        return Violation{"d", total_form(k + 1, dv)};
    Vector sv = ops->d_adjoint.apply(v);
    if (!is_zero(sv))
        return Violation{"d*", total_form(k - 1, sv)};
    return std::nullopt;
}

std::size_t Hodge::cohomology_dim(Theory t, Bidegree b) const
{
    if (t == Theory::de_rham)
        return betti_dim(b.total());
    if (!in_range(b))
        return 0;
    const std::size_t d = dim(b);
    const Bidegree down_p = b + Bidegree{-1, 0};
    const Bidegree down_q = b + Bidegree{0, -1};
    switch (t) {
    case Theory::dolbeault:
        return d - rank_fraction_free(dbar(b)) - rank_fraction_free(dbar(down_q));
    case Theory::conj_dolbeault:
        return d - rank_fraction_free(del(b)) - rank_fraction_free(del(down_p));
    case Theory::bott_chern: {
        std::vector<Matrix> closed{del(b), dbar(b)};
        return d - rank_fraction_free(Matrix::vstack(closed)) - rank_fraction_free(ddbar(b + Bidegree{-1, -1}));
    }
    case Theory::aeppli: {
        std::vector<Matrix> exact{del(down_p), dbar(down_q)};
        return d - rank_fraction_free(ddbar(b)) - rank_fraction_free(Matrix::hstack(exact));
    }
    case Theory::de_rham: break;
    }
    return 0;
}

std::size_t Hodge::betti_dim(int k) const
{
    if (k < 0 || k > 2 * n())
        return 0;
    return total_dim(k) - rank_fraction_free(d_total(k)) - rank_fraction_free(d_total(k - 1));
}

namespace {

CohomologyClass project_class(const HarmonicBasis& hb, const Vector& v, const DiagonalMetric& metric,
                              const Subspace& exact, Form harmonic_form_zero)
{
    CohomologyClass cls{projection_coordinates(hb.space, v, metric), std::move(harmonic_form_zero)};
    Vector proj = combine(hb.space.basis(), cls.coordinates, v.size());
    Vector residual = v;
    for (std::size_t k = 0; k < v.size(); ++k)
        residual[k] -= proj[k];
    if (!exact.contains(residual))
        throw InvariantViolation("residual of the harmonic projection is not exact");
    for (std::size_t k = 0; k < hb.forms.size(); ++k) {
        Form t = hb.forms[k];
        t *= cls.coordinates[k];
        cls.harmonic += t;
    }
    return cls;
}

} // namespace

const Subspace& Hodge::exact_space(Theory t, Bidegree b) const
{
    const auto key = std::make_pair(static_cast<int>(t), b);
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->exact.find(key);
        if (it != cache_->exact.end())
            return it->second;
    }
    const Bidegree down_p = b + Bidegree{-1, 0};
    const Bidegree down_q = b + Bidegree{0, -1};
    Matrix exact;
    switch (t) {
    case Theory::dolbeault: exact = dbar(down_q); break;
    case Theory::conj_dolbeault: exact = del(down_p); break;
    case Theory::bott_chern: exact = ddbar(b + Bidegree{-1, -1}); break;
    case Theory::aeppli: {
        std::vector<Matrix> blocks{del(down_p), dbar(down_q)};
        exact = Matrix::hstack(blocks);
        break;
    }
    case Theory::de_rham: exact = d_total(b.p - 1); break;
    }
    Subspace space = column_space(exact);
    std::lock_guard lock(cache_->mutex);
    return cache_->exact.emplace(key, std::move(space)).first->second;
}

CohomologyClass Hodge::class_of(const Form& a, Theory t, Bidegree b) const
{
    if (t == Theory::de_rham)
        return class_of_de_rham(a, b.total());
    Vector v = coordinates(a, b);
    switch (t) {
    case Theory::dolbeault:
        if (!is_zero(dbar(b).apply(v)))
            throw PreconditionError("form is not dbar-closed");
        break;
    case Theory::conj_dolbeault:
        if (!is_zero(del(b).apply(v)))
            throw PreconditionError("form is not del-closed");
        break;
    case Theory::bott_chern:
        if (!is_zero(del(b).apply(v)) || !is_zero(dbar(b).apply(v)))
            throw PreconditionError("form is not d-closed");
        break;
    case Theory::aeppli:
        if (!is_zero(ddbar(b).apply(v)))
            throw PreconditionError("form is not del dbar-closed");
        break;
    case Theory::de_rham: break;
    }
    return project_class(harmonic(t, b), v, metric(b), exact_space(t, b), Form(model_.algebra()));
}

CohomologyClass Hodge::class_of_de_rham(const Form& a, int k) const
{
    Vector v = total_coordinates(a, k);
    if (!is_zero(d_total(k).apply(v)))
        throw PreconditionError("form is not d-closed");
    return project_class(harmonic_de_rham(k), v, total_metric(k), exact_space(Theory::de_rham, {k, 0}),
                         Form(model_.algebra()));
}

CohomologyTable Hodge::table() const
{
    CohomologyTable t;
    t.model = model_.name();
    t.n = n();
    auto grid = [&](Theory th) {
        std::vector<std::vector<int>> g(n() + 1, std::vector<int>(n() + 1, 0));
        for (int p = 0; p <= n(); ++p)
            for (int q = 0; q <= n(); ++q)
                g[p][q] = static_cast<int>(harmonic(th, {p, q}).forms.size());
        return g;
    };
    t.h_dbar = grid(Theory::dolbeault);
    t.h_del = grid(Theory::conj_dolbeault);
    t.h_bc = grid(Theory::bott_chern);
    t.h_a = grid(Theory::aeppli);
    for (int k = 0; k <= 2 * n(); ++k)
        t.betti.push_back(static_cast<int>(harmonic_de_rham(k).forms.size()));
    return t;
}

} // namespace hermform
