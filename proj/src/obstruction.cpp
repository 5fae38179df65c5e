#include "hermform/obstruction.hpp"

#include "hermform/errors.hpp"

#include <nlohmann/json.hpp>

#include <functional>

namespace hermform {
namespace {

using nlohmann::json;

long choose(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return r;
}

std::string sup(int p, int q)
{
    return "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

Grid full_grid(int n, const std::function<long(int, int)>& f)
{
    Grid g(static_cast<std::size_t>(n + 1), std::vector<Entry>(static_cast<std::size_t>(n + 1)));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            g[p][q] = f(p, q);
    return g;
}

Grid to_grid(const std::vector<std::vector<int>>& g)
{
    Grid out;
    for (const auto& row : g) {
        out.emplace_back();
        for (int v : row)
            out.back().emplace_back(v);
    }
    return out;
}

void check_grid(const Grid& g, int n, const char* name)
{
    if (g.size() != static_cast<std::size_t>(n + 1))
        throw DimensionMismatch(std::string(name) + " must have n+1 rows");
    for (const auto& row : g) {
        if (row.size() != static_cast<std::size_t>(n + 1))
            throw DimensionMismatch(std::string(name) + " must have n+1 columns");
        for (const Entry& e : row)
            if (e && *e < 0)
                throw PreconditionError(std::string(name) + " has a negative entry");
    }
}

void check_symmetry(const Grid& g, const char* name, const std::function<std::pair<int, int>(int, int)>& partner)
{
    const int n = static_cast<int>(g.size()) - 1;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            auto [r, s] = partner(p, q);
            if (g[p][q] && g[r][s] && *g[p][q] != *g[r][s])
                throw PreconditionError(std::string(name) + sup(p, q) + " = " + std::to_string(*g[p][q]) + " but " +
                                        name + sup(r, s) + " = " + std::to_string(*g[r][s]));
        }
}

json grid_json(const std::optional<Grid>& g)
{
    if (!g)
        return nullptr;
    json out = json::array();
    for (const auto& row : *g) {
        json r = json::array();
        for (const Entry& e : row)
            r.push_back(e ? json(*e) : json(nullptr));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Entry> entries_from_json(const json& a, const char* name)
{
    if (!a.is_array())
        throw Error(std::string(name) + " must be an array or null");
    std::vector<Entry> out;
    for (const auto& v : a) {
        if (v.is_null())
            out.emplace_back();
        else if (v.is_number_integer())
            out.emplace_back(v.get<long>());
        else
            throw Error(std::string(name) + " entries must be integers or null");
    }
    return out;
}

std::optional<Grid> grid_from_json(const json& doc, const char* name)
{
    auto it = doc.find(name);
    if (it == doc.end() || it->is_null())
        return std::nullopt;
    if (!it->is_array())
        throw Error(std::string(name) + " must be an array of rows or null");
    Grid g;
    for (const auto& row : *it)
        g.push_back(entries_from_json(row, name));
    return g;
}

constexpr Target kAllTargets[] = {Target::riemannian, Target::dolbeault, Target::bott_chern_cn, Target::abc,
                                  Target::aeppli};

class Runner {
public:
    explicit Runner(ObstructionReport& r) : r_(r) {}

    // Registers one family; `body` returns the number of evaluated instances.
    void family(const std::string& test, const std::string& missing, bool present, const std::function<int()>& body)
    {
        if (!present || body() == 0)
            r_.skipped.push_back(test + ": " + missing);
    }

    void check(const std::string& test, std::vector<Target> obstructs, long lhs, long rhs, std::string text)
    {
        Inequality ineq{test, std::move(obstructs), lhs, rhs, std::move(text)};
        if (!ineq.holds())
            r_.fired.push_back(std::move(ineq));
    }

private:
    ObstructionReport& r_;
};

void product_and_torus(Runner& run, const std::optional<Grid>& g, int n, const std::string& name,
                       const std::string& prefix, std::vector<Target> obstructs, bool product)
{
    if (product)
        run.family(prefix + "-product", name + " entries missing", g.has_value(), [&] {
            int count = 0;
            for (int p = 1; p <= n; ++p)
                for (int q = 1; q <= n; ++q) {
                    const Entry& a = (*g)[p][0];
                    const Entry& b = (*g)[0][q];
                    const Entry& c = (*g)[p][q];
                    if (!a || !b || !c)
                        continue;
                    ++count;
                    const long lhs = *a * *b;
                    run.check(prefix + "-product", obstructs, lhs, *c,
                              name + sup(p, 0) + " * " + name + sup(0, q) + " = " + std::to_string(*a) + " * " +
                                  std::to_string(*b) + " = " + std::to_string(lhs) + " > " + std::to_string(*c) +
                                  " = " + name + sup(p, q));
                }
            return count;
        });
    run.family(prefix + "-torus", name + " entries missing", g.has_value(), [&] {
        int count = 0;
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                const Entry& c = (*g)[p][q];
                if (!c)
                    continue;
                ++count;
                const long bound = choose(n, p) * choose(n, q);
                run.check(prefix + "-torus", obstructs, *c, bound,
                          name + sup(p, q) + " = " + std::to_string(*c) + " > " + std::to_string(bound) + " = h" +
                              sup(p, q) + "(T^" + std::to_string(n) + ")");
            }
        return count;
    });
}

// Sum over p+q = k of the given grids; nullopt if an entry is missing.
std::optional<long> diagonal_sum(const std::vector<const Grid*>& gs, int n, int k)
{
    long s = 0;
    for (const Grid* g : gs)
        for (int p = 0; p <= n; ++p) {
            const int q = k - p;
            if (q < 0 || q > n)
                continue;
            const Entry& e = (*g)[p][q];
            if (!e)
                return std::nullopt;
            s += *e;
        }
    return s;
}

} // namespace

void DimTable::validate() const
{
    if (n < 1)
        throw PreconditionError("complex dimension must be at least 1");
    if (h_dbar) {
        check_grid(*h_dbar, n, "h_dbar");
        check_symmetry(*h_dbar, "h_dbar", [this](int p, int q) { return std::pair{n - p, n - q}; });
    }
    if (h_bc) {
        check_grid(*h_bc, n, "h_bc");
        check_symmetry(*h_bc, "h_bc", [](int p, int q) { return std::pair{q, p}; });
    }
    if (h_a) {
        check_grid(*h_a, n, "h_a");
        check_symmetry(*h_a, "h_a", [](int p, int q) { return std::pair{q, p}; });
    }
    if (betti) {
        if (betti->size() != static_cast<std::size_t>(2 * n + 1))
            throw DimensionMismatch("betti must have 2n+1 entries");
        for (std::size_t k = 0; k < betti->size(); ++k) {
            const Entry& a = (*betti)[k];
            const Entry& b = (*betti)[betti->size() - 1 - k];
            if (a && *a < 0)
                throw PreconditionError("betti has a negative entry");
            if (a && b && *a != *b)
                throw PreconditionError("b_" + std::to_string(k) + " differs from b_" +
                                        std::to_string(2 * n - static_cast<int>(k)));
        }
    }
}

DimTable torus_table(int n)
{
    if (n < 1)
        throw PreconditionError("torus dimension must be at least 1");
    DimTable t;
    t.n = n;
    auto h = [n](int p, int q) { return choose(n, p) * choose(n, q); };
    t.h_dbar = full_grid(n, h);
    t.h_bc = full_grid(n, h);
    t.h_a = full_grid(n, h);
    t.betti.emplace();
    for (int k = 0; k <= 2 * n; ++k)
        t.betti->emplace_back(choose(2 * n, k));
    return t;
}

DimTable from_cohomology(const CohomologyTable& c)
{
    DimTable t;
    t.n = c.n;
    t.h_dbar = to_grid(c.h_dbar);
    t.h_bc = to_grid(c.h_bc);
    t.h_a = to_grid(c.h_a);
    t.betti.emplace();
    for (int b : c.betti)
        t.betti->emplace_back(b);
    return t;
}

DimTable assume_ddbar_lemma(DimTable t)
{
    if (!t.h_bc)
        throw PreconditionError("h_bc is required");
    t.validate();
    t.h_dbar = t.h_bc;
    t.h_a = t.h_bc;
    t.betti.emplace();
    const std::vector<const Grid*> gs{&*t.h_bc};
    for (int k = 0; k <= 2 * t.n; ++k)
        t.betti->push_back(diagonal_sum(gs, t.n, k));
    return t;
}

std::string to_json(const DimTable& t)
{
    json doc;
    doc["n"] = t.n;
    doc["h_dbar"] = grid_json(t.h_dbar);
    doc["h_bc"] = grid_json(t.h_bc);
    doc["h_a"] = grid_json(t.h_a);
    if (t.betti) {
        json b = json::array();
        for (const Entry& e : *t.betti)
            b.push_back(e ? json(*e) : json(nullptr));
        doc["betti"] = std::move(b);
    } else {
        doc["betti"] = nullptr;
    }
    return doc.dump(2);
}

DimTable dim_table_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw Error("table must be an object with an integer field n");
    DimTable t;
    t.n = doc["n"].get<int>();
    t.h_dbar = grid_from_json(doc, "h_dbar");
    t.h_bc = grid_from_json(doc, "h_bc");
    t.h_a = grid_from_json(doc, "h_a");
    if (doc.contains("betti") && !doc["betti"].is_null())
        t.betti = entries_from_json(doc["betti"], "betti");
    t.validate();
    return t;
}

std::string to_string(Target t)
{
    switch (t) {
    case Target::riemannian: return "geometric";
    case Target::dolbeault: return "geometric Dolbeault";
    case Target::bott_chern_cn: return "geometric Bott-Chern (CN)";
    case Target::abc: return "ABC-geometric";
    case Target::aeppli: return "geometric Aeppli";
    }
    return "?";
}

bool ObstructionReport::obstructed(Target t) const
{
    for (const auto& v : verdicts)
        if (v.target == t)
            return v.obstructed;
    return false;
}

ObstructionReport analyze(const DimTable& t)
{
    t.validate();
    ObstructionReport r;
    Runner run(r);
    const int n = t.n;
    using T = Target;

    product_and_torus(run, t.h_dbar, n, "h_dbar", "dolbeault", {T::dolbeault, T::aeppli}, true);
    product_and_torus(run, t.h_bc, n, "h_bc", "bott-chern", {T::bott_chern_cn, T::abc, T::aeppli}, true);
    product_and_torus(run, t.h_a, n, "h_a", "aeppli", {T::bott_chern_cn, T::abc, T::aeppli}, false);

    run.family("betti-torus", "betti missing", t.betti.has_value(), [&] {
        int count = 0;
        for (int k = 0; k <= 2 * n; ++k) {
            const Entry& b = (*t.betti)[k];
            if (!b)
                continue;
            ++count;
            const long bound = choose(2 * n, k);
            run.check("betti-torus", {std::begin(kAllTargets), std::end(kAllTargets)}, *b, bound,
                      "b_" + std::to_string(k) + " = " + std::to_string(*b) + " > " + std::to_string(bound) + " = b_" +
                          std::to_string(k) + "(T^" + std::to_string(2 * n) + ")");
        }
        return count;
    });

    run.family("frolicher-dolbeault", "betti or h_dbar missing", t.betti && t.h_dbar, [&] {
        int count = 0;
        for (int k = 0; k <= 2 * n; ++k) {
            const Entry& b = (*t.betti)[k];
            auto s = diagonal_sum({&*t.h_dbar}, n, k);
            if (!b || !s)
                continue;
            ++count;
            run.check("frolicher-dolbeault", {T::dolbeault}, *b, *s,
                      "b_" + std::to_string(k) + " = " + std::to_string(*b) + " > " + std::to_string(*s) +
                          " = sum_{p+q=" + std::to_string(k) + "} h_dbar^{p,q}");
        }
        return count;
    });

    run.family("frolicher-bc-a", "betti, h_bc or h_a missing", t.betti && t.h_bc && t.h_a, [&] {
        int count = 0;
        for (int k = 0; k <= 2 * n; ++k) {
            const Entry& b = (*t.betti)[k];
            auto s = diagonal_sum({&*t.h_bc, &*t.h_a}, n, k);
            if (!b || !s)
                continue;
            ++count;
            run.check("frolicher-bc-a", {T::bott_chern_cn, T::abc}, 2 * *b, *s,
                      "2 b_" + std::to_string(k) + " = " + std::to_string(2 * *b) + " > " + std::to_string(*s) +
                          " = sum_{p+q=" + std::to_string(k) + "} (h_bc^{p,q} + h_a^{p,q})");
        }
        return count;
    });

    for (Target target : kAllTargets) {
        bool hit = false;
        for (const auto& f : r.fired)
            for (Target o : f.obstructs)
                hit = hit || o == target;
        r.verdicts.push_back({target, hit});
    }
    return r;
}

std::string to_json(const ObstructionReport& r)
{
    json doc;
    json verdicts = json::object();
    for (const auto& v : r.verdicts)
        verdicts[to_string(v.target)] = v.obstructed ? "obstructed" : "not_obstructed_by_these_tests";
    doc["verdicts"] = std::move(verdicts);
    json fired = json::array();
    for (const auto& f : r.fired) {
        json o;
        o["test"] = f.test;
        o["inequality"] = f.text;
        o["lhs"] = f.lhs;
        o["rhs"] = f.rhs;
        json targets = json::array();
        for (Target t : f.obstructs)
            targets.push_back(to_string(t));
        o["obstructs"] = std::move(targets);
        fired.push_back(std::move(o));
    }
    doc["fired"] = std::move(fired);
    doc["skipped"] = r.skipped;
    return doc.dump(2);
}

DimTable blowup_derham(const DimTable& base, const DimTable& center, int codim)
{
    if (codim < 2)
        throw PreconditionError("blow-up center must have codimension at least 2");
    if (center.n != base.n - codim)
        throw DimensionMismatch("center dimension must be n - codim");
    if (!base.betti || !center.betti)
        throw PreconditionError("Betti numbers of base and center are required");
    base.validate();
    if (center.n > 0)
        center.validate();
    else if (center.betti->size() != 1)
        throw DimensionMismatch("a point center has one Betti number");
    DimTable out;
    out.n = base.n;
    out.betti = base.betti;
    for (int j = 0; j <= 2 * base.n; ++j) {
        Entry& b = (*out.betti)[j];
        for (int i = 1; i <= codim - 1; ++i) {
            const int m = j - 2 * i;
            if (m < 0 || m > 2 * center.n)
                continue;
            const Entry& c = (*center.betti)[m];
            b = b && c ? Entry(*b + *c) : std::nullopt;
        }
    }
    return out;
}

DimTable blowup_bc_threefold_curve(const DimTable& base, const DimTable& curve)
{
    if (base.n != 3)
        throw DimensionMismatch("base must be a threefold");
    if (curve.n != 1)
        throw DimensionMismatch("center must be a curve");
    if (!base.h_bc || !curve.h_dbar)
        throw PreconditionError("h_bc of the base and h_dbar of the curve are required");
    base.validate();
    curve.validate();
    DimTable out;
    out.n = 3;
    out.h_bc = base.h_bc;
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            if (p - 1 > 1 || q - 1 > 1)
                continue;
            Entry& e = (*out.h_bc)[p][q];
            const Entry& c = (*curve.h_dbar)[p - 1][q - 1];
            e = e && c ? Entry(*e + *c) : std::nullopt;
        }
    return out;
}

DimTable rational_curve()
{
    DimTable t;
    t.n = 1;
    t.h_dbar = Grid{{1, 0}, {0, 1}};
    t.h_bc = t.h_dbar;
    t.h_a = t.h_dbar;
    t.betti = std::vector<Entry>{1, 0, 1};
    return t;
}

} // namespace hermform
