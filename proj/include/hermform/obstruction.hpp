#pragma once

#include "hermform/hodge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hermform {

using Entry = std::optional<long>;
using Grid = std::vector<std::vector<Entry>>;  // indexed [p][q], (n+1) x (n+1)

/// Cohomology dimensions of a compact complex manifold. Absent grids and
/// absent entries are allowed; tests that need them are skipped.
struct DimTable {
    int n = 0;
    std::optional<Grid> h_dbar, h_bc, h_a;
    std::optional<std::vector<Entry>> betti;  // b_0 .. b_{2n}

    /// Throws DimensionMismatch for wrong shapes and PreconditionError for
    /// negative entries or violated symmetries: conjugation for h_bc and h_a,
    /// Serre duality for h_dbar, Poincare duality for betti.
    void validate() const;

    bool operator==(const DimTable&) const = default;
};

DimTable torus_table(int n);
DimTable from_cohomology(const CohomologyTable& t);

/// Fills h_dbar and h_a from h_bc and the Betti numbers by summing h_bc over
/// p+q = k, as forced by the del dbar-lemma.
DimTable assume_ddbar_lemma(DimTable t);

std::string to_json(const DimTable& t);
/// Throws Error on malformed documents.
DimTable dim_table_from_json(const std::string& text);

enum class Target { riemannian, dolbeault, bott_chern_cn, abc, aeppli };
std::string to_string(Target t);

/// One instantiated inequality lhs <= rhs.
struct Inequality {
    std::string test;
    std::vector<Target> obstructs;
    long lhs = 0;
    long rhs = 0;
    std::string text;  // e.g. "h_dbar^{1,0} * h_dbar^{0,1} = 4 > 2 = h_dbar^{1,1}"

    bool holds() const { return lhs <= rhs; }
};

struct ObstructionReport {
    struct Verdict {
        Target target;
        bool obstructed = false;
    };
    std::vector<Verdict> verdicts;  // one per Target, in enum order
    std::vector<Inequality> fired;
    std::vector<std::string> skipped;

    bool obstructed(Target t) const;
};

ObstructionReport analyze(const DimTable& t);
std::string to_json(const ObstructionReport& r);

/// Betti numbers of the blow-up along a center of codimension k:
/// b_j + sum_{i=1}^{k-1} b_{j-2i}(center).
DimTable blowup_derham(const DimTable& base, const DimTable& center, int codim);

/// Bott-Chern numbers of a threefold blown up along a curve:
/// h_BC^{p,q} + h_dbar^{p-1,q-1}(curve).
DimTable blowup_bc_threefold_curve(const DimTable& base, const DimTable& curve);

/// Table of a smooth rational curve.
DimTable rational_curve();

} // namespace hermform
