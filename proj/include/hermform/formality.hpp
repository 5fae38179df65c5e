#pragma once

#include "hermform/hodge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hermform {

enum class Notion { geom_dolbeault, geom_bott_chern, geom_abc, geom_aeppli, geom_de_rham };

std::string to_string(Notion n);
/// Accepts the enum names and "dolbeault", "bott-chern", "abc", "aeppli", "de-rham".
std::optional<Notion> parse_notion(const std::string& s);

/// A product (or image) that leaves the harmonic space.
struct Witness {
    Form first;
    std::optional<Form> second;  // absent when an operator image is tested
    Form product;                // first ^ second, or the operator image
    std::string condition;       // failed defining equation
    Form image;                  // nonzero value of that equation
};

struct FormalityReport {
    Notion notion = Notion::geom_dolbeault;
    bool verdict = false;
    std::optional<Witness> witness;
    // Aeppli only: A-harmonic ^ BC-harmonic stays A-harmonic, and the
    // coincidence H_dbar = H_BC = H_A with a bigraded, closed de Rham space.
    std::optional<bool> module_condition;
    std::optional<bool> spaces_coincide;
};

FormalityReport check_formality(const Hodge& h, Notion notion);

/// First dbar-closed (p,0)-form, p = 1..n, that is not del-closed.
std::optional<Form> holomorphic_closedness_obstruction(const Hodge& h);

struct DdbarRow {
    int p = 0;
    bool bc_p0_equals_dbar = false;   // H_BC^{p,0} = H_dbar^{p,0}
    bool bc_0p_equals_del = false;    // H_BC^{0,p} = H_del^{0,p}
    bool a_pn_equals_dbar = false;    // H_A^{p,n} = H_dbar^{p,n}
    bool a_np_equals_del = false;     // H_A^{n,p} = H_del^{n,p}

    bool all() const { return bc_p0_equals_dbar && bc_0p_equals_del && a_pn_equals_dbar && a_np_equals_del; }
};

std::vector<DdbarRow> ddbar_p0_report(const Hodge& h);

} // namespace hermform
