#pragma once

#include "hermform/dsl.hpp"
#include "hermform/model.hpp"

#include <string>
#include <vector>

namespace hermform {

struct CatalogEntry {
    std::string id;           // "ce:u=U,v=V" and "torus:n=N" are families
    std::string description;
    std::vector<std::string> parameters;
};

std::vector<CatalogEntry> catalog_entries();

/// Structure-equation source of a catalog id (families instantiated).
std::string catalog_source(const std::string& id);

/// Loads a catalog model. Throws Error for unknown ids or invalid parameters.
Model load_model(const std::string& id, const Parameters& params = {});

/// Ids of the complex-parallelisable models with structure equations
/// (nakamura:III.2 ... nakamura:V.17).
std::vector<std::string> nakamura_ids();

/// Iwasawa model restricted to forms fixed by the order-4 automorphism
/// (z1, z2, z3) -> (i z1, i z2, -z3).
DiagonalAction example1_action();

/// One listed triple product: model, three classes, expected representative.
struct AppendixCase {
    std::string id;        // e.g. "V.17(1,-1)"
    std::string model;     // catalog id
    Parameters params;
    std::string a, b, c;   // forms in structure-equation syntax
    std::string expected;  // listed Aeppli representative
};

/// All listed cases in order; V.17 appears at (alpha, beta) = (1, 1) and (1, -1).
std::vector<AppendixCase> appendix_cases();

/// A single case, e.g. ("V.17", {alpha=2, beta=-1}). V.17 selects the triple
/// listed for beta = -1 or beta != -1.
AppendixCase appendix_case(const std::string& id, const Parameters& params = {});

} // namespace hermform
