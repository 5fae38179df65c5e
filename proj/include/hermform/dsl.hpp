#pragma once

#include "hermform/model.hpp"

#include <map>
#include <string>
#include <string_view>

namespace hermform {

using Parameters = std::map<std::string, Scalar>;

/// Parses a structure-equation source (.alg). Values in `overrides` replace
/// the defaults of declared parameters. Syntax errors raise ParseError with
/// line and column; inconsistent equations raise ModelError.
ModelSpecPtr parse_model(std::string_view source, const Parameters& overrides = {});

/// Canonical source with explicit gen/del/dbar lines and evaluated
/// coefficients. parse_model(print_model(m)) reproduces m.
std::string print_model(const ModelSpec& spec);

/// Structural equality: names, generators, parameters and differentials.
bool same_model(const ModelSpec& a, const ModelSpec& b);

/// Parses a form such as "p1*q2 - 2i*p3*q3" over the generators of a model.
Form parse_form(const ModelSpec& spec, std::string_view text);

} // namespace hermform
