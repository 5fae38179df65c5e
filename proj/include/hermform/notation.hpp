#pragma once

#include "hermform/algebra.hpp"

#include <string>

namespace hermform {

/// True when HERMFORM_ASCII=1 is set in the environment.
bool ascii_from_env();

/// Display names: complex-parallelisable coframes (p1.., q1..) print as
/// φ^{3 1̄2̄3̄} (ASCII: phi^{3 ~1~2~3}); other generators print by name with
/// Greek transliteration (phi -> φ, w1 -> ω₁) and conjugates overlined
/// (ASCII: ~phi).
std::string format_monomial(const GradedAlgebra& alg, const Monomial& m, bool ascii);
std::string format_form(const Form& f, bool ascii);
std::string format_generator(const GradedAlgebra& alg, std::size_t k, bool ascii);

} // namespace hermform
