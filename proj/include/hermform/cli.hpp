#pragma once

#include "hermform/hodge.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hermform::cli {

/// Runs one command. Returns 0 on success, 1 on user error and 2 when an
/// internal invariant fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Centered diamond of a bigraded table: degree 0 on top, p decreasing
/// from left to right.
std::string render_diamond(const std::vector<std::vector<int>>& grid);

} // namespace hermform::cli
