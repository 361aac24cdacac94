#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "meancurv/discrete.hpp"

namespace meancurv::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kCheckFailed = 2 };

/// Entry point behind the `meancurv` executable. Arguments exclude the
/// program name. CSV goes to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(const std::vector<std::string>& args);

/// Two-column `vertex,value` CSV with an optional header row. Every vertex
/// in [0, num_vertices) must appear exactly once.
ScalarField parse_scalar_field(std::string_view text, int num_vertices);

/// %.17g
std::string format_real(double x);

}  // namespace meancurv::cli
