#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ssflab/types.hpp"

namespace ssflab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

/// Runs one command line (without the program name). Reports go to `out` as
/// JSON lines, diagnostics to `err`. Returns 0 when every check passed, 1 on
/// a failed check, 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `RE+IMi`, `RE-IMi`, `IMi` or `RE`. Throws InvalidInput.
Complex parse_complex(const std::string& text);

}  // namespace ssflab::cli
