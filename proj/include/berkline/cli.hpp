#pragma once

#include <string>
#include <vector>

#include "berkline/json_io.hpp"

namespace berkline::cli {

/// Exit codes: 0 success, 1 malformed request, 2 domain error, 3 precision error.
struct Outcome {
  Json document;
  int exit_code = 0;
  /// Non-JSON output (help text, SVG); printed instead of the document when set.
  std::string text;
};

/// args excludes the program name, e.g. {"eval", "--point", "...", "--poly", "t"}.
Outcome run(const std::vector<std::string>& args);

}  // namespace berkline::cli
