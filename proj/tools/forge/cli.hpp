#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace forge::cli {

struct Environment {
  // Value of FORGE_ALGOBANK, if set.
  std::optional<std::string> algobank;
};

// Runs one `forge` invocation. args excludes the program name.
// Returns 0 on success, 1 on a domain error (JSON on err), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}  // namespace forge::cli
