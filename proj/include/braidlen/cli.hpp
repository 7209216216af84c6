#pragma once

#include <iosfwd>

namespace braidlen::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kIoError = 3,
  kSemanticFailure = 4,  // keys disagree, attack failed
};

/// Entry point of the `braidlen` tool. Documents go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace braidlen::cli
