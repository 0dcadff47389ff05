#pragma once

// Command-line surface. Each command reads one JSON config and writes CSV
// (17 significant digits, one header line) or, for `check`, key=value text.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace igeo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputFailure = 2,
  kNumericFailure = 3,
  kCheckFailure = 4,
};

// Runs one command on config text. The seed falls back to the config's
// top-level "seed", then audit::kDefaultSeed. Errors are reported on `err` and
// mapped to exit codes; nothing is thrown.
int execute(std::string_view command, std::string_view config_text,
            std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (program name excluded), reads the config
// file and dispatches to execute, writing to --out when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace igeo::cli
