#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace modalkit::cli {

enum class Command { Table, Coloring, LocalModels, NoSignal, Enumerate };
enum class Format { Text, Json, Csv };

struct RunConfig {
  Command command = Command::Table;
  std::int64_t p = 2;
  std::int64_t dim = 2;
  Format format = Format::Text;
  std::optional<std::string> input;   // --file for coloring, --state otherwise
  std::optional<std::string> output;  // --out
  bool symbolic = false;
};

/// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsage = 2;

/// Runs the tool on argv-style arguments (without the program name).
/// Output goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modalkit::cli
