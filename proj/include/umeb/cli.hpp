#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "umeb/matcore.hpp"

namespace umeb::cli {

enum class Command { Generate, Verify, Umeb, Feasibility, WhCheck, Hadamard, DemoIcosahedron };
enum class Format { Json, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdictFailed = 2;

struct RunConfig {
  Command command = Command::DemoIcosahedron;
  std::optional<std::int64_t> p;
  std::optional<int> r;
  std::optional<int> d;
  std::optional<int> dmax;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> order;
  Tolerance tol;
  std::uint64_t seed = 42;
  int trials = 20;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::optional<std::string> cert;
  std::optional<std::string> report;
  std::optional<std::string> hadamard_file;
  Format format = Format::Text;
  bool no_timestamp = false;
  bool dual = false;
};

/// Parses argv into a RunConfig. Throws Error(UsageError) on bad arguments.
/// `--help` output goes to `out` and yields std::nullopt. When no --eps is
/// given, the UMEB_TOL environment variable (if set) supplies eps.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes one command. Returns 0 when every verdict passes, 2 on a failed
/// verdict and 1 on usage, IO or precondition errors (message on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the same exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umeb::cli
