#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace igsub::cli {

/// Every parameter a command reads, with defaults already resolved. Its JSON
/// form (without the output path) is embedded in each output file and can be
/// fed back through --config.
struct RunConfig {
  std::string command;
  std::string kind = "ing";
  double alpha = 0.5;
  std::optional<double> eps;
  std::optional<double> theta;
  std::optional<double> lambda;
  double horizon = 10.0;  // -T, simulate
  double t = 1.0;         // -t, pmf / moments
  std::size_t steps = 100;
  std::size_t paths = 0;  // 0: 10 for simulate, 10000 for ruin
  std::uint64_t seed = 1;
  std::string method = "auto";
  std::size_t burn_in = 1000;
  std::size_t thinning = 100;
  std::string k = "0..10";
  std::optional<double> q;
  std::string mode = "pdf";
  std::optional<double> z;
  std::optional<double> z_min;
  std::optional<double> z_max;
  std::size_t points = 400;
  double u = 0.0;
  double y = 1.0;
  std::string claims = "exp:1";
  double c = 1.0;
  double ruin_horizon = 0.0;
  std::string rate_convention = "with-alpha";
  bool residual = false;
  std::string format = "csv";
  std::string output;  // not serialized
};

std::string to_json_text(const RunConfig& cfg);
RunConfig from_json_text(const std::string& text);

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --output names a file; diagnostics go to `err`. Returns the
/// process exit code: 0 on success, 1 for usage errors, 2 for domain errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace igsub::cli
