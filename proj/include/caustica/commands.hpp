#pragma once

// The four `caustica` subcommands as library calls. Each writes its files into
// `out` (created if missing), logs to `log`, and returns the process exit code:
//   0 success, 1 a check or cross verification failed, 2 invalid input,
//   3 envelope/evolute mismatch.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "caustica/config.hpp"

namespace caustica {

struct OvalsOptions {
  std::string out = ".";
  bool svg = false;
};

struct CausticOptions {
  std::string out = ".";
  // Normalized scene A = (0,0), O = (1,0), radius r, index n; overrides the
  // scene file.
  std::optional<std::pair<Rational, Rational>> specialize;
  bool symbolic = false;
  int samples = 1024;  // numeric envelope samples per interval
  double tol = 1e-5;   // scaled residual bound
};

struct VerifyOptions {
  std::string out = ".";
  int samples = 64;
  std::optional<double> tol;  // replaces every floating-point tolerance
  std::uint64_t seed = 1;
  bool envelope = true;  // includes the symbolic caustic check (circle scenes)
};

int run_ovals(const SceneConfig& config, const OvalsOptions& options, std::ostream& log);
int run_caustic(const std::optional<SceneConfig>& config, const CausticOptions& options, std::ostream& log);
int run_render(const SceneConfig& config, const std::string& out, std::ostream& log);
int run_verify(const SceneConfig& config, const VerifyOptions& options, std::ostream& log);

/// "r=1/3,n=1/2" -> (1/3, 1/2); ConfigError otherwise.
std::pair<Rational, Rational> parse_specialization(std::string_view text);

}  // namespace caustica
