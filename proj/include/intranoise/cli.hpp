#pragma once

// Command implementations behind the intranoise executable. Each run_*
// writes its full report to `out`, diagnostics to `err`, and returns the
// process exit status.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "intranoise/analysis.hpp"

namespace intranoise::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitTolerance = 1,
  kExitConfig = 2,
  kExitState = 3,
};

enum class Command { Sweep, Analyze, Compare, NonMarkov, Verify };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Sweep;
  std::string state;  // see parse_state
  bool normalize = false;
  std::optional<ChannelKind> channel;
  std::optional<Locality> locality;
  PGrid grid{};
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  double big_gamma = 1.0;
  double small_gamma = 1.0;
  double t_max = 10.0;
};

/// Thrown for malformed flags or state text; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// State text forms:
///   a,b,c,d                                   real amplitudes
///   a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im   complex amplitudes
///   polar:|a|,th_a,|b|,th_b,|c|,th_c,|d|,th_d angles in degrees
/// Throws ConfigError on malformed text and Error (ZeroVector,
/// NotNormalized) when the amplitudes are not a valid state.
PureState4 parse_state(std::string_view text, bool normalize);

/// 12 significant digits, no negative zero.
std::string format_number(double x);

/// Counter-based SplitMix64: draw k depends only on (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_nonmarkov(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatch on cfg.command.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace intranoise::cli
