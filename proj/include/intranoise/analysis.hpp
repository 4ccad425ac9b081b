#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "intranoise/noise_channels.hpp"
#include "intranoise/quantum_state.hpp"

namespace intranoise {

namespace tolerance {
// Two-tier hysteresis for trajectory shapes: below kZeroConcurrence counts as
// zero, a rise must exceed kRiseConcurrence to count as entanglement.
inline constexpr double kZeroConcurrence = 1e-9;
inline constexpr double kRiseConcurrence = 1e-7;
// Golden-section and bisection stop width in P.
inline constexpr double kSearchP = 1e-10;
// Classification needs at least this many grid points.
inline constexpr std::size_t kMinClassifyPoints = 64;
}  // namespace tolerance

enum class TrajectoryClass {
  MonotonicDecay,
  ESDThenRevival,
  // Concurrence falls to a nonzero minimum and then rises again.
  DipThenRevival,
  CreationThenDecay,
  ESDNoRevival,
  IdenticallyZero,
};

std::string_view to_string(TrajectoryClass c);

struct Extremum {
  double p = 0.0;
  double c = 0.0;
};

/// Interior minimum and the following maximum of C(P). Either side is empty
/// when its location falls outside [0, 1].
struct RevivalExtrema {
  std::optional<Extremum> minimum;
  std::optional<Extremum> maximum;
};

struct RevivalReport {
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  Locality locality = Locality::Intraparticle;
  std::optional<double> esd_p;
  std::optional<double> p_minus, c_minus;
  std::optional<double> p_plus, c_plus;
  std::optional<double> c_tilde;
  TrajectoryClass classification = TrajectoryClass::IdenticallyZero;
  double delta_theta = 0.0;  // radians
  bool delta_theta_defined = false;
};

/// Uniform grid of `steps` points from p_min to p_max inclusive.
struct PGrid {
  double p_min = 0.0;
  double p_max = 1.0;
  std::size_t steps = 1001;

  /// Throws InvalidParams unless 0 <= p_min < p_max <= 1 and steps >= 2.
  std::vector<double> values() const;
};

struct SweepSeries {
  PureState4 state;
  ChannelKind kind;
  Locality locality;
  std::vector<double> p_values;
  std::vector<double> c_numeric;
  std::vector<std::optional<double>> c_analytic;
};

struct ComparedSeries {
  SweepSeries intra;
  SweepSeries inter;
};

struct NonMarkovParams {
  double big_gamma = 1.0;    // Gamma
  double small_gamma = 1.0;  // gamma
  double t = 0.0;
};

/// Numeric concurrence after sending |psi><psi| through the channel.
double numeric_concurrence(const PureState4& s, ChannelKind kind, Locality loc, double p);

/// Closed-form concurrence where one exists: every intraparticle channel,
/// and interparticle amplitude damping for real amplitudes.
std::optional<double> analytic_concurrence(const PureState4& s, ChannelKind kind, Locality loc,
                                           double p);

/// Intraparticle AD sudden-death point P = 1 - (|a||d| / |b||c|)^2. Present
/// only when delta_theta = 0 (mod 2pi, within 1e-9) and 0 < |a||d| < |b||c|;
/// |a||d| = |b||c| is already separable at P = 0.
std::optional<double> esd_ad_intra(const PureState4& s);

/// Minimum and maximum of the intraparticle AD concurrence from the
/// stationary points x = sqrt(1-P) = (|a||d| / 4|b||c|) [3 cos dt -+ sqrt(9 cos^2 dt - 8)].
/// Empty unless |a||d| > 0, |b||c| > 0 and cos(delta_theta) >= 2 sqrt(2) / 3.
std::optional<RevivalExtrema> revival_extrema_ad_intra(const PureState4& s);

/// (C+ - C-) / (C+ + C-) as a function of delta_theta alone; empty outside
/// cos(delta_theta) >= 2 sqrt(2) / 3.
std::optional<double> c_tilde_of_delta_theta(double delta_theta);

/// C-tilde of a state; present when both extrema exist.
std::optional<double> c_tilde(const PureState4& s);

/// Intraparticle phase-damping sudden-death point for real amplitudes
/// (throws ComplexStateUnsupported otherwise). Empty when ad = 0, bc = 0
/// or ad = bc.
std::optional<double> esd_pd_intra(const PureState4& s);

/// Intraparticle depolarizing sudden-death point 4|ad-bc| / (1 + 4|ad-bc|);
/// empty for separable input.
std::optional<double> esd_dp_intra(const PureState4& s);

/// P(t) = exp(-Gamma t) (cos(w t / 2) + (Gamma / w) sin(w t / 2))^2 with
/// w = sqrt(2 gamma Gamma - Gamma^2). Note P(0) = 1.
/// Throws InvalidParams unless Gamma > 0, 2 gamma Gamma > Gamma^2 and t >= 0.
double nonmarkov_p(const NonMarkovParams& params);

SweepSeries sweep(const PureState4& s, ChannelKind kind, Locality loc, const PGrid& grid);

/// Shape of C(P) along a sweep. Interior minima found on the grid are
/// refined by golden-section search so isolated zeros are not missed.
/// Throws GridTooCoarse below 64 points.
TrajectoryClass classify_trajectory(const SweepSeries& series);

ComparedSeries compare_intra_inter(const PureState4& s, ChannelKind kind, const PGrid& grid);

/// Interior minimum followed by a maximum of C(P), located on a sweep and
/// refined by golden-section search on f. Empty when C(P) has no
/// fall-then-rise on the sweep.
std::optional<RevivalExtrema> numeric_extrema(const SweepSeries& series,
                                              const std::function<double(double)>& f);

/// First P where C(P) reaches zero along the sweep, refined by bisection on
/// f. Empty when the sweep never drops below the zero threshold at P < 1.
std::optional<double> numeric_esd(const SweepSeries& series,
                                  const std::function<double(double)>& f);

/// Full report for one state and channel, using closed forms where they
/// apply and the numeric path elsewhere.
RevivalReport analyze(const PureState4& s, ChannelKind kind, Locality loc,
                      const PGrid& grid = PGrid{});

}  // namespace intranoise
