#include "intranoise/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "intranoise/concurrence.hpp"
#include "intranoise/error.hpp"

namespace intranoise {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// cos of the widest delta_theta that still has real stationary points.
const double kCosAdmissible = 2.0 * std::sqrt(2.0) / 3.0;

bool delta_theta_is_zero(double dt) {
  const double r = std::remainder(dt, kTwoPi);
  return std::abs(r) <= 1e-9;
}

double clamp_unit(double p) { return std::clamp(p, 0.0, 1.0); }

// Argument of the minimum of f on [lo, hi], assuming a single interior dip.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tolerance::kSearchP) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

struct FallThenRise {
  std::size_t minimum;  // grid index of the dip
};

// First grid index j that sits below an earlier point and below a later
// point by more than the rise threshold, walked down to its local minimum.
std::optional<FallThenRise> find_fall_then_rise(const std::vector<double>& c) {
  const std::size_t n = c.size();
  if (n < 3) return std::nullopt;
  std::vector<double> suffix_max(n, 0.0);
  for (std::size_t k = n - 1; k-- > 0;) suffix_max[k] = std::max(suffix_max[k + 1], c[k + 1]);
  double prefix_max = c[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (prefix_max - c[j] > tolerance::kZeroConcurrence &&
        suffix_max[j] - c[j] > tolerance::kRiseConcurrence) {
      std::size_t m = j;
      while (m + 1 < n && c[m + 1] <= c[m]) ++m;
      return FallThenRise{m};
    }
    prefix_max = std::max(prefix_max, c[j]);
  }
  return std::nullopt;
}

std::function<double(double)> numeric_path(const SweepSeries& series) {
  return [state = series.state, kind = series.kind, loc = series.locality](double p) {
    return numeric_concurrence(state, kind, loc, clamp_unit(p));
  };
}

Extremum refine_min(const std::function<double(double)>& f, const std::vector<double>& p,
                    std::size_t idx) {
  const double lo = p[idx == 0 ? 0 : idx - 1];
  const double hi = p[std::min(idx + 1, p.size() - 1)];
  const double at = golden_section_min(f, lo, hi);
  return {at, f(at)};
}

Extremum refine_max(const std::function<double(double)>& f, const std::vector<double>& p,
                    std::size_t idx) {
  const double lo = p[idx == 0 ? 0 : idx - 1];
  const double hi = p[std::min(idx + 1, p.size() - 1)];
  const double at = golden_section_min([&](double x) { return -f(x); }, lo, hi);
  return {at, f(at)};
}

}  // namespace

std::string_view to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::MonotonicDecay: return "MonotonicDecay";
    case TrajectoryClass::ESDThenRevival: return "ESDThenRevival";
    case TrajectoryClass::DipThenRevival: return "DipThenRevival";
    case TrajectoryClass::CreationThenDecay: return "CreationThenDecay";
    case TrajectoryClass::ESDNoRevival: return "ESDNoRevival";
    case TrajectoryClass::IdenticallyZero: return "IdenticallyZero";
  }
  return "?";
}

std::vector<double> PGrid::values() const {
  if (!(p_min >= 0.0 && p_max <= 1.0 && p_min < p_max) || steps < 2) {
    std::ostringstream os;
    os << "invalid P grid: [" << p_min << ", " << p_max << "] with " << steps << " steps";
    throw Error(ErrorKind::InvalidParams, os.str());
  }
  std::vector<double> out(steps);
  const double span = p_max - p_min;
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = p_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = p_max;
  return out;
}

double numeric_concurrence(const PureState4& s, ChannelKind kind, Locality loc, double p) {
  const auto rho = apply_channel(density_from_pure(s), build_channel({kind, loc, p}));
  return concurrence_numeric(rho);
}

std::optional<double> analytic_concurrence(const PureState4& s, ChannelKind kind, Locality loc,
                                           double p) {
  if (loc == Locality::Intraparticle) {
    switch (kind) {
      case ChannelKind::AmplitudeDamping: return concurrence_ad_intra(s, p);
      case ChannelKind::PhaseDamping: return concurrence_pd_intra(s, p);
      case ChannelKind::Depolarizing: return concurrence_dp_intra(s, p);
    }
  }
  if (kind == ChannelKind::AmplitudeDamping && s.is_real()) return concurrence_ad_inter(s, p);
  return std::nullopt;
}

std::optional<double> esd_ad_intra(const PureState4& s) {
  const auto polar = s.to_polar();
  const double bc = polar.mag_b * polar.mag_c;
  const double ad = polar.mag_a * polar.mag_d;
  if (!(bc > 0.0) || !(ad > 0.0) || ad >= bc) return std::nullopt;
  if (!delta_theta_is_zero(polar.delta_theta())) return std::nullopt;
  const double ratio = ad / bc;
  return 1.0 - ratio * ratio;
}

std::optional<RevivalExtrema> revival_extrema_ad_intra(const PureState4& s) {
  const auto polar = s.to_polar();
  const double bc = polar.mag_b * polar.mag_c;
  const double ad = polar.mag_a * polar.mag_d;
  if (!(bc > 0.0) || !(ad > 0.0)) return std::nullopt;
  const double cos_dt = std::cos(polar.delta_theta());
  const double disc = 9.0 * cos_dt * cos_dt - 8.0;
  if (cos_dt < 0.0 || disc < -1e-12) return std::nullopt;
  const double root = std::sqrt(std::max(disc, 0.0));

  auto extremum = [&](double branch) -> std::optional<Extremum> {
    const double x = ad / (4.0 * bc) * branch;  // sqrt(1 - P)
    const double p = 1.0 - x * x;
    if (p < -1e-12 || p > 1.0 + 1e-12) return std::nullopt;
    const double c = ad * ad / (2.0 * std::sqrt(3.0) * bc) *
                     std::sqrt(std::max(0.0, 1.0 - branch * branch / 16.0)) * branch;
    return Extremum{clamp_unit(p), c};
  };

  RevivalExtrema out;
  out.minimum = extremum(3.0 * cos_dt + root);
  out.maximum = extremum(3.0 * cos_dt - root);
  return out;
}

std::optional<double> c_tilde_of_delta_theta(double delta_theta) {
  const double cos_dt = std::cos(delta_theta);
  const double disc = 9.0 * cos_dt * cos_dt - 8.0;
  if (cos_dt < 0.0 || disc < -1e-12) return std::nullopt;
  const double root = std::sqrt(std::max(disc, 0.0));
  auto shape = [](double branch) {
    return std::sqrt(std::max(0.0, 1.0 - branch * branch / 16.0)) * branch;
  };
  const double lo = shape(3.0 * cos_dt + root);
  const double hi = shape(3.0 * cos_dt - root);
  if (hi + lo <= 0.0) return std::nullopt;
  return (hi - lo) / (hi + lo);
}

std::optional<double> c_tilde(const PureState4& s) {
  const auto ext = revival_extrema_ad_intra(s);
  if (!ext || !ext->minimum || !ext->maximum) return std::nullopt;
  const double sum = ext->maximum->c + ext->minimum->c;
  if (!(sum > 0.0)) return std::nullopt;
  return (ext->maximum->c - ext->minimum->c) / sum;
}

std::optional<double> esd_pd_intra(const PureState4& s) {
  if (!s.is_real())
    throw Error(ErrorKind::ComplexStateUnsupported,
                "esd_pd_intra: closed form needs real amplitudes");
  const double e = s.a().real() * s.d().real();
  const double f = s.b().real() * s.c().real();
  if (e == 0.0 || f == 0.0 || e == f) return std::nullopt;
  // Zero of sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4) with the phase-damping
  // eigenvalues reduces to A P^2 - B P + 4D = 0.
  const double diff2 = (e - f) * (e - f);
  const double h = std::abs(e) * std::abs(f) - e * f;
  const double sum = std::abs(e) + std::abs(f);
  const double quad = diff2 + 6.0 * h - sum * sum;
  const double lin = 4.0 * diff2 + 8.0 * h;
  const double disc = lin * lin - 16.0 * quad * diff2;
  const double p = 8.0 * diff2 / (lin + std::sqrt(std::max(disc, 0.0)));
  if (!(p > 0.0 && p < 1.0)) return std::nullopt;
  return p;
}

std::optional<double> esd_dp_intra(const PureState4& s) {
  const double x = std::abs(s.a() * s.d() - s.b() * s.c());
  if (x == 0.0) return std::nullopt;
  return 4.0 * x / (1.0 + 4.0 * x);
}

double nonmarkov_p(const NonMarkovParams& params) {
  const double g = params.big_gamma;
  const double w2 = 2.0 * params.small_gamma * g - g * g;
  if (!(g > 0.0) || !(w2 > 0.0) || !(params.t >= 0.0) || !std::isfinite(params.t)) {
    std::ostringstream os;
    os << "nonmarkov_p: need Gamma > 0, 2 gamma Gamma > Gamma^2, t >= 0 (Gamma=" << g
       << ", gamma=" << params.small_gamma << ", t=" << params.t << ")";
    throw Error(ErrorKind::InvalidParams, os.str());
  }
  const double w = std::sqrt(w2);
  const double half = w * params.t / 2.0;
  const double amp = std::cos(half) + (g / w) * std::sin(half);
  const double p = std::exp(-g * params.t) * amp * amp;
  if (p > 1.0 && p - 1.0 < 1e-12) return 1.0;
  return p;
}

SweepSeries sweep(const PureState4& s, ChannelKind kind, Locality loc, const PGrid& grid) {
  SweepSeries out{s, kind, loc, grid.values(), {}, {}};
  out.c_numeric.reserve(out.p_values.size());
  out.c_analytic.reserve(out.p_values.size());
  for (double p : out.p_values) {
    out.c_numeric.push_back(numeric_concurrence(s, kind, loc, p));
    out.c_analytic.push_back(analytic_concurrence(s, kind, loc, p));
  }
  return out;
}

TrajectoryClass classify_trajectory(const SweepSeries& series) {
  const auto& c = series.c_numeric;
  const auto& p = series.p_values;
  if (c.size() < tolerance::kMinClassifyPoints || p.size() != c.size()) {
    std::ostringstream os;
    os << "classify_trajectory: need at least " << tolerance::kMinClassifyPoints
       << " grid points, got " << c.size();
    throw Error(ErrorKind::GridTooCoarse, os.str());
  }
  const double peak = *std::max_element(c.begin(), c.end());
  if (peak < tolerance::kZeroConcurrence) return TrajectoryClass::IdenticallyZero;
  if (c.front() < tolerance::kZeroConcurrence && peak > tolerance::kRiseConcurrence)
    return TrajectoryClass::CreationThenDecay;

  if (const auto dip = find_fall_then_rise(c)) {
    const auto refined = refine_min(numeric_path(series), p, dip->minimum);
    return refined.c < tolerance::kZeroConcurrence ? TrajectoryClass::ESDThenRevival
                                                   : TrajectoryClass::DipThenRevival;
  }
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] < tolerance::kZeroConcurrence && p[i] < 1.0) return TrajectoryClass::ESDNoRevival;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] > c.front() + tolerance::kRiseConcurrence) return TrajectoryClass::CreationThenDecay;
  return TrajectoryClass::MonotonicDecay;
}

ComparedSeries compare_intra_inter(const PureState4& s, ChannelKind kind, const PGrid& grid) {
  return {sweep(s, kind, Locality::Intraparticle, grid),
          sweep(s, kind, Locality::Interparticle, grid)};
}

std::optional<RevivalExtrema> numeric_extrema(const SweepSeries& series,
                                              const std::function<double(double)>& f) {
  const auto dip = find_fall_then_rise(series.c_numeric);
  if (!dip) return std::nullopt;
  const auto& c = series.c_numeric;
  std::size_t top = dip->minimum;
  while (top + 1 < c.size() && c[top + 1] >= c[top]) ++top;
  RevivalExtrema out;
  out.minimum = refine_min(f, series.p_values, dip->minimum);
  out.maximum = refine_max(f, series.p_values, top);
  return out;
}

std::optional<double> numeric_esd(const SweepSeries& series,
                                  const std::function<double(double)>& f) {
  const auto& c = series.c_numeric;
  const auto& p = series.p_values;
  if (c.empty() || c.front() < tolerance::kZeroConcurrence) return std::nullopt;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] >= tolerance::kZeroConcurrence) continue;
    if (!(p[i] < 1.0)) return std::nullopt;
    double lo = p[i - 1], hi = p[i];
    while (hi - lo > tolerance::kSearchP) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < tolerance::kZeroConcurrence ? hi : lo) = mid;
    }
    return hi;
  }
  return std::nullopt;
}

RevivalReport analyze(const PureState4& s, ChannelKind kind, Locality loc, const PGrid& grid) {
  RevivalReport report;
  report.kind = kind;
  report.locality = loc;
  report.delta_theta = delta_theta(s);
  report.delta_theta_defined = s.delta_theta_defined();

  const auto series = sweep(s, kind, loc, grid);
  const auto f = numeric_path(series);
  report.classification = classify_trajectory(series);

  const bool intra = loc == Locality::Intraparticle;
  if (intra && kind == ChannelKind::AmplitudeDamping) {
    report.esd_p = esd_ad_intra(s);
  } else if (intra && kind == ChannelKind::Depolarizing) {
    report.esd_p = esd_dp_intra(s);
  } else if (intra && kind == ChannelKind::PhaseDamping && s.is_real()) {
    report.esd_p = esd_pd_intra(s);
  } else {
    report.esd_p = numeric_esd(series, f);
  }

  std::optional<RevivalExtrema> extrema;
  if (intra && kind == ChannelKind::AmplitudeDamping && s.delta_theta_defined())
    extrema = revival_extrema_ad_intra(s);
  else
    extrema = numeric_extrema(series, f);
  if (extrema) {
    if (extrema->minimum) {
      report.p_minus = extrema->minimum->p;
      report.c_minus = extrema->minimum->c;
    }
    if (extrema->maximum) {
      report.p_plus = extrema->maximum->p;
      report.c_plus = extrema->maximum->c;
    }
    if (report.c_minus && report.c_plus && *report.c_minus + *report.c_plus > 0.0)
      report.c_tilde = (*report.c_plus - *report.c_minus) / (*report.c_plus + *report.c_minus);
  }
  return report;
}

}  // namespace intranoise
