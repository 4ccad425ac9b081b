#include "intranoise/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "intranoise/concurrence.hpp"
#include "intranoise/error.hpp"

namespace intranoise::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view field = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                                : comma - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size() ||
        !std::isfinite(value))
      throw ConfigError("bad number '" + std::string(field) + "' in state");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json json_number(std::optional<double> x) {
  if (!x) return nullptr;
  return std::stod(format_number(*x));
}

void check_grid(const PGrid& grid) {
  try {
    (void)grid.values();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ChannelKind require_channel(const RunConfig& cfg) {
  if (!cfg.channel) throw ConfigError("--channel is required");
  return *cfg.channel;
}

Locality require_locality(const RunConfig& cfg) {
  if (!cfg.locality) throw ConfigError("--locality is required");
  return *cfg.locality;
}

bool is_state_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPSD:
    case ErrorKind::TraceNotOne:
    case ErrorKind::ZeroVector:
    case ErrorKind::NotNormalized:
    case ErrorKind::ComplexStateUnsupported:
      return true;
    default:
      return false;
  }
}

// Runs body on a buffer and copies it to out only on success, so a failed
// command never leaves a truncated report behind.
int guarded(std::ostream& out, std::ostream& err, const std::function<int(std::ostream&)>& body) {
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = body(buffer);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    if (is_state_kind(e.kind())) return kExitState;
    if (e.kind() == ErrorKind::NoConvergence) return kExitTolerance;
    return kExitConfig;
  }
  out << buffer.str();
  return code;
}

struct ChannelCase {
  ChannelKind kind;
  Locality locality;
};

// Real amplitudes for AD inter (closed form is real-only), alternating real
// and complex for PD and DP intra, complex everywhere else.
enum class Draw { Real, Complex, Alternate };

Draw draw_mode(const ChannelCase& c) {
  if (c.locality == Locality::Interparticle && c.kind == ChannelKind::AmplitudeDamping)
    return Draw::Real;
  if (c.locality == Locality::Intraparticle && c.kind != ChannelKind::AmplitudeDamping)
    return Draw::Alternate;
  return Draw::Complex;
}

std::string_view draw_label(Draw d) {
  switch (d) {
    case Draw::Real: return "real";
    case Draw::Complex: return "complex";
    case Draw::Alternate: return "real+complex";
  }
  return "?";
}

PureState4 random_state(CounterRng& rng, bool complex_amplitudes) {
  std::array<double, 8> g{};
  for (auto& x : g) x = rng.normal();
  auto amp = [&](std::size_t i) {
    return Complex(g[2 * i], complex_amplitudes ? g[2 * i + 1] : 0.0);
  };
  return PureState4::from_cartesian(amp(0), amp(1), amp(2), amp(3), true);
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::uint64_t CounterRng::next_u64() {
  return splitmix(seed_ + 0x9E3779B97F4A7C15ULL * counter_++);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

PureState4 parse_state(std::string_view text, bool normalize) {
  constexpr std::string_view kPolar = "polar:";
  if (text.substr(0, kPolar.size()) == kPolar) {
    const auto v = parse_numbers(text.substr(kPolar.size()));
    if (v.size() != 8) throw ConfigError("polar state needs 8 numbers: |a|,th_a,...,|d|,th_d");
    for (std::size_t i = 0; i < 8; i += 2)
      if (v[i] < 0.0) throw ConfigError("polar state magnitudes must be >= 0");
    std::array<Complex, 4> amp;
    for (std::size_t i = 0; i < 4; ++i) amp[i] = std::polar(v[2 * i], v[2 * i + 1] * kDeg);
    if (normalize) return PureState4::from_cartesian(amp[0], amp[1], amp[2], amp[3], true);
    PolarParams p{v[0], v[2], v[4], v[6], v[1] * kDeg, v[3] * kDeg, v[5] * kDeg, v[7] * kDeg};
    return PureState4::from_polar(p);
  }
  const auto v = parse_numbers(text);
  if (v.size() == 4) return PureState4::from_cartesian(v[0], v[1], v[2], v[3], normalize);
  if (v.size() == 8)
    return PureState4::from_cartesian({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]},
                                      normalize);
  throw ConfigError("state needs 4 real or 8 re,im numbers, got " + std::to_string(v.size()));
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto kind = require_channel(cfg);
    const auto loc = require_locality(cfg);
    check_grid(cfg.grid);
    const auto state = parse_state(cfg.state, cfg.normalize);
    const auto series = sweep(state, kind, loc, cfg.grid);
    const std::size_t n = series.p_values.size();
    if (cfg.format == Format::Csv) {
      os << "P,C_numeric,C_analytic\n";
      for (std::size_t i = 0; i < n; ++i) {
        os << format_number(series.p_values[i]) << ',' << format_number(series.c_numeric[i])
           << ',';
        if (series.c_analytic[i]) os << format_number(*series.c_analytic[i]);
        os << '\n';
      }
    } else {
      Json rows = Json::array();
      for (std::size_t i = 0; i < n; ++i)
        rows.push_back({{"P", json_number(series.p_values[i])},
                        {"C_numeric", json_number(series.c_numeric[i])},
                        {"C_analytic", json_number(series.c_analytic[i])}});
      Json doc{{"channel", to_string(kind)}, {"locality", to_string(loc)}, {"rows", rows}};
      os << doc.dump(2) << '\n';
    }
    return kExitOk;
  });
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto kind = require_channel(cfg);
    const auto loc = cfg.locality.value_or(Locality::Intraparticle);
    check_grid(cfg.grid);
    const auto state = parse_state(cfg.state, cfg.normalize);
    const auto r = analyze(state, kind, loc, cfg.grid);
    std::optional<double> dt, dt_deg;
    if (r.delta_theta_defined) {
      dt = r.delta_theta;
      dt_deg = r.delta_theta / kDeg;
    }
    Json doc{{"channel", to_string(kind)},
             {"locality", to_string(loc)},
             {"esd_p", json_number(r.esd_p)},
             {"p_minus", json_number(r.p_minus)},
             {"c_minus", json_number(r.c_minus)},
             {"p_plus", json_number(r.p_plus)},
             {"c_plus", json_number(r.c_plus)},
             {"c_tilde", json_number(r.c_tilde)},
             {"classification", to_string(r.classification)},
             {"delta_theta", json_number(dt)},
             {"delta_theta_degrees", json_number(dt_deg)}};
    os << doc.dump(2) << '\n';
    return kExitOk;
  });
}

int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    const auto kind = require_channel(cfg);
    check_grid(cfg.grid);
    const auto state = parse_state(cfg.state, cfg.normalize);
    const auto both = compare_intra_inter(state, kind, cfg.grid);
    const std::size_t n = both.intra.p_values.size();
    if (cfg.format == Format::Csv) {
      os << "P,C_intra,C_inter\n";
      for (std::size_t i = 0; i < n; ++i)
        os << format_number(both.intra.p_values[i]) << ','
           << format_number(both.intra.c_numeric[i]) << ','
           << format_number(both.inter.c_numeric[i]) << '\n';
    } else {
      Json rows = Json::array();
      for (std::size_t i = 0; i < n; ++i)
        rows.push_back({{"P", json_number(both.intra.p_values[i])},
                        {"C_intra", json_number(both.intra.c_numeric[i])},
                        {"C_inter", json_number(both.inter.c_numeric[i])}});
      Json doc{{"channel", to_string(kind)}, {"rows", rows}};
      os << doc.dump(2) << '\n';
    }
    return kExitOk;
  });
}

int run_nonmarkov(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max))
      throw ConfigError("--t-max must be a positive number");
    if (cfg.grid.steps < 2) throw ConfigError("--steps must be >= 2");
    NonMarkovParams params{cfg.big_gamma, cfg.small_gamma, 0.0};
    try {
      (void)nonmarkov_p(params);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    const auto state = parse_state(cfg.state, cfg.normalize);
    const std::size_t n = cfg.grid.steps;
    std::vector<double> t(n), p(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = cfg.t_max * static_cast<double>(i) / static_cast<double>(n - 1);
      params.t = t[i];
      p[i] = std::clamp(nonmarkov_p(params), 0.0, 1.0);
      c[i] = numeric_concurrence(state, ChannelKind::AmplitudeDamping, Locality::Interparticle,
                                 p[i]);
    }
    if (cfg.format == Format::Csv) {
      os << "t,P,C_inter_numeric\n";
      for (std::size_t i = 0; i < n; ++i)
        os << format_number(t[i]) << ',' << format_number(p[i]) << ',' << format_number(c[i])
           << '\n';
    } else {
      Json rows = Json::array();
      for (std::size_t i = 0; i < n; ++i)
        rows.push_back({{"t", json_number(t[i])},
                        {"P", json_number(p[i])},
                        {"C_inter_numeric", json_number(c[i])}});
      Json doc{{"big_gamma", json_number(cfg.big_gamma)},
               {"small_gamma", json_number(cfg.small_gamma)},
               {"rows", rows}};
      os << doc.dump(2) << '\n';
    }
    return kExitOk;
  });
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&](std::ostream& os) {
    if (cfg.trials == 0) throw ConfigError("--trials must be >= 1");

    constexpr double kCompleteness = 1e-12;
    constexpr double kTracePreservation = 1e-12;
    constexpr double kRank = 1e-9;

    const std::array<ChannelCase, 6> all{{
        {ChannelKind::AmplitudeDamping, Locality::Intraparticle},
        {ChannelKind::PhaseDamping, Locality::Intraparticle},
        {ChannelKind::Depolarizing, Locality::Intraparticle},
        {ChannelKind::AmplitudeDamping, Locality::Interparticle},
        {ChannelKind::PhaseDamping, Locality::Interparticle},
        {ChannelKind::Depolarizing, Locality::Interparticle},
    }};

    double worst_completeness = 0.0, worst_trace = 0.0, lowest_eigenvalue = 1.0;
    std::optional<double> worst_rank;
    bool ok = true;
    os << "verify seed=" << cfg.seed << " trials=" << cfg.trials << '\n';

    for (std::size_t ci = 0; ci < all.size(); ++ci) {
      const auto& cc = all[ci];
      if (cfg.channel && *cfg.channel != cc.kind) continue;
      if (cfg.locality && *cfg.locality != cc.locality) continue;
      // One stream per channel, so filtering does not change the samples.
      CounterRng rng(splitmix(cfg.seed ^ (0xA5A5A5A5ULL * (ci + 1))));
      const Draw mode = draw_mode(cc);
      const double tol = (cc.kind == ChannelKind::AmplitudeDamping &&
                          cc.locality == Locality::Intraparticle)
                             ? 1e-10
                             : 1e-8;
      std::optional<double> worst_dev;
      std::string failure;
      for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        const bool complex_amp =
            mode == Draw::Complex || (mode == Draw::Alternate && trial % 2 == 1);
        const auto state = random_state(rng, complex_amp);
        const double p = rng.uniform();
        const auto channel = build_channel({cc.kind, cc.locality, p});
        const auto rho = apply_channel(density_from_pure(state), channel);

        auto note = [&](const std::string& what) {
          if (failure.empty())
            failure = what + " at P=" + full(p) + " for state " + describe(state);
        };

        const double completeness = channel.completeness_error();
        const double trace_err = std::abs(trace(rho.matrix()) - Complex(1.0));
        const auto eig = eig_hermitian4(rho.matrix());
        worst_completeness = std::max(worst_completeness, completeness);
        worst_trace = std::max(worst_trace, trace_err);
        lowest_eigenvalue = std::min(lowest_eigenvalue, eig[3]);
        if (completeness > kCompleteness) note("completeness " + full(completeness));
        if (trace_err > kTracePreservation) note("trace error " + full(trace_err));
        if (eig[3] < -tolerance::kPsdClamp) note("negative eigenvalue " + full(eig[3]));

        if (cc.kind == ChannelKind::AmplitudeDamping && cc.locality == Locality::Intraparticle) {
          const double a2 = std::norm(state.a());
          const double gap = std::sqrt(std::max(0.0, 0.25 - p * (1.0 - p) * (1.0 - a2) * (1.0 - a2)));
          const double rank_err = std::max({std::abs(eig[0] - (0.5 + gap)),
                                            std::abs(eig[1] - (0.5 - gap)), std::abs(eig[2]),
                                            std::abs(eig[3])});
          worst_rank = std::max(worst_rank.value_or(0.0), rank_err);
          if (rank_err > kRank) note("rank-2 spectrum error " + full(rank_err));
        }

        if (const auto analytic = analytic_concurrence(state, cc.kind, cc.locality, p)) {
          const double dev = std::abs(*analytic - concurrence_numeric(rho));
          worst_dev = std::max(worst_dev.value_or(0.0), dev);
          if (dev > tol) note("deviation " + full(dev));
        }
      }
      os << to_string(cc.kind) << ' ' << to_string(cc.locality) << ' ' << draw_label(mode)
         << " max_deviation=" << (worst_dev ? format_number(*worst_dev) : "n/a")
         << " tolerance=" << format_number(tol) << ' ' << (failure.empty() ? "ok" : "FAIL")
         << '\n';
      if (!failure.empty()) {
        ok = false;
        os << "  " << failure << '\n';
      }
    }
    os << "max_completeness_error=" << format_number(worst_completeness) << '\n'
       << "max_trace_error=" << format_number(worst_trace) << '\n'
       << "min_output_eigenvalue=" << format_number(lowest_eigenvalue) << '\n'
       << "ad_intra_rank2_max_error=" << (worst_rank ? format_number(*worst_rank) : "n/a")
       << '\n'
       << "status=" << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kExitOk : kExitTolerance;
  });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Sweep: return run_sweep(cfg, out, err);
    case Command::Analyze: return run_analyze(cfg, out, err);
    case Command::Compare: return run_compare(cfg, out, err);
    case Command::NonMarkov: return run_nonmarkov(cfg, out, err);
    case Command::Verify: return run_verify(cfg, out, err);
  }
  return kExitConfig;
}

}  // namespace intranoise::cli
