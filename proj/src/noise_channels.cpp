#include "intranoise/noise_channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "intranoise/error.hpp"

namespace intranoise {

namespace {

void check_param(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << who << ": channel parameter P = " << p << " outside [0, 1]";
    throw Error(ErrorKind::ParamOutOfRange, os.str());
  }
}

CMat4 ket_bra(std::size_t i, std::size_t j, double scale) {
  CMat4 m;
  m(i, j) = scale;
  return m;
}

KrausSet local_products(const std::vector<CMat2>& local) {
  KrausSet set;
  set.ops.reserve(local.size() * local.size());
  for (const auto& first : local)
    for (const auto& second : local) set.ops.push_back(tensor2x2(first, second));
  return set;
}

}  // namespace

double KrausSet::completeness_error() const {
  CMat4 sum;
  for (const auto& m : ops) sum += adjoint(m) * m;
  return max_abs_diff(sum, CMat4::identity());
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "ad";
    case ChannelKind::PhaseDamping: return "pd";
    case ChannelKind::Depolarizing: return "dp";
  }
  return "?";
}

std::string_view to_string(Locality locality) {
  return locality == Locality::Intraparticle ? "intra" : "inter";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
  if (text == "ad") return ChannelKind::AmplitudeDamping;
  if (text == "pd") return ChannelKind::PhaseDamping;
  if (text == "dp") return ChannelKind::Depolarizing;
  return std::nullopt;
}

std::optional<Locality> parse_locality(std::string_view text) {
  if (text == "intra") return Locality::Intraparticle;
  if (text == "inter") return Locality::Interparticle;
  return std::nullopt;
}

KrausSet kraus_ad_intra(double p) {
  check_param(p, "kraus_ad_intra");
  const double keep = std::sqrt(1.0 - p);
  const double decay = std::sqrt(p);
  KrausSet set;
  set.ops.push_back(CMat4::diagonal({1.0, keep, keep, keep}));
  for (std::size_t i = 1; i < 4; ++i) set.ops.push_back(ket_bra(0, i, decay));
  return set;
}

KrausSet kraus_pd_intra(double p) {
  check_param(p, "kraus_pd_intra");
  KrausSet set;
  set.ops.push_back(CMat4::identity() * Complex(std::sqrt(1.0 - p)));
  for (std::size_t i = 0; i < 4; ++i) set.ops.push_back(ket_bra(i, i, std::sqrt(p)));
  return set;
}

CMat4 weyl_operator(int m, int n) {
  if (m < 0 || m > 3 || n < 0 || n > 3) {
    std::ostringstream os;
    os << "weyl_operator: indices (" << m << ", " << n << ") outside 0..3";
    throw Error(ErrorKind::IndexOutOfRange, os.str());
  }
  CMat4 u;
  for (int j = 0; j < 4; ++j) {
    // exp(2 pi i j m / 4) = i^(j m); use exact values for the quarter turns.
    static constexpr std::array<Complex, 4> kQuarterTurns{
        Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    u(static_cast<std::size_t>(j), static_cast<std::size_t>((j + n) % 4)) =
        kQuarterTurns[static_cast<std::size_t>((j * m) % 4)];
  }
  return u;
}

KrausSet kraus_dp_intra(double p) {
  check_param(p, "kraus_dp_intra");
  KrausSet set;
  set.ops.reserve(16);
  set.ops.push_back(weyl_operator(0, 0) * Complex(std::sqrt(1.0 - 15.0 * p / 16.0)));
  const double w = std::sqrt(p) / 4.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) set.ops.push_back(weyl_operator(i, j) * Complex(w));
  return set;
}

KrausSet kraus_ad_inter(double p) {
  check_param(p, "kraus_ad_inter");
  const CMat2 m0{1.0, 0.0, 0.0, std::sqrt(1.0 - p)};
  const CMat2 m1{0.0, std::sqrt(p), 0.0, 0.0};
  return local_products({m0, m1});
}

KrausSet kraus_pd_inter(double p) {
  check_param(p, "kraus_pd_inter");
  const double s = std::sqrt(p);
  return local_products({CMat2::identity() * Complex(std::sqrt(1.0 - p)),
                         CMat2{s, 0.0, 0.0, 0.0}, CMat2{0.0, 0.0, 0.0, s}});
}

KrausSet kraus_dp_inter(double p) {
  check_param(p, "kraus_dp_inter");
  const Complex w(std::sqrt(p / 3.0));
  return local_products({CMat2::identity() * Complex(std::sqrt(1.0 - p)), pauli_x() * w,
                         pauli_y() * w, pauli_z() * w});
}

KrausSet build_channel(const ChannelSpec& spec) {
  const bool intra = spec.locality == Locality::Intraparticle;
  switch (spec.kind) {
    case ChannelKind::AmplitudeDamping:
      return intra ? kraus_ad_intra(spec.p) : kraus_ad_inter(spec.p);
    case ChannelKind::PhaseDamping:
      return intra ? kraus_pd_intra(spec.p) : kraus_pd_inter(spec.p);
    case ChannelKind::Depolarizing:
      return intra ? kraus_dp_intra(spec.p) : kraus_dp_inter(spec.p);
  }
  throw Error(ErrorKind::InvalidParams, "build_channel: unknown channel kind");
}

DensityMatrix4 apply_channel(const DensityMatrix4& rho, const KrausSet& k) {
  CMat4 out;
  for (const auto& m : k.ops) out += m * rho.matrix() * adjoint(m);
  // Remove the rounding-level anti-Hermitian part.
  return validate_density((out + adjoint(out)) * Complex(0.5));
}

}  // namespace intranoise
