#include "intranoise/quantum_state.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "intranoise/error.hpp"

namespace intranoise {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

double reduce_delta(double x) {
  // (-2pi, 2pi]
  double r = std::fmod(x, 2.0 * kTwoPi);
  if (r > kTwoPi) r -= 2.0 * kTwoPi;
  if (r <= -kTwoPi) r += 2.0 * kTwoPi;
  return r;
}

double phase_of(Complex z) { return z == Complex{} ? 0.0 : wrap_phase(std::arg(z)); }

double norm_squared(const CVec4& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

}  // namespace

double PolarParams::delta_theta() const {
  return reduce_delta(theta_b + theta_c - theta_a - theta_d);
}

PureState4 PureState4::from_cartesian(Complex a, Complex b, Complex c, Complex d,
                                      bool normalize) {
  CVec4 amp{a, b, c, d};
  for (const auto& z : amp)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::NotNormalized, "state amplitudes must be finite");
  const double n2 = norm_squared(amp);
  if (n2 == 0.0) throw Error(ErrorKind::ZeroVector, "all four amplitudes are zero");
  if (normalize) {
    const double n = std::sqrt(n2);
    for (auto& z : amp) z /= n;
  } else if (std::abs(n2 - 1.0) > tolerance::kNormalization) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not normalized: |a|^2+|b|^2+|c|^2+|d|^2 = " << n2;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  return PureState4(amp);
}

PureState4 PureState4::from_polar(const PolarParams& p) {
  const std::array<double, 4> mags{p.mag_a, p.mag_b, p.mag_c, p.mag_d};
  const std::array<double, 4> phases{p.theta_a, p.theta_b, p.theta_c, p.theta_d};
  double n2 = 0.0;
  for (double m : mags) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw Error(ErrorKind::NotNormalized, "polar magnitudes must be finite and non-negative");
    n2 += m * m;
  }
  if (std::abs(n2 - 1.0) > tolerance::kNormalization) {
    std::ostringstream os;
    os.precision(17);
    os << "polar magnitudes are not normalized: sum of squares = " << n2;
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  CVec4 amp;
  for (std::size_t i = 0; i < 4; ++i) amp[i] = std::polar(mags[i], phases[i]);
  return PureState4(amp);
}

PolarParams PureState4::to_polar() const {
  PolarParams p;
  p.mag_a = std::abs(amp_[0]);
  p.mag_b = std::abs(amp_[1]);
  p.mag_c = std::abs(amp_[2]);
  p.mag_d = std::abs(amp_[3]);
  p.theta_a = phase_of(amp_[0]);
  p.theta_b = phase_of(amp_[1]);
  p.theta_c = phase_of(amp_[2]);
  p.theta_d = phase_of(amp_[3]);
  return p;
}

bool PureState4::is_real() const {
  for (const auto& z : amp_)
    if (z.imag() != 0.0) return false;
  return true;
}

bool PureState4::delta_theta_defined() const {
  return std::abs(amp_[0]) * std::abs(amp_[3]) > 0.0 && std::abs(amp_[1]) * std::abs(amp_[2]) > 0.0;
}

double delta_theta(const PureState4& s) { return s.to_polar().delta_theta(); }

DensityMatrix4 validate_density(const CMat4& m) {
  std::vector<ErrorKind> failures;
  std::ostringstream os;
  os.precision(17);
  os << "invalid density matrix:";

  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw Error(ErrorKind::NotHermitian, "invalid density matrix: non-finite entry");

  const double herm = hermiticity_error(m);
  if (herm > tolerance::kHermitian) {
    failures.push_back(ErrorKind::NotHermitian);
    os << " NotHermitian(max |m - m^dagger| = " << herm << ")";
  }
  const Complex tr = trace(m);
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    failures.push_back(ErrorKind::TraceNotOne);
    os << " TraceNotOne(trace = " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i)";
  }
  // PSD is judged on the Hermitian part so it can be reported alongside
  // a Hermiticity failure.
  const CMat4 hermitian_part = (m + adjoint(m)) * Complex(0.5);
  const double min_eig = eig_hermitian4(hermitian_part)[3];
  if (min_eig < -tolerance::kPsdClamp) {
    failures.push_back(ErrorKind::NotPSD);
    os << " NotPSD(min eigenvalue = " << min_eig << ")";
  }
  if (!failures.empty()) throw Error(std::move(failures), os.str());
  return DensityMatrix4(m);
}

DensityMatrix4 density_from_pure(const PureState4& s) {
  return DensityMatrix4(outer(s.amplitudes(), s.amplitudes()));
}

std::string describe(const PureState4& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "a=%.17g%+.17gi b=%.17g%+.17gi c=%.17g%+.17gi d=%.17g%+.17gi",
                s.a().real(), s.a().imag(), s.b().real(), s.b().imag(), s.c().real(),
                s.c().imag(), s.d().real(), s.d().imag());
  return buf;
}

}  // namespace intranoise
