#pragma once

#include <array>
#include <string>

#include "intranoise/matrix_core.hpp"

namespace intranoise {

namespace tolerance {
inline constexpr double kNormalization = 1e-10;
inline constexpr double kTrace = 1e-10;
}  // namespace tolerance

/// Magnitudes and phases of the four amplitudes; angles in radians.
struct PolarParams {
  double mag_a = 0.0, mag_b = 0.0, mag_c = 0.0, mag_d = 0.0;
  double theta_a = 0.0, theta_b = 0.0, theta_c = 0.0, theta_d = 0.0;

  /// theta_b + theta_c - theta_a - theta_d reduced to (-2pi, 2pi].
  double delta_theta() const;
};

/// Pure state a|a1b1> + b|a1b2> + c|a2b1> + d|a2b2>, unit norm.
class PureState4 {
 public:
  /// Throws ZeroVector if all amplitudes vanish, NotNormalized if
  /// normalize is false and |norm^2 - 1| > 1e-10.
  static PureState4 from_cartesian(Complex a, Complex b, Complex c, Complex d,
                                   bool normalize = false);
  static PureState4 from_polar(const PolarParams& p);

  Complex a() const { return amp_[0]; }
  Complex b() const { return amp_[1]; }
  Complex c() const { return amp_[2]; }
  Complex d() const { return amp_[3]; }
  const CVec4& amplitudes() const { return amp_; }

  /// Phase of a zero amplitude is 0; otherwise in [0, 2pi).
  PolarParams to_polar() const;

  /// True when every amplitude has zero imaginary part.
  bool is_real() const;

  /// False when |a||d| = 0 or |b||c| = 0; then one of the two products in
  /// delta_theta carries a conventional phase rather than a physical one.
  bool delta_theta_defined() const;

 private:
  explicit PureState4(const CVec4& amp) : amp_(amp) {}
  CVec4 amp_;
};

inline PureState4 state_from_cartesian(Complex a, Complex b, Complex c, Complex d,
                                       bool normalize = false) {
  return PureState4::from_cartesian(a, b, c, d, normalize);
}
inline PureState4 state_from_polar(const PolarParams& p) { return PureState4::from_polar(p); }

double delta_theta(const PureState4& s);

/// Unit-trace, Hermitian, PSD 4x4 matrix. Only constructible through
/// validation or from a pure state.
class DensityMatrix4 {
 public:
  const CMat4& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend DensityMatrix4 validate_density(const CMat4& m);
  friend DensityMatrix4 density_from_pure(const PureState4& s);

 private:
  explicit DensityMatrix4(const CMat4& m) : m_(m) {}
  CMat4 m_;
};

/// Throws Error whose kinds() lists every violated invariant among
/// NotHermitian (1e-10), TraceNotOne (1e-10), NotPSD (min eigenvalue < -1e-9).
DensityMatrix4 validate_density(const CMat4& m);

/// |psi><psi|
DensityMatrix4 density_from_pure(const PureState4& s);

/// Human-readable amplitude list at full precision, for diagnostics.
std::string describe(const PureState4& s);

}  // namespace intranoise
