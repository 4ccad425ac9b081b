#pragma once

// Reference computations used only by the tests. None of these share code
// with the library: eigenvalues come from the characteristic polynomial in
// long double, channels are written out entry by entry.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "intranoise/matrix_core.hpp"
#include "intranoise/quantum_state.hpp"

namespace oracle {

using LComplex = std::complex<long double>;
using LMat = std::array<std::array<LComplex, 4>, 4>;

inline LMat widen(const intranoise::CMat4& m) {
  LMat out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = LComplex(m(i, j).real(), m(i, j).imag());
  return out;
}

inline LMat mul(const LMat& a, const LMat& b) {
  LMat out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Faddeev-LeVerrier: coefficients c[0..4] of det(x I - A) = sum c[k] x^k.
inline std::array<LComplex, 5> char_poly(const LMat& a) {
  std::array<LComplex, 5> c{};
  c[4] = 1;
  LMat m{};
  for (int k = 1; k <= 4; ++k) {
    LMat am = mul(a, m);
    for (std::size_t i = 0; i < 4; ++i) am[i][i] += c[static_cast<std::size_t>(4 - k + 1)];
    m = am;
    const LMat next = mul(a, m);
    LComplex tr = 0;
    for (std::size_t i = 0; i < 4; ++i) tr += next[i][i];
    c[static_cast<std::size_t>(4 - k)] = -tr / static_cast<long double>(k);
  }
  return c;
}

// Durand-Kerner on a monic quartic.
inline std::array<LComplex, 4> quartic_roots(const std::array<LComplex, 5>& c) {
  auto poly = [&](LComplex x) { return (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]; };
  std::array<LComplex, 4> z;
  const LComplex seed(0.4L, 0.9L);
  z[0] = 1;
  for (std::size_t i = 1; i < 4; ++i) z[i] = z[i - 1] * seed;
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      LComplex den = 1;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) den *= z[i] - z[j];
      const LComplex step = poly(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-30L) break;
  }
  return z;
}

// Eigenvalues (real parts), descending.
inline std::array<double, 4> eigenvalues(const intranoise::CMat4& m) {
  const auto roots = quartic_roots(char_poly(widen(m)));
  std::array<double, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<double>(roots[i].real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Wootters concurrence from the characteristic polynomial of
// R = rho (sy x sy) rho* (sy x sy), with sy x sy written out by hand.
// Accurate when R has well separated eigenvalues (full-rank rho).
inline double concurrence(const intranoise::CMat4& rho) {
  LMat r = widen(rho);
  LMat flip{};
  flip[0][3] = -1;
  flip[1][2] = 1;
  flip[2][1] = 1;
  flip[3][0] = -1;
  LMat conj{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) conj[i][j] = std::conj(r[i][j]);
  const LMat big_r = mul(mul(mul(r, flip), conj), flip);
  const auto roots = quartic_roots(char_poly(big_r));
  std::array<long double, 4> s;
  for (std::size_t i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(roots[i].real(), 0.0L));
  std::sort(s.begin(), s.end(), std::greater<>());
  return static_cast<double>(std::max(0.0L, s[0] - s[1] - s[2] - s[3]));
}

// Channel outputs for real amplitudes, entry by entry.
inline intranoise::CMat4 pd_intra_output(const std::array<double, 4>& v, double p) {
  intranoise::CMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = v[i] * v[j] * (i == j ? 1.0 : 1.0 - p);
  return m;
}

inline intranoise::CMat4 pd_inter_output(const std::array<double, 4>& v, double p) {
  intranoise::CMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      // one factor (1-P) for each qubit whose index differs
      const int differ = ((i >> 1) != (j >> 1)) + ((i & 1) != (j & 1));
      m(i, j) = v[i] * v[j] * std::pow(1.0 - p, differ);
    }
  return m;
}

inline intranoise::CMat4 dp_intra_output(const std::array<double, 4>& v, double p) {
  intranoise::CMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      m(i, j) = v[i] * v[j] * (1.0 - p) + (i == j ? p / 4.0 : 0.0);
  return m;
}

// Amplitude damping into |0>: |psi> keeps a and loses sqrt(1-P) elsewhere,
// the lost weight lands on |0><0|.
inline intranoise::CMat4 ad_intra_output(const intranoise::CVec4& v, double p) {
  const double keep = std::sqrt(1.0 - p);
  const intranoise::CVec4 w{v[0], v[1] * keep, v[2] * keep, v[3] * keep};
  intranoise::CMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = w[i] * std::conj(w[j]);
  m(0, 0) += p * (1.0 - std::norm(v[0]));
  return m;
}

// C^2 = S - T with the S printed in the main text, whose last bracket
// reads P + (1-P)|a|^2.
inline double ad_intra_main_text(const intranoise::PureState4& s, double p) {
  const auto a = s.a(), b = s.b(), c = s.c(), d = s.d();
  const double q = 1.0 - p;
  const double cross = 2.0 * (a * d * std::conj(b * c)).real();
  const double big_s = 4.0 * std::norm(b) * std::norm(c) * q * q - 4.0 * std::pow(q, 1.5) * cross +
                       2.0 * std::norm(d) * q * (p + q * std::norm(a));
  const double big_t = 2.0 * p * q * (1.0 - std::norm(a)) * std::norm(d);
  return std::sqrt(std::max(0.0, big_s - big_t));
}

// First sign change of f from positive to (numerically) zero on [lo, hi].
inline double bisect_zero(const std::function<double(double)>& f, double lo, double hi,
                          double zero = 1e-12) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= zero ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

struct DenseExtremum {
  double p = 0.0;
  double c = 0.0;
};

// Extremum of f on a dense grid, polished by a parabola through the best
// point and its neighbours. sign = +1 for a maximum, -1 for a minimum.
inline DenseExtremum dense_extremum(const std::function<double(double)>& f, double lo, double hi,
                                    int sign, std::size_t n = 200001) {
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::size_t best = 0;
  double best_v = sign * f(lo);
  for (std::size_t i = 1; i < n; ++i) {
    const double v = sign * f(lo + h * static_cast<double>(i));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double x = lo + h * static_cast<double>(best);
  if (best > 0 && best + 1 < n) {
    const double y0 = f(x - h), y1 = f(x), y2 = f(x + h);
    const double den = y0 - 2.0 * y1 + y2;
    if (den != 0.0) x -= 0.5 * h * (y2 - y0) / den;
  }
  return {x, f(x)};
}

inline intranoise::PureState4 random_state(std::mt19937_64& gen, bool complex_amp) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<intranoise::Complex, 4> v;
  for (auto& x : v) {
    const double re = n(gen);
    const double im = n(gen);
    x = {re, complex_amp ? im : 0.0};
  }
  return intranoise::PureState4::from_cartesian(v[0], v[1], v[2], v[3], true);
}

inline intranoise::CMat4 random_hermitian(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  intranoise::CMat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    m(i, i) = n(gen);
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double re = n(gen);
      const double im = n(gen);
      m(i, j) = {re, im};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// G G^dagger / tr, full rank with probability one.
inline intranoise::CMat4 random_density(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  intranoise::CMat4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double re = n(gen);
      const double im = n(gen);
      g(i, j) = {re, im};
    }
  intranoise::CMat4 m = g * adjoint(g);
  const auto tr = trace(m);
  return m * intranoise::Complex(1.0 / tr.real());
}

}  // namespace oracle
