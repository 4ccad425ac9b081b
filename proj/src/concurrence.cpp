#include "intranoise/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
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

double clamp_eigenvalue(double lambda, const char* who) {
  if (lambda < -tolerance::kPsdClamp) {
    std::ostringstream os;
    os << who << ": eigenvalue " << lambda << " below -1e-9";
    throw Error(ErrorKind::NotPSD, os.str());
  }
  return std::max(lambda, 0.0);
}

double wootters(RealArray4 roots) {
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// Concurrence from four R eigenvalues given in any order.
double concurrence_from_lambdas(RealArray4 lambdas, const char* who) {
  RealArray4 roots;
  for (std::size_t i = 0; i < 4; ++i) roots[i] = std::sqrt(clamp_eigenvalue(lambdas[i], who));
  return std::min(1.0, wootters(roots));
}

}  // namespace

CMat4 r_matrix(const DensityMatrix4& rho) {
  const CMat4& u = spin_flip();
  return rho.matrix() * u * conjugate(rho.matrix()) * u;
}

RSpectrum r_spectrum(const DensityMatrix4& rho) {
  const CMat4& u = spin_flip();
  const CMat4 root = psd_sqrt(rho.matrix());
  const CMat4 flipped = u * conjugate(rho.matrix()) * u;
  CMat4 h = root * flipped * root;
  h = (h + adjoint(h)) * Complex(0.5);
  RSpectrum out;
  out.lambdas = eig_hermitian4(h);
  for (auto& l : out.lambdas) l = clamp_eigenvalue(l, "r_spectrum");
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  return out;
}

RealArray4 r_sqrt_spectrum(const DensityMatrix4& rho) {
  const auto es = eigh4(rho.matrix());
  CMat4 w;  // columns sqrt(lambda_k) |e_k>
  for (std::size_t k = 0; k < 4; ++k) {
    const double lambda = clamp_eigenvalue(es.values[k], "concurrence_numeric");
    if (lambda <= tolerance::kRankFloor) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = root * es.vectors(i, k);
  }
  const CMat4 tau = transpose(w) * spin_flip() * w;
  return singular_values4(tau);
}

double concurrence_numeric(const DensityMatrix4& rho) {
  return std::min(1.0, wootters(r_sqrt_spectrum(rho)));
}

double concurrence_ad_intra(const PureState4& s, double p) {
  check_param(p, "concurrence_ad_intra");
  const double keep = std::sqrt(1.0 - p);
  return 2.0 * std::abs(s.b() * s.c() * keep - s.a() * s.d()) * keep;
}

ADIntraParts ad_intra_parts(const PureState4& s, double p) {
  check_param(p, "ad_intra_parts");
  const Complex a = s.a(), b = s.b(), c = s.c(), d = s.d();
  const double q = 1.0 - p;
  const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c), d2 = std::norm(d);
  // a d b* c* + b c a* d* = 2 Re(a d conj(b c))
  const double cross = 2.0 * (a * d * std::conj(b * c)).real();
  ADIntraParts parts;
  parts.s = 4.0 * b2 * c2 * q * q - 4.0 * std::pow(q, 1.5) * cross +
            2.0 * d2 * q * (p + (2.0 - p) * a2);
  parts.t = 2.0 * p * q * (1.0 - a2) * d2;
  return parts;
}

double concurrence_ad_intra_polar(const PolarParams& params, double p) {
  check_param(p, "concurrence_ad_intra_polar");
  const double keep = std::sqrt(1.0 - p);
  const double v1 = params.mag_b * params.mag_c * keep;
  const double v2 = params.mag_a * params.mag_d;
  const double gap2 = v1 * v1 + v2 * v2 - 2.0 * v1 * v2 * std::cos(params.delta_theta());
  return 2.0 * std::sqrt(std::max(gap2, 0.0)) * keep;
}

double concurrence_ad_inter(const PureState4& s, double p) {
  check_param(p, "concurrence_ad_inter");
  if (!s.is_real())
    throw Error(ErrorKind::ComplexStateUnsupported,
                "concurrence_ad_inter: closed form needs real amplitudes; use the numeric path");
  const double a = s.a().real(), b = s.b().real(), c = s.c().real(), d = s.d().real();
  const double x = a * d - b * c;
  const double q = 1.0 - p;
  const double flip = d * d * p * q;  // sqrt of the doubly degenerate eigenvalue
  const double alpha = 2.0 * x * x * q * q + flip * flip;
  const double beta = 2.0 * std::abs(x) * q * q * std::sqrt(x * x + std::pow(d, 4) * p * p);
  const double top = std::sqrt(alpha + beta);
  // (alpha - beta)(alpha + beta) = flip^4
  const double bottom = top > 0.0 ? flip * flip / top : 0.0;
  return std::min(1.0, wootters({top, flip, flip, bottom}));
}

double concurrence_pd_intra(const PureState4& s, double p) {
  check_param(p, "concurrence_pd_intra");
  const Complex ad = s.a() * s.d();
  const Complex bc = s.b() * s.c();
  const double shrink = 2.0 - p;
  const double mix = p * (4.0 - 3.0 * p);
  RealArray4 lambdas;
  double lambda1 = 0.0;
  if (s.is_real()) {
    const double x = ad.real() - bc.real();
    const double abcd = ad.real() * bc.real();
    const double alpha = x * x * shrink * shrink + 2.0 * abcd * mix;
    const double beta = x * x * shrink * shrink + 4.0 * abcd * mix;
    lambda1 = 0.5 * (alpha + std::abs(x) * shrink * std::sqrt(std::max(beta, 0.0)));
  } else {
    const double x2 = std::norm(ad - bc);
    // (a1 d1 - a2 d2)(b1 c1 - b2 c2) + (a1 d2 + a2 d1)(b1 c2 + b2 c1)
    const double cross = ad.real() * bc.real() + ad.imag() * bc.imag();
    const double alpha = x2 * shrink * shrink + 2.0 * cross * mix;
    const double beta2 = std::norm(ad) * std::norm(bc) * mix * mix;
    lambda1 = 0.5 * (alpha + std::sqrt(std::max(alpha * alpha - 4.0 * beta2, 0.0)));
  }
  // lambda1 * lambda2 = |a|^2 |b|^2 |c|^2 |d|^2 P^2 (4 - 3P)^2 in both cases.
  const double product = std::norm(ad) * std::norm(bc) * mix * mix;
  lambdas[0] = lambda1;
  lambdas[1] = lambda1 > 0.0 ? product / lambda1 : 0.0;
  lambdas[2] = std::norm(ad) * p * p;
  lambdas[3] = std::norm(bc) * p * p;
  return concurrence_from_lambdas(lambdas, "concurrence_pd_intra");
}

double concurrence_dp_intra(const PureState4& s, double p) {
  check_param(p, "concurrence_dp_intra");
  const double x = std::abs(s.a() * s.d() - s.b() * s.c());
  const double q = 1.0 - p;
  const double mixed = p / 4.0 * (1.0 - 3.0 * p / 4.0);
  const double alpha = 2.0 * x * x * q * q + mixed;
  const double beta = 2.0 * x * q * std::sqrt(x * x * q * q + mixed);
  const double top = std::sqrt(alpha + beta);
  // (alpha + beta)(alpha - beta) = mixed^2
  const double bottom = top > 0.0 ? mixed / top : 0.0;
  const double floor = p / 4.0;
  return std::min(1.0, wootters({top, bottom, floor, floor}));
}

}  // namespace intranoise
