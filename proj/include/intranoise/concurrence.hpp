#pragma once

// Wootters concurrence of two-qubit (or 2x2 intraparticle) states, both from
// the spectrum of R = rho (sy x sy) rho* (sy x sy) and from the closed forms
// available for pure inputs sent through each noise channel.

#include "intranoise/matrix_core.hpp"
#include "intranoise/quantum_state.hpp"

namespace intranoise {

/// Eigenvalues of R, descending, clamped to be >= 0.
struct RSpectrum {
  RealArray4 lambdas{};
};

/// The two ingredients of C^2 = S - T for intraparticle amplitude damping.
struct ADIntraParts {
  double s = 0.0;
  double t = 0.0;
};

/// R = rho U rho* U with U = sy x sy. Generally not Hermitian.
CMat4 r_matrix(const DensityMatrix4& rho);

/// Spectrum of R taken as the spectrum of the Hermitian PSD matrix
/// sqrt(rho) U rho* U sqrt(rho), which shares R's eigenvalues.
RSpectrum r_spectrum(const DensityMatrix4& rho);

/// max(0, s1 - s2 - s3 - s4) with s_i = sqrt(lambda_i(R)). The s_i are taken
/// as singular values of Wootters' tau = W^T U W where rho = W W^dagger,
/// which keeps full absolute accuracy when R has (near-)zero eigenvalues.
double concurrence_numeric(const DensityMatrix4& rho);

/// The four sqrt(lambda_i(R)) used by concurrence_numeric, descending.
RealArray4 r_sqrt_spectrum(const DensityMatrix4& rho);

/// Intraparticle amplitude damping: 2 |bc sqrt(1-P) - ad| sqrt(1-P).
double concurrence_ad_intra(const PureState4& s, double p);

/// S and T with C^2 = S - T for intraparticle amplitude damping:
///   S = 4|b|^2|c|^2 (1-P)^2 - 4 (1-P)^{3/2} [a d b* c* + b c a* d*]
///       + 2|d|^2 (1-P) [P + (2-P)|a|^2]
///   T = 2 P (1-P) (1-|a|^2) |d|^2
ADIntraParts ad_intra_parts(const PureState4& s, double p);

/// Same concurrence written through magnitudes and delta_theta:
///   2 sqrt(1-P) |V1 - V2|,  |V1| = |b||c| sqrt(1-P), |V2| = |a||d|,
/// with angle delta_theta between V1 and V2.
double concurrence_ad_intra_polar(const PolarParams& params, double p);

/// Interparticle amplitude damping, real amplitudes only (throws
/// ComplexStateUnsupported otherwise). With x = ad - bc, q = 1 - P:
///   alpha = 2 x^2 q^2 + d^4 P^2 q^2
///   beta  = 2 |x| q^2 sqrt(x^2 + d^4 P^2)
///   C = max(0, sqrt(alpha+beta) - sqrt(alpha-beta) - 2 d^2 P q)
double concurrence_ad_inter(const PureState4& s, double p);

/// Intraparticle phase damping from the closed-form R eigenvalues; the
/// real-parameter expressions are used when every amplitude is real,
/// the complex-parameter ones otherwise.
double concurrence_pd_intra(const PureState4& s, double p);

/// Intraparticle depolarizing from the closed-form R eigenvalues
/// alpha +- beta and P^2/16 (twice), with |ad - bc| the complex modulus.
double concurrence_dp_intra(const PureState4& s, double p);

}  // namespace intranoise
