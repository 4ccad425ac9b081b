#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "intranoise/matrix_core.hpp"
#include "intranoise/quantum_state.hpp"

namespace intranoise {

namespace tolerance {
inline constexpr double kCompleteness = 1e-12;
}  // namespace tolerance

enum class ChannelKind { AmplitudeDamping, PhaseDamping, Depolarizing };

// Intraparticle: noise acts on the joint 4-level space of one particle.
// Interparticle: identical local noise on each 2-level particle.
enum class Locality { Intraparticle, Interparticle };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  Locality locality = Locality::Intraparticle;
  double p = 0.0;
};

/// Ordered Kraus operators of one channel at fixed P.
struct KrausSet {
  std::vector<CMat4> ops;

  /// max entry of |sum_i M_i^dagger M_i - I|
  double completeness_error() const;
};

std::string_view to_string(ChannelKind kind);      // "ad" | "pd" | "dp"
std::string_view to_string(Locality locality);     // "intra" | "inter"
std::optional<ChannelKind> parse_channel_kind(std::string_view text);
std::optional<Locality> parse_locality(std::string_view text);

/// M0 = |0><0| + sqrt(1-P) sum_{j=1..3} |j><j|,  M_i = sqrt(P) |0><i|.
/// Order: M0, M1, M2, M3.
KrausSet kraus_ad_intra(double p);

/// M0 = sqrt(1-P) I,  M_{i+1} = sqrt(P) |i><i|.  Order: M0, M1..M4.
KrausSet kraus_pd_intra(double p);

/// U_mn = sum_j exp(2 pi i j m / 4) |j><j+n mod 4|, 0 <= m, n <= 3.
CMat4 weyl_operator(int m, int n);

/// M00 = sqrt(1 - 15P/16) U00, M_ij = sqrt(P)/4 U_ij.
/// Order: U00 term first, then the other 15 in row-major (i, j).
KrausSet kraus_dp_intra(double p);

/// Local {M0 = diag(1, sqrt(1-P)), M1 = sqrt(P)|0><1|} on both particles.
/// Order: (0,0), (0,1), (1,0), (1,1) as (first particle, second particle).
KrausSet kraus_ad_inter(double p);

/// Local {sqrt(1-P) I, sqrt(P)|0><0|, sqrt(P)|1><1|}; 9 products, row-major.
KrausSet kraus_pd_inter(double p);

/// Local {sqrt(1-P) I, sqrt(P/3) sx, sqrt(P/3) sy, sqrt(P/3) sz}; 16 products.
KrausSet kraus_dp_inter(double p);

KrausSet build_channel(const ChannelSpec& spec);

/// rho -> sum_i M_i rho M_i^dagger. Validates the result.
DensityMatrix4 apply_channel(const DensityMatrix4& rho, const KrausSet& k);

}  // namespace intranoise
