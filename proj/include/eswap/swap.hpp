#pragma once

#include <array>
#include <optional>
#include <string>

#include "eswap/measures.hpp"
#include "eswap/qstate.hpp"

namespace eswap {

// The four Bell-basis measurement results, in fixed iteration order.
enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus,
    BellOutcome::PsiMinus};

const char* to_string(BellOutcome o);

// Coefficients of the Bell states in the two-qubit computational basis:
// row k (enum order) holds the amplitudes of Bell state k at |00>,|01>,|10>,|11>.
// PhiPlusMinus = (|00> +- |11>)/sqrt(2), PsiPlusMinus = (|01> +- |10>)/sqrt(2).
Eigen::Matrix4cd bell_basis();

// Outcomes with probability below this floor carry no post-measurement state
// (normalizing a near-zero projection is ill-conditioned).
inline constexpr double kProbabilityFloor = 1e-9;

struct OutcomeResult {
  double probability = 0.0;
  std::optional<PureState> post_state;       // AB state, absent below the floor
  std::optional<double> post_concurrence;    // absent likewise
};

struct SwapResult {
  std::array<OutcomeResult, 4> outcomes;     // indexed by BellOutcome
  double averaged_concurrence = 0.0;

  const OutcomeResult& at(BellOutcome o) const {
    return outcomes[static_cast<std::size_t>(o)];
  }
};

// Brute-force protocol oracle: forms the four-qubit product state in order
// (A, C, C', B), projects qubits (C, C') onto each Bell state, and reads off
// probability, normalized AB post-state, and its concurrence per outcome,
// plus the non-selective average of the concurrences.
SwapResult decompose(const PureState& xi, const PureState& eta);

// Product of the two input concurrences; equals the decompose average.
double averaged_entanglement(const PureState& xi, const PureState& eta);

struct AlignResult {
  PureState xi;        // rotated so the C marginal off-diagonal is real >= 0
  PureState eta;       // rotated so the C' marginal off-diagonal is real >= 0
  double phi_C = 0.0;  // azimuth removed from qubit C of xi
  double phi_Cp = 0.0; // azimuth removed from qubit C' of eta
};

// Removes the azimuthal Bloch angles of the C marginal of xi (qubit 1) and
// the C' marginal of eta (qubit 0) by local z-rotations.  P, C, and the
// concurrences are unchanged (local unitary).
AlignResult align_phases(const PureState& xi, const PureState& eta);

struct AnalyticPrediction {
  // Indexed by BellOutcome; absent when the denominator vanishes (which can
  // happen only when the numerator is 0 as well).
  std::array<std::optional<double>, 4> predicted_concurrence;
  int hemisphere_sign = 0;  // sgn(r_z of C marginal) * sgn(r_z of C' marginal)
  bool aligned = false;     // true when produced from phase-aligned marginals

  const std::optional<double>& at(BellOutcome o) const {
    return predicted_concurrence[static_cast<std::size_t>(o)];
  }
};

// Closed-form post-measurement concurrences driven only by the local
// predictabilities and coherences of the aligned C and C' marginals:
// with N = sqrt((1 - P_C^2 - C_C^2)(1 - P_Cp^2 - C_Cp^2)) and s the
// hemisphere sign,
//   E(PhiPlus)  = N / (1 + s P_C P_Cp + C_C C_Cp)
//   E(PhiMinus) = N / (1 + s P_C P_Cp - C_C C_Cp)
//   E(PsiPlus)  = N / (1 - s P_C P_Cp + C_C C_Cp)
//   E(PsiMinus) = N / (1 - s P_C P_Cp - C_C C_Cp)
// Throws OutOfRangeError when P^2 + C^2 > 1 + 1e-12 for either pair or when
// hemisphere_sign is not in {-1, 0, +1}.
AnalyticPrediction analytic_concurrences(double P_C, double C_C, double P_Cp,
                                         double C_Cp, int hemisphere_sign);

struct VerifyReport {
  AlignResult alignment;
  AnalyticPrediction prediction;
  SwapResult oracle;
  // |predicted - oracle| per outcome; absent when either side is absent
  // (vanishing-probability outcome).
  std::array<std::optional<double>, 4> abs_difference;
  double max_difference = 0.0;
};

// Aligns the phases, evaluates the analytic predictors on the aligned
// marginals, runs the brute-force decomposition of the aligned pair, and
// reports per-outcome absolute differences (contract: <= 1e-10).
VerifyReport predict_and_verify(const PureState& xi, const PureState& eta);

}  // namespace eswap
