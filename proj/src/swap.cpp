#include "eswap/swap.hpp"

#include <algorithm>
#include <cmath>

#include "eswap/errors.hpp"

namespace eswap {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

const char* to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus:
      return "PhiPlus";
    case BellOutcome::PhiMinus:
      return "PhiMinus";
    case BellOutcome::PsiPlus:
      return "PsiPlus";
    case BellOutcome::PsiMinus:
      return "PsiMinus";
  }
  return "?";
}

Eigen::Matrix4cd bell_basis() {
  Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
  b(0, 0) = kInvSqrt2;
  b(0, 3) = kInvSqrt2;   // PhiPlus
  b(1, 0) = kInvSqrt2;
  b(1, 3) = -kInvSqrt2;  // PhiMinus
  b(2, 1) = kInvSqrt2;
  b(2, 2) = kInvSqrt2;   // PsiPlus
  b(3, 1) = kInvSqrt2;
  b(3, 2) = -kInvSqrt2;  // PsiMinus
  return b;
}

SwapResult decompose(const PureState& xi, const PureState& eta) {
  if (xi.qubit_count != 2 || eta.qubit_count != 2) {
    throw DimensionMismatchError("decompose requires two two-qubit states");
  }
  const PureState global = tensor(xi, eta);  // order (A, C, C', B)
  const Eigen::Matrix4cd bell = bell_basis();

  SwapResult result;
  double average = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    // Unnormalized AB amplitudes of the component along Bell state k on
    // (C, C'): f[2a + b] = sum_{c,c'} conj(bell[k][2c+c']) g[8a+4c+2c'+b].
    std::vector<cplx> ab(4, cplx(0.0, 0.0));
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        cplx f = 0.0;
        for (std::size_t c = 0; c < 2; ++c) {
          for (std::size_t cp = 0; cp < 2; ++cp) {
            f += std::conj(bell(static_cast<Eigen::Index>(k),
                                static_cast<Eigen::Index>(2 * c + cp))) *
                 global.amps[8 * a + 4 * c + 2 * cp + b];
          }
        }
        ab[2 * a + b] = f;
      }
    }
    double prob = 0.0;
    for (const auto& f : ab) prob += std::norm(f);
    OutcomeResult& out = result.outcomes[k];
    out.probability = prob;
    if (prob >= kProbabilityFloor) {
      out.post_state = renormalized_state(std::move(ab));
      out.post_concurrence = concurrence_pure(*out.post_state);
      average += prob * (*out.post_concurrence);
    }
  }
  result.averaged_concurrence = average;
  return result;
}

double averaged_entanglement(const PureState& xi, const PureState& eta) {
  return concurrence_pure(xi) * concurrence_pure(eta);
}

AlignResult align_phases(const PureState& xi, const PureState& eta) {
  if (xi.qubit_count != 2 || eta.qubit_count != 2) {
    throw DimensionMismatchError("align_phases requires two two-qubit states");
  }
  AlignResult r;
  r.phi_C = bloch_of(partial_trace(xi, {1})).phi;
  r.phi_Cp = bloch_of(partial_trace(eta, {0})).phi;
  r.xi = apply_rz(xi, 1, r.phi_C);
  r.eta = apply_rz(eta, 0, r.phi_Cp);
  return r;
}

AnalyticPrediction analytic_concurrences(double P_C, double C_C, double P_Cp,
                                         double C_Cp, int hemisphere_sign) {
  const double rem_c = 1.0 - P_C * P_C - C_C * C_C;
  const double rem_cp = 1.0 - P_Cp * P_Cp - C_Cp * C_Cp;
  if (rem_c < -1e-12 || rem_cp < -1e-12) {
    throw OutOfRangeError("P^2 + C^2 exceeds 1 beyond tolerance");
  }
  if (hemisphere_sign < -1 || hemisphere_sign > 1) {
    throw OutOfRangeError("hemisphere_sign must be -1, 0, or +1");
  }
  const double numer = std::sqrt(std::max(0.0, rem_c) * std::max(0.0, rem_cp));
  const double pp = hemisphere_sign * P_C * P_Cp;
  const double cc = C_C * C_Cp;

  AnalyticPrediction pred;
  pred.hemisphere_sign = hemisphere_sign;
  const std::array<double, 4> denominators = {
      1.0 + pp + cc,  // PhiPlus
      1.0 + pp - cc,  // PhiMinus
      1.0 - pp + cc,  // PsiPlus
      1.0 - pp - cc,  // PsiMinus
  };
  for (std::size_t k = 0; k < 4; ++k) {
    if (denominators[k] > 1e-15) {
      pred.predicted_concurrence[k] =
          std::clamp(numer / denominators[k], 0.0, 1.0);
    }
  }
  return pred;
}

VerifyReport predict_and_verify(const PureState& xi, const PureState& eta) {
  VerifyReport report;
  report.alignment = align_phases(xi, eta);

  const DensityMatrix rho_c = partial_trace(report.alignment.xi, {1});
  const DensityMatrix rho_cp = partial_trace(report.alignment.eta, {0});
  const int s = sign_of(bloch_of(rho_c).r_z) * sign_of(bloch_of(rho_cp).r_z);

  report.prediction = analytic_concurrences(
      predictability(rho_c), l1_coherence(rho_c), predictability(rho_cp),
      l1_coherence(rho_cp), s);
  report.prediction.aligned = true;

  report.oracle = decompose(report.alignment.xi, report.alignment.eta);

  report.max_difference = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& predicted = report.prediction.predicted_concurrence[k];
    const auto& measured = report.oracle.outcomes[k].post_concurrence;
    if (predicted.has_value() && measured.has_value()) {
      report.abs_difference[k] = std::abs(*predicted - *measured);
      report.max_difference = std::max(report.max_difference, *report.abs_difference[k]);
    }
  }
  return report;
}

}  // namespace eswap
