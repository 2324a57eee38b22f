#include "eswap/measures.hpp"

#include <algorithm>
#include <cmath>

#include "eswap/errors.hpp"

namespace eswap {

namespace {

void require_1q(const DensityMatrix& rho) {
  if (rho.qubit_count != 1 || rho.dim() != 2) {
    throw DimensionMismatchError("a one-qubit density matrix is required");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double predictability(const DensityMatrix& rho) {
  require_1q(rho);
  return clamp01(std::abs((rho.entries(0, 0) - rho.entries(1, 1)).real()));
}

double l1_coherence(const DensityMatrix& rho) {
  require_1q(rho);
  return clamp01(2.0 * std::abs(rho.entries(0, 1)));
}

double concurrence_pure(const PureState& s) {
  if (s.qubit_count != 2) {
    throw DimensionMismatchError("concurrence_pure requires a two-qubit state");
  }
  return clamp01(2.0 * std::abs(s.amps[0] * s.amps[3] - s.amps[1] * s.amps[2]));
}

double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.qubit_count != 2 || rho.dim() != 4) {
    throw DimensionMismatchError("concurrence_mixed requires a two-qubit density matrix");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.entries);
  Eigen::Vector4d evals = es.eigenvalues();
  if (evals.minCoeff() < -1e-6) {
    throw NotPositiveError("density matrix has an eigenvalue below -1e-6");
  }
  evals = evals.cwiseMax(0.0);
  const Eigen::Matrix4cd sqrt_rho =
      es.eigenvectors() * evals.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();

  // Spin-flip operator (sigma_y tensor sigma_y), real representation.
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  const Eigen::Matrix4cd flipped = yy * rho.entries.conjugate() * yy;
  Eigen::Matrix4cd herm = sqrt_rho * flipped * sqrt_rho;
  herm = ((herm + herm.adjoint()) * 0.5).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es2(herm);
  Eigen::Vector4d lam = es2.eigenvalues().cwiseMax(0.0);
  // Relative clamp: eigenvalues that are pure rounding noise next to the
  // dominant one would otherwise contribute sqrt(noise)-sized terms.
  const double floor = 1e-12 * lam.maxCoeff();
  for (int i = 0; i < 4; ++i) {
    if (lam(i) < floor) lam(i) = 0.0;
  }
  Eigen::Vector4d roots = lam.cwiseSqrt();
  std::sort(roots.data(), roots.data() + 4, std::greater<double>());
  return clamp01(std::max(0.0, roots(0) - roots(1) - roots(2) - roots(3)));
}

MeasureTriple measure_triple(const PureState& s, int which_qubit) {
  if (s.qubit_count != 2) {
    throw DimensionMismatchError("measure_triple requires a two-qubit state");
  }
  if (which_qubit != 0 && which_qubit != 1) {
    throw BadIndexError("which_qubit must be 0 or 1");
  }
  const DensityMatrix marginal = partial_trace(s, {which_qubit});
  const double p_raw = std::abs((marginal.entries(0, 0) - marginal.entries(1, 1)).real());
  const double c_raw = 2.0 * std::abs(marginal.entries(0, 1));
  const double e_raw = 2.0 * std::abs(s.amps[0] * s.amps[3] - s.amps[1] * s.amps[2]);
  MeasureTriple t;
  t.ccr_residual = p_raw * p_raw + c_raw * c_raw + e_raw * e_raw - 1.0;
  t.P = clamp01(p_raw);
  t.C = clamp01(c_raw);
  t.E = clamp01(e_raw);
  return t;
}

}  // namespace eswap
