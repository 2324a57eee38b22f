#pragma once

#include "eswap/qstate.hpp"

namespace eswap {

// (P, C, E) for one qubit of a bipartite pure state, plus the raw deviation
// of P^2 + C^2 + E^2 from 1 (computed before the [0,1] clamping so tests can
// see pre-clamp drift).
struct MeasureTriple {
  double P = 0.0;
  double C = 0.0;
  double E = 0.0;
  double ccr_residual = 0.0;
};

// |rho_00 - rho_11| of a one-qubit density matrix.
double predictability(const DensityMatrix& rho);

// 2 |rho_01| of a one-qubit density matrix (l1-norm coherence for a qubit).
double l1_coherence(const DensityMatrix& rho);

// 2 |a_00 a_11 - a_01 a_10| for a normalized two-qubit pure state.
double concurrence_pure(const PureState& s);

// Wootters concurrence of a two-qubit density matrix, computed through the
// Hermitian form sqrt(rho) (Y@Y) conj(rho) (Y@Y) sqrt(rho) for numerical
// stability on rank-deficient input.  Throws NotPositiveError when an input
// eigenvalue is below -1e-6 (unprojected tomography output).
double concurrence_mixed(const DensityMatrix& rho);

// P and C of the reduced state of which_qubit, E of the joint state, and the
// complementarity residual P^2 + C^2 + E^2 - 1.
MeasureTriple measure_triple(const PureState& s, int which_qubit);

}  // namespace eswap
