#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace eswap {

using cplx = std::complex<double>;

// Normalization tolerance accepted on user inputs (renormalized within this
// band, rejected beyond it) and the tighter band enforced internally.
inline constexpr double kInputNormTol = 1e-9;
inline constexpr double kInternalNormTol = 1e-12;

// A pure n-qubit state.  Amplitudes use big-endian basis ordering: index i
// encodes |b_{n-1} ... b_0> with the FIRST qubit as the most significant bit,
// so for a two-qubit state the amplitude of |ab> sits at index 2*a + b.
// States are always unit-norm with the global phase canonicalized (the first
// amplitude of modulus > 1e-12 is real and nonnegative).
struct PureState {
  std::vector<cplx> amps;
  int qubit_count = 0;

  std::size_t dim() const { return amps.size(); }
};

// A density matrix over n qubits: Hermitian, unit trace, PSD within
// tolerance.  Same big-endian basis ordering as PureState.
struct DensityMatrix {
  Eigen::MatrixXcd entries;
  int qubit_count = 0;

  Eigen::Index dim() const { return entries.rows(); }
};

// Bloch representation of a one-qubit density matrix
// rho = 1/2 [[1 + r_z, r_x - i r_y], [r_x + i r_y, 1 - r_z]].
// Angles follow r_x = r sin(theta) cos(phi) etc.; phi lies in [0, 2*pi) and
// is defined as 0 when the transverse component vanishes; theta is 0 when
// r = 0.
struct BlochVector {
  double r_x = 0.0;
  double r_y = 0.0;
  double r_z = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

// Builds a normalized, phase-canonicalized state from raw amplitudes.
// Throws ZeroNormError if the norm is below the input band and
// NotNormalizableError if it deviates from 1 by more than the input band.
PureState make_state(std::vector<cplx> amps);

// Two-qubit preparation from the four basis coefficients.
PureState make_pair_state(cplx c00, cplx c01, cplx c10, cplx c11);

// Normalizes and canonicalizes without the input-band check; for internal
// construction from exact arithmetic (projections, gate application) where
// the pre-normalization magnitude is meaningful.  Throws ZeroNormError only
// when the norm is too small to normalize at all.
PureState renormalized_state(std::vector<cplx> amps);

// Kronecker product; qubit order is (a's qubits, then b's qubits).
PureState tensor(const PureState& a, const PureState& b);

// |s><s| as a density matrix.
DensityMatrix density_of(const PureState& s);

// Partial trace onto the kept qubits (ascending index order preserved).
// Throws BadSubsetError when keep is empty, repeats an index, or is not a
// strict subset of the qubits.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix partial_trace(const PureState& s, const std::vector<int>& keep);

// Bloch vector of a one-qubit density matrix.
BlochVector bloch_of(const DensityMatrix& rho);

// Applies diag(e^{+i phi/2}, e^{-i phi/2}) to one qubit: the z-rotation that
// removes an azimuthal angle phi from that qubit's Bloch vector (with the
// convention R_z(alpha) = diag(e^{-i alpha/2}, e^{+i alpha/2}), this is
// R_z(-phi)).  The result is phase-canonicalized.
PureState apply_rz(const PureState& s, int qubit, double phi);

// State drawn from the Haar measure: 2^n independent standard complex
// Gaussians, normalized and phase-canonicalized.  Deterministic per seed.
PureState haar_random_pure(int n_qubits, std::uint64_t seed);

// Deterministic seed splitting for fan-out across independent tasks
// (settings, sweep points, trials).  splitmix64-style mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Max entrywise distance |a - b| between two states of equal dimension.
double max_amp_distance(const PureState& a, const PureState& b);

}  // namespace eswap
