#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eswap/qstate.hpp"
#include "eswap/swap.hpp"

namespace eswap {

// Post-selected groups smaller than this are flagged low-statistics.
inline constexpr long long kShotFloor = 50;

// Independent readout-flip probabilities for one qubit: eps01 is the chance a
// true 0 reads as 1, eps10 the chance a true 1 reads as 0.  Each in [0, 0.5).
struct QubitNoise {
  double eps01 = 0.0;
  double eps10 = 0.0;
};

struct ReadoutNoise {
  std::vector<QubitNoise> per_qubit;

  static ReadoutNoise none(int n_qubits);
  static ReadoutNoise uniform(double eps01, double eps10, int n_qubits);

  // Noise restricted to a subset of the qubits (for measuring a subsystem).
  ReadoutNoise subset(const std::vector<int>& qubits) const;
  bool is_zero() const;
  // Throws OutOfRangeError when a rate is outside [0, 0.5).
  void validate() const;
};

// Outcome counts of one measurement setting.  Bitstrings are big-endian:
// character q of the key is the readout of qubit q.
struct CountsTable {
  std::string basis_label;
  std::map<std::string, long long> counts;
  long long shots = 0;
};

// Column-stochastic response matrix: column j is the observed outcome
// distribution when basis state j is prepared.
struct CalibrationMatrix {
  Eigen::MatrixXd M;
  int qubit_count = 0;
};

// Born probabilities of measuring `state` in the given Pauli basis (one
// character per qubit, from {X, Y, Z, I}; I behaves as Z).  This is the
// infinite-shot mode used by exactness tests.
std::vector<double> exact_probabilities(const PureState& state, const std::string& basis);

// Same, pushed through the independent readout-flip channel.
std::vector<double> noisy_probabilities(const PureState& state, const std::string& basis,
                                        const ReadoutNoise& noise);

// Finite-shot measurement emulation: rotate to the basis, sample bitstrings
// from the Born rule, flip bits per the noise model.  Deterministic per seed.
CountsTable sample_measurement(const PureState& state, const std::string& basis,
                               long long shots, const ReadoutNoise& noise,
                               std::uint64_t seed);

// Empirical calibration: prepare each computational basis state, measure in Z
// under the noise model, stack outcome frequencies as columns.
CalibrationMatrix build_calibration(const ReadoutNoise& noise, int n_qubits,
                                    long long shots_per_basis_state, std::uint64_t seed);

// Exact (infinite-shot) calibration matrix: tensor product of the per-qubit
// flip matrices.
CalibrationMatrix exact_calibration(const ReadoutNoise& noise, int n_qubits);

// counts / shots as a dense vector indexed by bitstring value.
std::vector<double> frequencies(const CountsTable& counts);

// Solves M p = p_raw for p >= 0 by nonnegative least squares, then
// renormalizes to unit sum.  Throws SingularError when cond(M) > 1e12.
std::vector<double> mitigate(const std::vector<double>& p_raw, const CalibrationMatrix& M);
std::vector<double> mitigate(const CountsTable& counts, const CalibrationMatrix& M);

// Probability vectors per measurement setting, keyed by Pauli string
// ("X"/"Y"/"Z" for one qubit, "XX".."ZZ" for two).
using SettingProbs = std::map<std::string, std::vector<double>>;

// Linear-inversion reconstruction followed by the physicality projection
// (eigendecompose, clamp negative eigenvalues to 0, renormalize the trace).
DensityMatrix tomography_1q(const SettingProbs& setting_probs);
DensityMatrix tomography_2q(const SettingProbs& setting_probs);

// Outcome distribution of the Bell-basis measurement on qubits (C, C') of a
// four-qubit state ordered (A, C, C', B), computed via the basis-change
// route: inverse Bell transform on (C, C') then Z (x) Z readout.  Indexed by
// BellOutcome.  Agrees with the projection probabilities of decompose.
std::array<double, 4> bbm_outcome_probabilities(const PureState& global);

// Result of a finite-shot Bell-basis measurement with post-selection.  The
// allocation records how many shots landed in each observed outcome group;
// each group can then yield conditional AB samples in any requested Pauli
// setting (the emulator draws as many as asked from the group's empirical
// mixture of true branches).
struct PostselectGroups {
  std::array<long long, 4> observed{};                    // by observed outcome
  std::array<std::array<long long, 4>, 4> composition{};  // [observed][true]
  std::array<double, 4> exact_probability{};              // Born, by true outcome
  std::array<std::optional<PureState>, 4> conditional_state;  // AB, by true outcome
  long long shots = 0;
  ReadoutNoise noise;  // four-qubit noise in effect (A, C, C', B)

  long long count(BellOutcome o) const { return observed[static_cast<std::size_t>(o)]; }

  // n_samples AB measurements in a two-character Pauli basis, conditioned on
  // the observed outcome group.  Deterministic per seed.
  CountsTable sample_conditional(BellOutcome outcome, const std::string& basis,
                                 long long n_samples, std::uint64_t seed) const;
};

PostselectGroups bell_measure_and_postselect(const PureState& global, long long shots,
                                             const ReadoutNoise& noise, std::uint64_t seed);

// Multinomial draw by sequential conditional binomials.
std::vector<long long> multinomial_sample(const std::vector<double>& probs,
                                          long long shots, std::mt19937_64& rng);

}  // namespace eswap
