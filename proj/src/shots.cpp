#include "eswap/shots.hpp"

#include <algorithm>
#include <cmath>

#include "eswap/errors.hpp"

namespace eswap {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::Matrix2cd basis_rotation(char c) {
  Eigen::Matrix2cd u;
  switch (c) {
    case 'X':  // Hadamard
      u << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
      return u;
    case 'Y':  // Hadamard * S-dagger: maps the Y eigenbasis to computational
      u << kInvSqrt2, cplx(0.0, -kInvSqrt2), kInvSqrt2, cplx(0.0, kInvSqrt2);
      return u;
    case 'Z':
    case 'I':
      return Eigen::Matrix2cd::Identity();
    default:
      throw BadBasisError(std::string("unknown basis character '") + c + "'");
  }
}

void apply_1q(std::vector<cplx>& amps, int n, int qubit, const Eigen::Matrix2cd& u) {
  const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & stride) continue;
    const cplx a0 = amps[base];
    const cplx a1 = amps[base | stride];
    amps[base] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[base | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

// In-place application of the independent per-qubit readout-flip channel to a
// probability vector over bitstrings.
void apply_flip_channel(std::vector<double>& p, int n, const ReadoutNoise& noise) {
  for (int q = 0; q < n; ++q) {
    const double e01 = noise.per_qubit[static_cast<std::size_t>(q)].eps01;
    const double e10 = noise.per_qubit[static_cast<std::size_t>(q)].eps10;
    if (e01 == 0.0 && e10 == 0.0) continue;
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < p.size(); ++base) {
      if (base & stride) continue;
      const double p0 = p[base];
      const double p1 = p[base | stride];
      p[base] = (1.0 - e01) * p0 + e10 * p1;
      p[base | stride] = e01 * p0 + (1.0 - e10) * p1;
    }
  }
}

std::string to_bitstring(std::size_t idx, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if ((idx >> (n - 1 - q)) & 1u) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

void check_basis(const std::string& basis, int n) {
  if (static_cast<int>(basis.size()) != n) {
    throw BadBasisError("basis string length must equal the qubit count");
  }
  for (char c : basis) {
    if (c != 'X' && c != 'Y' && c != 'Z' && c != 'I') {
      throw BadBasisError(std::string("unknown basis character '") + c + "'");
    }
  }
}

// Lawson-Hanson nonnegative least squares; dimensions here are at most 16.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  const Eigen::Index ncol = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ncol);
  std::vector<bool> passive(static_cast<std::size_t>(ncol), false);
  const double tol = 1e-12 * (1.0 + y.lpNorm<Eigen::Infinity>());

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < ncol; ++i) {
      if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
    }
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) ap.col(static_cast<Eigen::Index>(j)) = a.col(idx[j]);
    const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(y);
    z.setZero(ncol);
    for (std::size_t j = 0; j < idx.size(); ++j) z(idx[j]) = zp(static_cast<Eigen::Index>(j));
  };

  for (Eigen::Index outer = 0; outer < 30 * ncol; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (y - a * x);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index i = 0; i < ncol; ++i) {
      if (!passive[static_cast<std::size_t>(i)] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    Eigen::VectorXd z(ncol);
    for (Eigen::Index inner = 0; inner < 30 * ncol; ++inner) {
      solve_passive(z);
      double alpha = 1.0;
      Eigen::Index blocker = -1;
      for (Eigen::Index i = 0; i < ncol; ++i) {
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          const double step = x(i) / (x(i) - z(i));
          if (step < alpha) {
            alpha = step;
            blocker = i;
          }
        }
      }
      if (blocker < 0) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      for (Eigen::Index i = 0; i < ncol; ++i) {
        if (passive[static_cast<std::size_t>(i)] && x(i) <= 1e-14) {
          x(i) = 0.0;
          passive[static_cast<std::size_t>(i)] = false;
        }
      }
    }
  }
  return x.cwiseMax(0.0);
}

Eigen::Matrix2cd pauli(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'I':
      return Eigen::Matrix2cd::Identity();
    case 'X':
      m << 0, 1, 1, 0;
      return m;
    case 'Y':
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      return m;
    case 'Z':
      m << 1, 0, 0, -1;
      return m;
    default:
      throw BadBasisError("unknown Pauli label");
  }
}

// Expectation of a product of minus-one signs over the listed qubits.
double sign_expectation(const std::vector<double>& p, const std::vector<int>& qubits, int n) {
  double e = 0.0;
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    int parity = 0;
    for (int q : qubits) parity ^= static_cast<int>((idx >> (n - 1 - q)) & 1u);
    e += parity ? -p[idx] : p[idx];
  }
  return e;
}

const std::vector<double>& setting_or_throw(const SettingProbs& probs, const std::string& key,
                                            std::size_t dim) {
  const auto it = probs.find(key);
  if (it == probs.end()) {
    throw MissingBasisError("missing measurement setting " + key);
  }
  if (it->second.size() != dim) {
    throw MissingBasisError("setting " + key + " has the wrong outcome dimension");
  }
  return it->second;
}

DensityMatrix project_physical(Eigen::MatrixXcd m, int n_qubits) {
  m = ((m + m.adjoint()) * 0.5).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
  const double total = evals.sum();
  if (total <= 0.0) {
    throw NotPositiveError("reconstruction has no positive weight");
  }
  evals /= total;
  DensityMatrix rho;
  rho.entries = es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().adjoint();
  rho.qubit_count = n_qubits;
  return rho;
}

// Index over (c, c') after the inverse Bell transform -> BellOutcome, and back.
constexpr std::array<int, 4> kOutcomeOfBits = {0, 2, 1, 3};  // 00,01,10,11
constexpr std::array<int, 4> kBitsOfOutcome = {0, 2, 1, 3};  // PhiPlus..PsiMinus

}  // namespace

ReadoutNoise ReadoutNoise::none(int n_qubits) {
  ReadoutNoise r;
  r.per_qubit.assign(static_cast<std::size_t>(n_qubits), QubitNoise{});
  return r;
}

ReadoutNoise ReadoutNoise::uniform(double eps01, double eps10, int n_qubits) {
  ReadoutNoise r;
  r.per_qubit.assign(static_cast<std::size_t>(n_qubits), QubitNoise{eps01, eps10});
  r.validate();
  return r;
}

ReadoutNoise ReadoutNoise::subset(const std::vector<int>& qubits) const {
  ReadoutNoise r;
  for (int q : qubits) {
    if (q < 0 || q >= static_cast<int>(per_qubit.size())) {
      throw BadIndexError("noise subset index out of range");
    }
    r.per_qubit.push_back(per_qubit[static_cast<std::size_t>(q)]);
  }
  return r;
}

bool ReadoutNoise::is_zero() const {
  for (const auto& q : per_qubit) {
    if (q.eps01 != 0.0 || q.eps10 != 0.0) return false;
  }
  return true;
}

void ReadoutNoise::validate() const {
  for (const auto& q : per_qubit) {
    if (q.eps01 < 0.0 || q.eps01 >= 0.5 || q.eps10 < 0.0 || q.eps10 >= 0.5) {
      throw OutOfRangeError("readout flip rates must lie in [0, 0.5)");
    }
  }
}

std::vector<double> exact_probabilities(const PureState& state, const std::string& basis) {
  const int n = state.qubit_count;
  check_basis(basis, n);
  std::vector<cplx> amps = state.amps;
  for (int q = 0; q < n; ++q) {
    const char c = basis[static_cast<std::size_t>(q)];
    if (c == 'Z' || c == 'I') continue;
    apply_1q(amps, n, q, basis_rotation(c));
  }
  std::vector<double> p(amps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    p[i] = std::norm(amps[i]);
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

std::vector<double> noisy_probabilities(const PureState& state, const std::string& basis,
                                        const ReadoutNoise& noise) {
  const int n = state.qubit_count;
  if (static_cast<int>(noise.per_qubit.size()) != n) {
    throw DimensionMismatchError("noise model size must equal the qubit count");
  }
  noise.validate();
  std::vector<double> p = exact_probabilities(state, basis);
  apply_flip_channel(p, n, noise);
  return p;
}

std::vector<long long> multinomial_sample(const std::vector<double>& probs,
                                          long long shots, std::mt19937_64& rng) {
  const std::size_t k = probs.size();
  std::vector<long long> out(k, 0);
  double total = 0.0;
  std::size_t last_positive = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (probs[i] > 0.0) {
      total += probs[i];
      last_positive = i;
    }
  }
  if (total <= 0.0 || shots <= 0) return out;

  // Sequential conditional binomials; the final positive bucket absorbs the
  // remainder so rounding can never assign shots to a zero-probability one.
  long long remaining = shots;
  double rem_p = total;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == last_positive || remaining == 0) continue;
    const double p = std::max(0.0, probs[i]);
    if (p <= 0.0 || rem_p <= 0.0) continue;
    const double ratio = std::clamp(p / rem_p, 0.0, 1.0);
    long long c;
    if (ratio >= 1.0) {
      c = remaining;
    } else {
      std::binomial_distribution<long long> bin(remaining, ratio);
      c = bin(rng);
    }
    out[i] = c;
    remaining -= c;
    rem_p -= p;
  }
  out[last_positive] += remaining;
  return out;
}

CountsTable sample_measurement(const PureState& state, const std::string& basis,
                               long long shots, const ReadoutNoise& noise,
                               std::uint64_t seed) {
  if (shots < 0) throw OutOfRangeError("shots must be nonnegative");
  const int n = state.qubit_count;
  const std::vector<double> p = noisy_probabilities(state, basis, noise);

  CountsTable table;
  table.basis_label = basis;
  table.shots = shots;
  std::mt19937_64 rng(seed);
  const std::vector<long long> counts = multinomial_sample(p, shots, rng);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    table.counts[to_bitstring(i, n)] = counts[i];
  }
  return table;
}

CalibrationMatrix build_calibration(const ReadoutNoise& noise, int n_qubits,
                                    long long shots_per_basis_state, std::uint64_t seed) {
  if (shots_per_basis_state < 1) throw OutOfRangeError("calibration needs at least one shot");
  const std::size_t dim = std::size_t{1} << n_qubits;
  CalibrationMatrix cal;
  cal.qubit_count = n_qubits;
  cal.M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<cplx> amps(dim, cplx(0.0, 0.0));
    amps[j] = 1.0;
    const PureState basis_state{std::move(amps), n_qubits};
    const CountsTable counts =
        sample_measurement(basis_state, std::string(static_cast<std::size_t>(n_qubits), 'Z'),
                           shots_per_basis_state, noise, derive_seed(seed, j));
    const std::vector<double> f = frequencies(counts);
    for (std::size_t i = 0; i < dim; ++i) {
      cal.M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[i];
    }
  }
  return cal;
}

CalibrationMatrix exact_calibration(const ReadoutNoise& noise, int n_qubits) {
  if (static_cast<int>(noise.per_qubit.size()) != n_qubits) {
    throw DimensionMismatchError("noise model size must equal the qubit count");
  }
  noise.validate();
  const std::size_t dim = std::size_t{1} << n_qubits;
  CalibrationMatrix cal;
  cal.qubit_count = n_qubits;
  cal.M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> p(dim, 0.0);
    p[j] = 1.0;
    apply_flip_channel(p, n_qubits, noise);
    for (std::size_t i = 0; i < dim; ++i) {
      cal.M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[i];
    }
  }
  return cal;
}

std::vector<double> frequencies(const CountsTable& counts) {
  std::size_t dim = 0;
  int n = 0;
  if (!counts.counts.empty()) {
    n = static_cast<int>(counts.counts.begin()->first.size());
    dim = std::size_t{1} << n;
  }
  std::vector<double> f(dim, 0.0);
  if (counts.shots <= 0) return f;
  for (const auto& [bits, c] : counts.counts) {
    std::size_t idx = 0;
    for (char ch : bits) idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
    f[idx] = static_cast<double>(c) / static_cast<double>(counts.shots);
  }
  return f;
}

std::vector<double> mitigate(const std::vector<double>& p_raw, const CalibrationMatrix& m) {
  const Eigen::Index dim = m.M.rows();
  if (static_cast<Eigen::Index>(p_raw.size()) != dim) {
    throw DimensionMismatchError("probability vector and calibration matrix disagree");
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.M);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > 0.0) || smax / smin > 1e12) {
    throw SingularError("calibration matrix is numerically rank-deficient");
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(p_raw.data(), dim);
  Eigen::VectorXd x = nnls(m.M, y);
  const double total = x.sum();
  if (total <= 0.0) {
    throw SingularError("mitigation produced an empty distribution");
  }
  x /= total;
  return std::vector<double>(x.data(), x.data() + dim);
}

std::vector<double> mitigate(const CountsTable& counts, const CalibrationMatrix& m) {
  return mitigate(frequencies(counts), m);
}

DensityMatrix tomography_1q(const SettingProbs& setting_probs) {
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Identity();
  for (const char b : {'X', 'Y', 'Z'}) {
    const auto& p = setting_or_throw(setting_probs, std::string(1, b), 2);
    acc += sign_expectation(p, {0}, 1) * pauli(b);
  }
  return project_physical(acc * 0.5, 1);
}

DensityMatrix tomography_2q(const SettingProbs& setting_probs) {
  const std::array<char, 3> letters = {'X', 'Y', 'Z'};
  // Correlators from the matching setting.
  std::map<std::string, double> expect;
  for (char a : letters) {
    for (char b : letters) {
      const std::string key = std::string(1, a) + b;
      const auto& p = setting_or_throw(setting_probs, key, 4);
      expect[key] = sign_expectation(p, {0, 1}, 2);
    }
  }
  // Single-qubit terms averaged over the three compatible settings.
  for (char a : letters) {
    double e = 0.0;
    for (char b : letters) e += sign_expectation(setting_probs.at(std::string(1, a) + b), {0}, 2);
    expect[std::string(1, a) + 'I'] = e / 3.0;
  }
  for (char b : letters) {
    double e = 0.0;
    for (char a : letters) e += sign_expectation(setting_probs.at(std::string(1, a) + b), {1}, 2);
    expect[std::string(1, 'I') + b] = e / 3.0;
  }
  expect["II"] = 1.0;

  Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
  for (char a : {'I', 'X', 'Y', 'Z'}) {
    for (char b : {'I', 'X', 'Y', 'Z'}) {
      Eigen::Matrix4cd op = Eigen::Matrix4cd::Zero();
      const Eigen::Matrix2cd pa = pauli(a);
      const Eigen::Matrix2cd pb = pauli(b);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          op.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
        }
      }
      acc += expect[std::string(1, a) + b] * op;
    }
  }
  return project_physical(acc * 0.25, 2);
}

std::array<double, 4> bbm_outcome_probabilities(const PureState& global) {
  if (global.qubit_count != 4) {
    throw DimensionMismatchError("a four-qubit state ordered (A, C, C', B) is required");
  }
  // Inverse Bell transform on (C, C'): (H (x) I) * CNOT.
  Eigen::Matrix4cd bd;
  bd << 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, -1, 0, 1, -1, 0;
  bd *= kInvSqrt2;

  std::array<double, 4> probs{};
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      std::array<cplx, 4> v{};
      for (std::size_t m = 0; m < 4; ++m) v[m] = global.amps[8 * a + 2 * m + b];
      for (std::size_t m = 0; m < 4; ++m) {
        cplx f = 0.0;
        for (std::size_t mp = 0; mp < 4; ++mp) {
          f += bd(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp)) * v[mp];
        }
        probs[static_cast<std::size_t>(kOutcomeOfBits[m])] += std::norm(f);
      }
    }
  }
  return probs;
}

PostselectGroups bell_measure_and_postselect(const PureState& global, long long shots,
                                             const ReadoutNoise& noise, std::uint64_t seed) {
  if (global.qubit_count != 4) {
    throw DimensionMismatchError("a four-qubit state ordered (A, C, C', B) is required");
  }
  if (static_cast<int>(noise.per_qubit.size()) != 4) {
    throw DimensionMismatchError("a four-qubit noise model is required");
  }
  if (shots < 0) throw OutOfRangeError("shots must be nonnegative");
  noise.validate();

  PostselectGroups groups;
  groups.shots = shots;
  groups.noise = noise;

  // Conditional AB amplitudes per outcome via the inverse Bell transform.
  Eigen::Matrix4cd bd;
  bd << 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, -1, 0, 1, -1, 0;
  bd *= kInvSqrt2;
  std::array<std::vector<cplx>, 4> ab;
  for (auto& v : ab) v.assign(4, cplx(0.0, 0.0));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t m = 0; m < 4; ++m) {
        cplx f = 0.0;
        for (std::size_t mp = 0; mp < 4; ++mp) {
          f += bd(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp)) *
               global.amps[8 * a + 2 * mp + b];
        }
        ab[static_cast<std::size_t>(kOutcomeOfBits[m])][2 * a + b] = f;
      }
    }
  }
  for (std::size_t k = 0; k < 4; ++k) {
    double prob = 0.0;
    for (const auto& f : ab[k]) prob += std::norm(f);
    groups.exact_probability[k] = prob;
    if (prob >= kProbabilityFloor) {
      groups.conditional_state[k] = renormalized_state(ab[k]);
    }
  }

  // True-outcome allocation (vanishing-probability branches are masked so a
  // branch without a defined conditional state can never receive shots).
  std::vector<double> masked(4);
  for (std::size_t k = 0; k < 4; ++k) {
    masked[k] = groups.exact_probability[k] >= kProbabilityFloor ? groups.exact_probability[k] : 0.0;
  }
  std::mt19937_64 alloc_rng(derive_seed(seed, 0));
  const std::vector<long long> true_alloc = multinomial_sample(masked, shots, alloc_rng);

  // Readout flips on the (C, C') bits scatter true outcomes over observed ones.
  const QubitNoise nc = noise.per_qubit[1];
  const QubitNoise ncp = noise.per_qubit[2];
  auto flip_prob = [](const QubitNoise& qn, int true_bit, int obs_bit) {
    if (true_bit == 0) return obs_bit == 0 ? 1.0 - qn.eps01 : qn.eps01;
    return obs_bit == 1 ? 1.0 - qn.eps10 : qn.eps10;
  };
  for (std::size_t k = 0; k < 4; ++k) {
    if (true_alloc[k] == 0) continue;
    const int m = kBitsOfOutcome[k];
    const int c = (m >> 1) & 1;
    const int cp = m & 1;
    std::vector<double> obs_dist(4, 0.0);
    for (int mo = 0; mo < 4; ++mo) {
      obs_dist[static_cast<std::size_t>(mo)] =
          flip_prob(nc, c, (mo >> 1) & 1) * flip_prob(ncp, cp, mo & 1);
    }
    std::mt19937_64 flip_rng(derive_seed(seed, 1 + k));
    const std::vector<long long> spread = multinomial_sample(obs_dist, true_alloc[k], flip_rng);
    for (int mo = 0; mo < 4; ++mo) {
      const auto ko = static_cast<std::size_t>(kOutcomeOfBits[static_cast<std::size_t>(mo)]);
      groups.composition[ko][k] += spread[static_cast<std::size_t>(mo)];
    }
  }
  for (std::size_t ko = 0; ko < 4; ++ko) {
    long long total = 0;
    for (std::size_t k = 0; k < 4; ++k) total += groups.composition[ko][k];
    groups.observed[ko] = total;
  }
  return groups;
}

CountsTable PostselectGroups::sample_conditional(BellOutcome outcome, const std::string& basis,
                                                 long long n_samples, std::uint64_t seed) const {
  check_basis(basis, 2);
  const auto k = static_cast<std::size_t>(outcome);

  CountsTable table;
  table.basis_label = basis;
  table.shots = 0;
  for (std::size_t i = 0; i < 4; ++i) table.counts[to_bitstring(i, 2)] = 0;
  if (n_samples <= 0 || observed[k] == 0) return table;

  std::vector<double> weights(4, 0.0);
  for (std::size_t j = 0; j < 4; ++j) {
    weights[j] = static_cast<double>(composition[k][j]) / static_cast<double>(observed[k]);
  }
  std::mt19937_64 rng(derive_seed(seed, 0));
  const std::vector<long long> per_branch = multinomial_sample(weights, n_samples, rng);

  const ReadoutNoise ab_noise = noise.subset({0, 3});
  for (std::size_t j = 0; j < 4; ++j) {
    if (per_branch[j] == 0 || !conditional_state[j].has_value()) continue;
    const CountsTable part = sample_measurement(*conditional_state[j], basis, per_branch[j],
                                                ab_noise, derive_seed(seed, 1 + j));
    for (const auto& [bits, c] : part.counts) table.counts[bits] += c;
  }
  table.shots = n_samples;
  return table;
}

}  // namespace eswap
