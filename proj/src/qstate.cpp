#include "eswap/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eswap/errors.hpp"

namespace eswap {

namespace {

int qubit_count_for_dim(std::size_t dim) {
  if (dim < 2) return -1;
  int n = 0;
  std::size_t d = dim;
  while (d > 1) {
    if (d % 2 != 0) return -1;
    d /= 2;
    ++n;
  }
  return n;
}

void canonicalize_phase(std::vector<cplx>& amps) {
  for (auto& a : amps) {
    if (std::abs(a) > 1e-12) {
      const cplx rot = std::conj(a) / std::abs(a);
      for (auto& b : amps) b *= rot;
      return;
    }
  }
}

}  // namespace

PureState make_state(std::vector<cplx> amps) {
  const int n = qubit_count_for_dim(amps.size());
  if (n < 0) {
    throw DimensionMismatchError("amplitude vector length must be 2^n with n >= 1");
  }
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  if (norm_sq < kInputNormTol) {
    throw ZeroNormError("state norm is (near) zero");
  }
  if (std::abs(norm_sq - 1.0) > kInputNormTol) {
    throw NotNormalizableError("state norm deviates from 1 beyond the accepted band");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  canonicalize_phase(amps);
  return PureState{std::move(amps), n};
}

PureState make_pair_state(cplx c00, cplx c01, cplx c10, cplx c11) {
  return make_state({c00, c01, c10, c11});
}

PureState renormalized_state(std::vector<cplx> amps) {
  const int n = qubit_count_for_dim(amps.size());
  if (n < 0) {
    throw DimensionMismatchError("amplitude vector length must be 2^n with n >= 1");
  }
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  if (norm_sq < 1e-300) throw ZeroNormError("cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  canonicalize_phase(amps);
  return PureState{std::move(amps), n};
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<cplx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      out[i * b.dim() + j] = a.amps[i] * b.amps[j];
    }
  }
  // Inputs are canonical and unit-norm, so the product already is; avoid
  // re-canonicalizing to keep tensor exactly associative.
  return PureState{std::move(out), a.qubit_count + b.qubit_count};
}

DensityMatrix density_of(const PureState& s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  Eigen::Map<const Eigen::VectorXcd> v(s.amps.data(), d);
  DensityMatrix rho;
  rho.entries = v * v.adjoint();
  rho.qubit_count = s.qubit_count;
  return rho;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.qubit_count;
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) throw BadSubsetError("keep set must be nonempty");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw BadSubsetError("keep set repeats a qubit index");
  }
  if (kept.front() < 0 || kept.back() >= n) {
    throw BadSubsetError("keep set contains an out-of-range qubit index");
  }
  if (static_cast<int>(kept.size()) >= n) {
    throw BadSubsetError("keep set must be a strict subset of the qubits");
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t dt = std::size_t{1} << nt;

  // Big-endian: qubit q contributes bit (n - 1 - q).
  auto full_index = [&](std::size_t ik, std::size_t it) {
    std::size_t idx = 0;
    for (int a = 0; a < nk; ++a) {
      const std::size_t bit = (ik >> (nk - 1 - a)) & 1u;
      idx |= bit << (n - 1 - kept[static_cast<std::size_t>(a)]);
    }
    for (int a = 0; a < nt; ++a) {
      const std::size_t bit = (it >> (nt - 1 - a)) & 1u;
      idx |= bit << (n - 1 - traced[static_cast<std::size_t>(a)]);
    }
    return idx;
  };

  DensityMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk),
                                       static_cast<Eigen::Index>(dk));
  out.qubit_count = nk;
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      cplx sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        sum += rho.entries(static_cast<Eigen::Index>(full_index(i, t)),
                           static_cast<Eigen::Index>(full_index(j, t)));
      }
      out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const PureState& s, const std::vector<int>& keep) {
  return partial_trace(density_of(s), keep);
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.qubit_count != 1 || rho.dim() != 2) {
    throw DimensionMismatchError("bloch_of requires a one-qubit density matrix");
  }
  BlochVector b;
  b.r_z = (rho.entries(0, 0) - rho.entries(1, 1)).real();
  b.r_x = 2.0 * rho.entries(0, 1).real();
  b.r_y = -2.0 * rho.entries(0, 1).imag();
  b.r = std::sqrt(b.r_x * b.r_x + b.r_y * b.r_y + b.r_z * b.r_z);
  b.theta = (b.r > 0.0) ? std::acos(std::clamp(b.r_z / b.r, -1.0, 1.0)) : 0.0;
  if (b.r_x == 0.0 && b.r_y == 0.0) {
    b.phi = 0.0;
  } else {
    b.phi = std::atan2(b.r_y, b.r_x);
    if (b.phi < 0.0) b.phi += 2.0 * std::numbers::pi;
    if (b.phi >= 2.0 * std::numbers::pi) b.phi = 0.0;
  }
  return b;
}

PureState apply_rz(const PureState& s, int qubit, double phi) {
  const int n = s.qubit_count;
  if (qubit < 0 || qubit >= n) throw BadIndexError("qubit index out of range");
  const cplx up = std::polar(1.0, +phi / 2.0);
  const cplx down = std::polar(1.0, -phi / 2.0);
  std::vector<cplx> amps = s.amps;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool bit = (i >> (n - 1 - qubit)) & 1u;
    amps[i] *= bit ? down : up;
  }
  canonicalize_phase(amps);
  return PureState{std::move(amps), n};
}

PureState haar_random_pure(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1) throw BadIndexError("qubit count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  double norm_sq = 0.0;
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = cplx(re, im);
    norm_sq += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  canonicalize_phase(amps);
  return PureState{std::move(amps), n_qubits};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double max_amp_distance(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("states differ in dimension");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
  }
  return m;
}

}  // namespace eswap
