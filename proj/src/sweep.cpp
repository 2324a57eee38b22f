#include "eswap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eswap/errors.hpp"
#include "eswap/measures.hpp"
#include "eswap/swap.hpp"

namespace eswap {

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void parallel_for(std::size_t n_jobs, int threads, const std::function<void(std::size_t)>& fn) {
  if (n_jobs == 0) return;
  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_jobs));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_jobs) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

constexpr int kModeRankTheory = 0;
constexpr int kModeRankIdeal = 1;
constexpr int kModeRankNoisy = 2;

int mode_rank(Mode m) {
  switch (m) {
    case Mode::Theory:
      return kModeRankTheory;
    case Mode::IdealSim:
      return kModeRankIdeal;
    case Mode::NoisySim:
      return kModeRankNoisy;
  }
  return kModeRankTheory;
}

bool has_shot_mode(const std::vector<Mode>& modes) {
  for (Mode m : modes) {
    if (m != Mode::Theory) return true;
  }
  return false;
}

std::vector<Mode> canonical_modes(const std::vector<Mode>& modes) {
  std::vector<Mode> out;
  for (Mode candidate : {Mode::Theory, Mode::IdealSim, Mode::NoisySim}) {
    if (std::find(modes.begin(), modes.end(), candidate) != modes.end()) {
      out.push_back(candidate);
    }
  }
  return out;
}

struct ResolvedConfig {
  std::vector<double> q_values;
  std::vector<double> p_values;
  std::vector<Mode> modes;
  SweepConfig base;
};

ResolvedConfig resolve_config(const SweepConfig& config, bool force_fig2) {
  SweepConfig cfg = config;
  if (cfg.shots < 1) throw ConfigError("shots must be >= 1");
  if (cfg.eps01 < 0.0 || cfg.eps01 >= 0.5 || cfg.eps10 < 0.0 || cfg.eps10 >= 0.5) {
    throw ConfigError("noise rates must lie in [0, 0.5)");
  }
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
  if (force_fig2) {
    cfg.preparation = Preparation::Hadamard;
    cfg.p_rule = PRule::OneMinusQ;
  }

  ResolvedConfig r;
  r.modes = canonical_modes(cfg.modes);
  if (r.modes.empty()) throw ConfigError("at least one mode is required");

  r.q_values = cfg.q_values.empty() ? default_q_grid() : cfg.q_values;
  if (r.q_values.empty()) throw ConfigError("q grid is empty");
  for (double& q : r.q_values) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q values must lie in [0, 1]");
    if (has_shot_mode(r.modes)) q = std::clamp(q, kQClampLow, kQClampHigh);
  }

  r.p_values.resize(r.q_values.size());
  switch (cfg.p_rule) {
    case PRule::EqualQ:
      for (std::size_t i = 0; i < r.q_values.size(); ++i) r.p_values[i] = r.q_values[i];
      break;
    case PRule::OneMinusQ:
      for (std::size_t i = 0; i < r.q_values.size(); ++i) r.p_values[i] = 1.0 - r.q_values[i];
      break;
    case PRule::Explicit:
      if (cfg.explicit_p.size() != r.q_values.size()) {
        throw ConfigError("explicit p list must match the q grid length");
      }
      for (double p : cfg.explicit_p) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p values must lie in [0, 1]");
      }
      r.p_values = cfg.explicit_p;
      break;
  }
  r.base = cfg;
  return r;
}

std::vector<long long> block_shots(long long shots, int blocks) {
  const long long base = shots / blocks;
  const long long rem = shots % blocks;
  std::vector<long long> out(static_cast<std::size_t>(blocks), base);
  for (long long b = 0; b < rem; ++b) out[static_cast<std::size_t>(b)] += 1;
  return out;
}

std::vector<long long> dense_counts(const CountsTable& table) {
  const std::size_t dim = std::size_t{1} << table.basis_label.size();
  std::vector<long long> out(dim, 0);
  for (const auto& [bits, c] : table.counts) {
    std::size_t idx = 0;
    for (char ch : bits) idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
    out[idx] = c;
  }
  return out;
}

std::vector<double> counts_to_probs(const std::vector<long long>& counts) {
  long long total = 0;
  for (long long c : counts) total += c;
  std::vector<double> p(counts.size(), 0.0);
  if (total > 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
  }
  return p;
}

double jackknife_stderr(const std::vector<double>& leave_one_out) {
  const auto k = static_cast<double>(leave_one_out.size());
  if (leave_one_out.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : leave_one_out) mean += v;
  mean /= k;
  double ss = 0.0;
  for (double v : leave_one_out) ss += (v - mean) * (v - mean);
  return std::sqrt((k - 1.0) / k * ss);
}

const std::array<std::string, 9> kTwoQubitSettings = {"XX", "XY", "XZ", "YX", "YY",
                                                      "YZ", "ZX", "ZY", "ZZ"};

// Pooled per-setting counts -> (optionally mitigated) probabilities -> state.
SettingProbs probs_from_counts(
    const std::array<std::vector<std::vector<long long>>, 9>& counts_by_setting,
    const std::vector<bool>& use_block, const CalibrationMatrix* cal) {
  SettingProbs sp;
  for (std::size_t s = 0; s < 9; ++s) {
    std::vector<long long> pooled;
    for (std::size_t b = 0; b < counts_by_setting[s].size(); ++b) {
      if (!use_block[b]) continue;
      const auto& blk = counts_by_setting[s][b];
      if (pooled.empty()) pooled.assign(blk.size(), 0);
      for (std::size_t i = 0; i < blk.size(); ++i) pooled[i] += blk[i];
    }
    std::vector<double> p = counts_to_probs(pooled);
    double mass = 0.0;
    for (double v : p) mass += v;
    if (cal != nullptr && mass > 0.0) p = mitigate(p, *cal);
    sp[kTwoQubitSettings[s]] = std::move(p);
  }
  return sp;
}

struct Fig1Estimates {
  double c_c = 0.0;
  double p_c = 0.0;
  double e_ab = 0.0;
};

Fig1Estimates fig1_quantities(const SettingProbs& sp) {
  const DensityMatrix rho = tomography_2q(sp);
  const DensityMatrix reduced = partial_trace(rho, {1});
  Fig1Estimates est;
  est.c_c = l1_coherence(reduced);
  est.p_c = predictability(reduced);
  est.e_ab = concurrence_mixed(rho);
  return est;
}

void sort_rows(std::vector<FigureRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const FigureRow& a, const FigureRow& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.quantity != b.quantity) return a.quantity < b.quantity;
    return a.mode < b.mode;
  });
}

constexpr std::uint64_t kCalibrationSeedIndex = 1000003;
constexpr std::uint64_t kCalibrationSeedIndexAb = 1000033;

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Theory:
      return "theory";
    case Mode::IdealSim:
      return "ideal_sim";
    case Mode::NoisySim:
      return "noisy_sim";
  }
  return "?";
}

const char* to_string(Preparation p) {
  return p == Preparation::Computational ? "computational" : "hadamard";
}

const char* to_string(PRule r) {
  switch (r) {
    case PRule::EqualQ:
      return "equal_q";
    case PRule::OneMinusQ:
      return "one_minus_q";
    case PRule::Explicit:
      return "explicit";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "theory") return Mode::Theory;
  if (s == "ideal_sim") return Mode::IdealSim;
  if (s == "noisy_sim") return Mode::NoisySim;
  throw ConfigError("unknown mode '" + s + "' (expected theory, ideal_sim, noisy_sim)");
}

Preparation preparation_from_string(const std::string& s) {
  if (s == "computational") return Preparation::Computational;
  if (s == "hadamard") return Preparation::Hadamard;
  throw ConfigError("unknown preparation '" + s + "' (expected computational, hadamard)");
}

PRule p_rule_from_string(const std::string& s) {
  if (s == "equal_q") return PRule::EqualQ;
  if (s == "one_minus_q") return PRule::OneMinusQ;
  if (s == "explicit") return PRule::Explicit;
  throw ConfigError("unknown p rule '" + s + "' (expected equal_q, one_minus_q, explicit)");
}

std::vector<double> default_q_grid(int steps, double q_min, double q_max) {
  if (steps < 1 || q_max < q_min) throw ConfigError("invalid q grid parameters");
  std::vector<double> q(static_cast<std::size_t>(steps));
  if (steps == 1) {
    q[0] = q_min;
    return q;
  }
  for (int i = 0; i < steps; ++i) {
    q[static_cast<std::size_t>(i)] = q_min + (q_max - q_min) * i / (steps - 1);
  }
  return q;
}

PureState prepare_pair(Preparation prep, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("preparation weight must lie in [0, 1]");
  const double a = std::sqrt(p);
  const double b = std::sqrt(1.0 - p);
  if (prep == Preparation::Computational) {
    return make_pair_state(a, 0.0, 0.0, b);
  }
  // sqrt(p)|++> + sqrt(1-p)|-->
  return make_pair_state(0.5 * (a + b), 0.5 * (a - b), 0.5 * (a - b), 0.5 * (a + b));
}

std::vector<FigureRow> run_fig1(const SweepConfig& config) {
  const ResolvedConfig rc = resolve_config(config, /*force_fig2=*/false);
  const std::size_t nq = rc.q_values.size();

  // Shared device calibration for the noisy mode (one per run).
  CalibrationMatrix cal;
  bool have_cal = false;
  if (std::find(rc.modes.begin(), rc.modes.end(), Mode::NoisySim) != rc.modes.end()) {
    const ReadoutNoise noise = ReadoutNoise::uniform(rc.base.eps01, rc.base.eps10, 2);
    cal = build_calibration(noise, 2, rc.base.shots,
                            derive_seed(rc.base.seed, kCalibrationSeedIndex));
    have_cal = true;
  }

  const std::size_t n_jobs = rc.modes.size() * nq;
  std::vector<std::vector<FigureRow>> per_job(n_jobs);

  parallel_for(n_jobs, rc.base.threads, [&](std::size_t job) {
    const Mode mode = rc.modes[job / nq];
    const std::size_t qi = job % nq;
    const double q = rc.q_values[qi];
    const double p = rc.p_values[qi];
    auto& rows = per_job[job];

    if (mode == Mode::Theory) {
      const double imbalance = std::abs(2.0 * p - 1.0);
      const double ent = 2.0 * std::sqrt(p * (1.0 - p));
      const bool hadamard = rc.base.preparation == Preparation::Hadamard;
      rows.push_back({q, "C_C", "theory", hadamard ? imbalance : 0.0, std::nullopt, ""});
      rows.push_back({q, "P_C", "theory", hadamard ? 0.0 : imbalance, std::nullopt, ""});
      rows.push_back({q, "E_AC", "theory", ent, std::nullopt, ""});
      return;
    }

    const bool noisy = mode == Mode::NoisySim;
    const ReadoutNoise noise = noisy ? ReadoutNoise::uniform(rc.base.eps01, rc.base.eps10, 2)
                                     : ReadoutNoise::none(2);
    const CalibrationMatrix* cal_ptr = (noisy && have_cal) ? &cal : nullptr;
    const PureState state = prepare_pair(rc.base.preparation, p);
    const std::uint64_t job_seed =
        derive_seed(rc.base.seed, static_cast<std::uint64_t>(mode_rank(mode)) * nq + qi);

    const std::vector<long long> blocks = block_shots(rc.base.shots, kJackknifeBlocks);
    std::array<std::vector<std::vector<long long>>, 9> counts;
    for (std::size_t s = 0; s < 9; ++s) {
      counts[s].resize(blocks.size());
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        counts[s][b] = dense_counts(sample_measurement(
            state, kTwoQubitSettings[s], blocks[b], noise,
            derive_seed(job_seed, 1 + s * blocks.size() + b)));
      }
    }

    const std::vector<bool> all_blocks(blocks.size(), true);
    const Fig1Estimates full = fig1_quantities(probs_from_counts(counts, all_blocks, cal_ptr));
    std::vector<double> jk_c, jk_p, jk_e;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::vector<bool> use = all_blocks;
      use[b] = false;
      const Fig1Estimates est = fig1_quantities(probs_from_counts(counts, use, cal_ptr));
      jk_c.push_back(est.c_c);
      jk_p.push_back(est.p_c);
      jk_e.push_back(est.e_ab);
    }
    const char* tag = to_string(mode);
    rows.push_back({q, "C_C", tag, full.c_c, jackknife_stderr(jk_c), ""});
    rows.push_back({q, "P_C", tag, full.p_c, jackknife_stderr(jk_p), ""});
    rows.push_back({q, "E_AC", tag, full.e_ab, jackknife_stderr(jk_e), ""});
  });

  std::vector<FigureRow> rows;
  for (auto& part : per_job) {
    for (auto& r : part) rows.push_back(std::move(r));
  }
  sort_rows(rows);
  return rows;
}

namespace {

const std::array<std::string, 4> kOutcomeQuantity = {"E_PhiPlus", "E_PhiMinus", "E_PsiPlus",
                                                     "E_PsiMinus"};

double theory_partial_concurrence(double q) {
  const double denom = q * q + (1.0 - q) * (1.0 - q);
  return 2.0 * q * (1.0 - q) / denom;
}

}  // namespace

std::vector<FigureRow> run_fig2(const SweepConfig& config) {
  const ResolvedConfig rc = resolve_config(config, /*force_fig2=*/true);
  const std::size_t nq = rc.q_values.size();

  CalibrationMatrix cal_mid, cal_ab;
  bool have_cal = false;
  if (std::find(rc.modes.begin(), rc.modes.end(), Mode::NoisySim) != rc.modes.end()) {
    const ReadoutNoise noise4 = ReadoutNoise::uniform(rc.base.eps01, rc.base.eps10, 4);
    cal_mid = build_calibration(noise4.subset({1, 2}), 2, rc.base.shots,
                                derive_seed(rc.base.seed, kCalibrationSeedIndex));
    cal_ab = build_calibration(noise4.subset({0, 3}), 2, rc.base.shots,
                               derive_seed(rc.base.seed, kCalibrationSeedIndexAb));
    have_cal = true;
  }

  const std::size_t n_jobs = rc.modes.size() * nq;
  std::vector<std::vector<FigureRow>> per_job(n_jobs);

  parallel_for(n_jobs, rc.base.threads, [&](std::size_t job) {
    const Mode mode = rc.modes[job / nq];
    const std::size_t qi = job % nq;
    const double q = rc.q_values[qi];
    auto& rows = per_job[job];

    if (mode == Mode::Theory) {
      const double partial = theory_partial_concurrence(q);
      const double identity = (2.0 * q - 1.0) * (2.0 * q - 1.0);
      rows.push_back({q, "E_PhiPlus", "theory", 1.0, std::nullopt, ""});
      rows.push_back({q, "E_PhiMinus", "theory", partial, std::nullopt, ""});
      rows.push_back({q, "E_PsiPlus", "theory", 1.0, std::nullopt, ""});
      rows.push_back({q, "E_PsiMinus", "theory", partial, std::nullopt, ""});
      rows.push_back({q, "prob_identity", "theory", identity, std::nullopt, ""});
      return;
    }

    const bool noisy = mode == Mode::NoisySim;
    const ReadoutNoise noise4 = noisy ? ReadoutNoise::uniform(rc.base.eps01, rc.base.eps10, 4)
                                      : ReadoutNoise::none(4);
    const PureState xi = prepare_pair(Preparation::Hadamard, rc.p_values[qi]);
    const PureState eta = prepare_pair(Preparation::Hadamard, q);
    const PureState global = tensor(xi, eta);
    const std::uint64_t job_seed =
        derive_seed(rc.base.seed, static_cast<std::uint64_t>(mode_rank(mode)) * nq + qi);
    const char* tag = to_string(mode);

    const PostselectGroups groups =
        bell_measure_and_postselect(global, rc.base.shots, noise4, derive_seed(job_seed, 0));

    bool any_under_floor = false;
    for (long long n : groups.observed) any_under_floor |= (n < kShotFloor);

    // Outcome-frequency quantity: 1 - 2 (Pr(PhiPlus) + Pr(PsiPlus)).
    {
      // Frequencies indexed by the post-transform bit pattern so the midpoint
      // calibration matrix (built over computational states) applies.
      constexpr std::array<int, 4> bits_of_outcome = {0, 2, 1, 3};
      std::vector<double> freq(4, 0.0);
      for (std::size_t k = 0; k < 4; ++k) {
        freq[static_cast<std::size_t>(bits_of_outcome[k])] =
            static_cast<double>(groups.observed[k]) / static_cast<double>(groups.shots);
      }
      std::vector<double> est = freq;
      if (noisy && have_cal) est = mitigate(freq, cal_mid);
      const double pr_plus = est[static_cast<std::size_t>(bits_of_outcome[0])] +
                             est[static_cast<std::size_t>(bits_of_outcome[2])];
      const double value = 1.0 - 2.0 * pr_plus;
      const double raw_plus = freq[static_cast<std::size_t>(bits_of_outcome[0])] +
                              freq[static_cast<std::size_t>(bits_of_outcome[2])];
      const double se =
          2.0 * std::sqrt(std::max(0.0, raw_plus * (1.0 - raw_plus) /
                                            static_cast<double>(groups.shots)));
      rows.push_back(
          {q, "prob_identity", tag, value, se, any_under_floor ? "low_stats" : ""});
    }

    const std::vector<long long> blocks = block_shots(rc.base.shots, kJackknifeBlocks);
    const CalibrationMatrix* cal_ptr = (noisy && have_cal) ? &cal_ab : nullptr;
    for (std::size_t k = 0; k < 4; ++k) {
      const BellOutcome outcome = kBellOutcomes[k];
      const std::string flag = groups.observed[k] < kShotFloor ? "low_stats" : "";
      if (groups.observed[k] == 0) {
        rows.push_back({q, kOutcomeQuantity[k], tag,
                        std::numeric_limits<double>::quiet_NaN(), std::nullopt, "low_stats"});
        continue;
      }
      std::array<std::vector<std::vector<long long>>, 9> counts;
      for (std::size_t s = 0; s < 9; ++s) {
        counts[s].resize(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
          counts[s][b] = dense_counts(groups.sample_conditional(
              outcome, kTwoQubitSettings[s], blocks[b],
              derive_seed(job_seed, 1 + (k * 9 + s) * blocks.size() + b)));
        }
      }
      const std::vector<bool> all_blocks(blocks.size(), true);
      const DensityMatrix rho = tomography_2q(probs_from_counts(counts, all_blocks, cal_ptr));
      const double value = concurrence_mixed(rho);
      std::vector<double> jk;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::vector<bool> use = all_blocks;
        use[b] = false;
        jk.push_back(
            concurrence_mixed(tomography_2q(probs_from_counts(counts, use, cal_ptr))));
      }
      rows.push_back({q, kOutcomeQuantity[k], tag, value, jackknife_stderr(jk), flag});
    }
  });

  std::vector<FigureRow> rows;
  for (auto& part : per_job) {
    for (auto& r : part) rows.push_back(std::move(r));
  }
  sort_rows(rows);
  return rows;
}

namespace {

struct SuiteAccumulator {
  double max_dev = 0.0;
  std::uint64_t worst_seed = 0;

  void feed(double dev, std::uint64_t seed) {
    if (dev > max_dev) {
      max_dev = dev;
      worst_seed = seed;
    }
  }
};

VerifySuiteResult verify_ccr(int trials, std::uint64_t seed) {
  SuiteAccumulator acc;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const PureState state = haar_random_pure(2, s);
    for (int qubit : {0, 1}) {
      acc.feed(std::abs(measure_triple(state, qubit).ccr_residual), s);
    }
  }
  return {"ccr", acc.max_dev <= 1e-10, acc.max_dev, 1e-10, acc.worst_seed,
          "max |P^2 + C^2 + E^2 - 1| over random two-qubit pure states"};
}

VerifySuiteResult verify_swap_oracle(int trials, std::uint64_t seed) {
  SuiteAccumulator acc;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s1 = derive_seed(seed, 2 * static_cast<std::uint64_t>(t));
    const std::uint64_t s2 = derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1);
    const PureState xi = haar_random_pure(2, s1);
    const PureState eta = haar_random_pure(2, s2);
    const VerifyReport report = predict_and_verify(xi, eta);
    double prob_sum = 0.0;
    for (const auto& o : report.oracle.outcomes) prob_sum += o.probability;
    acc.feed(std::max(report.max_difference, std::abs(prob_sum - 1.0)), s1);
  }
  return {"swap_oracle", acc.max_dev <= 1e-10, acc.max_dev, 1e-10, acc.worst_seed,
          "max |analytic - brute-force| concurrence and probability-sum drift"};
}

VerifySuiteResult verify_probabilities(int trials, std::uint64_t seed) {
  SuiteAccumulator acc;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s1 = derive_seed(seed, 2 * static_cast<std::uint64_t>(t));
    const std::uint64_t s2 = derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1);
    const AlignResult aligned =
        align_phases(haar_random_pure(2, s1), haar_random_pure(2, s2));
    const SwapResult oracle = decompose(aligned.xi, aligned.eta);

    const DensityMatrix rho_c = partial_trace(aligned.xi, {1});
    const DensityMatrix rho_cp = partial_trace(aligned.eta, {0});
    const double pp = predictability(rho_c) * predictability(rho_cp) *
                      sign_of(bloch_of(rho_c).r_z) * sign_of(bloch_of(rho_cp).r_z);
    const double cc = l1_coherence(rho_c) * l1_coherence(rho_cp);

    const std::array<double, 4> rewritten = {
        (1.0 + pp + cc) / 4.0,  // PhiPlus
        (1.0 + pp - cc) / 4.0,  // PhiMinus
        (1.0 - pp + cc) / 4.0,  // PsiPlus
        (1.0 - pp - cc) / 4.0,  // PsiMinus
    };
    double prob_sum = 0.0;
    double dev = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      prob_sum += oracle.outcomes[k].probability;
      dev = std::max(dev, std::abs(oracle.outcomes[k].probability - rewritten[k]));
    }
    dev = std::max(dev, std::abs(prob_sum - 1.0));
    acc.feed(dev, s1);
  }
  return {"probabilities", acc.max_dev <= 1e-10, acc.max_dev, 1e-10, acc.worst_seed,
          "outcome probabilities vs the predictability/coherence rewrite"};
}

// Counts how far the set of maximally entangled outcomes is from `expected`:
// 0 when they coincide (within tol of concurrence 1), 1 otherwise.
double max_entangled_set_deviation(const SwapResult& oracle, std::vector<BellOutcome> expected,
                                   double tol) {
  double dev = 0.0;
  std::vector<BellOutcome> found;
  for (std::size_t k = 0; k < 4; ++k) {
    if (oracle.outcomes[k].post_concurrence.has_value() &&
        std::abs(*oracle.outcomes[k].post_concurrence - 1.0) <= tol) {
      found.push_back(kBellOutcomes[k]);
    }
  }
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  if (found != expected) return 1.0;
  for (BellOutcome o : expected) {
    dev = std::max(dev, std::abs(*oracle.at(o).post_concurrence - 1.0));
  }
  return dev;
}

VerifySuiteResult verify_special_cases(int trials, std::uint64_t seed) {
  SuiteAccumulator acc;
  constexpr double tol = 1e-10;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Zero coherence, equal predictability.  Same hemisphere puts the
    // maximal entanglement on the Psi pair, opposite hemisphere on Phi.
    {
      const double p = 0.55 + 0.4 * unit(rng);
      const bool same_hemisphere = unit(rng) < 0.5;
      const PureState xi = prepare_pair(Preparation::Computational, p);
      const PureState eta = prepare_pair(Preparation::Computational,
                                         same_hemisphere ? p : 1.0 - p);
      const SwapResult oracle = decompose(xi, eta);
      const std::vector<BellOutcome> expected =
          same_hemisphere
              ? std::vector<BellOutcome>{BellOutcome::PsiPlus, BellOutcome::PsiMinus}
              : std::vector<BellOutcome>{BellOutcome::PhiPlus, BellOutcome::PhiMinus};
      acc.feed(max_entangled_set_deviation(oracle, expected, tol), s);
    }

    // Zero predictability, equal coherence (after alignment): the minus pair.
    {
      const double p = 0.52 + 0.46 * unit(rng);
      const bool mirrored = unit(rng) < 0.5;
      const PureState xi = prepare_pair(Preparation::Hadamard, p);
      const PureState eta = prepare_pair(Preparation::Hadamard, mirrored ? 1.0 - p : p);
      const AlignResult aligned = align_phases(xi, eta);
      const SwapResult oracle = decompose(aligned.xi, aligned.eta);
      acc.feed(max_entangled_set_deviation(
                   oracle, {BellOutcome::PhiMinus, BellOutcome::PsiMinus}, tol),
               s);
    }

    // Equal nonzero predictability and coherence: exactly one maximally
    // entangled outcome, selected by the hemisphere sign.
    {
      const double radius = 0.15 + 0.75 * unit(rng);
      const double angle = 0.1 + (std::numbers::pi / 2 - 0.2) * unit(rng);
      const double pred = radius * std::cos(angle);
      const double coh = radius * std::sin(angle);
      const bool same_hemisphere = unit(rng) < 0.5;

      auto schmidt_pair = [&](double rz, bool marginal_on_first) {
        const double r = std::sqrt(rz * rz + coh * coh);
        const double mu_plus = std::sqrt((1.0 + r) / 2.0);
        const double mu_minus = std::sqrt((1.0 - r) / 2.0);
        const double beta = std::atan2(coh, rz);
        const double m0 = std::cos(beta / 2.0);
        const double m1 = std::sin(beta / 2.0);
        if (marginal_on_first) {
          // marginal qubit first: sqrt(mu+) m+ (x) |0> + sqrt(mu-) m- (x) |1>
          return make_pair_state(mu_plus * m0, -mu_minus * m1, mu_plus * m1, mu_minus * m0);
        }
        // marginal qubit second: sqrt(mu+) |0> (x) m+ + sqrt(mu-) |1> (x) m-
        return make_pair_state(mu_plus * m0, mu_plus * m1, -mu_minus * m1, mu_minus * m0);
      };
      const PureState xi = schmidt_pair(pred, /*marginal_on_first=*/false);
      const PureState eta = schmidt_pair(same_hemisphere ? pred : -pred,
                                         /*marginal_on_first=*/true);
      const SwapResult oracle = decompose(xi, eta);
      const std::vector<BellOutcome> expected =
          same_hemisphere ? std::vector<BellOutcome>{BellOutcome::PsiMinus}
                          : std::vector<BellOutcome>{BellOutcome::PhiMinus};
      acc.feed(max_entangled_set_deviation(oracle, expected, tol), s);
    }
  }
  return {"special_cases", acc.max_dev <= 1e-10, acc.max_dev, 1e-10, acc.worst_seed,
          "maximally entangled outcome sets for the structured preparations"};
}

VerifySuiteResult verify_mitigation(int trials, std::uint64_t seed) {
  const ReadoutNoise noise = ReadoutNoise::uniform(0.02, 0.04, 2);
  int improved = 0;
  double worst_gap = -1.0;
  std::uint64_t worst_seed = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, 3 * static_cast<std::uint64_t>(t));
    const PureState state = haar_random_pure(2, s);
    const CalibrationMatrix cal = build_calibration(
        noise, 2, 8192, derive_seed(seed, 3 * static_cast<std::uint64_t>(t) + 1));
    const CountsTable counts = sample_measurement(
        state, "ZZ", 8192, noise, derive_seed(seed, 3 * static_cast<std::uint64_t>(t) + 2));
    const std::vector<double> ideal = exact_probabilities(state, "ZZ");
    const std::vector<double> raw = frequencies(counts);
    const std::vector<double> corrected = mitigate(counts, cal);
    double tv_raw = 0.0;
    double tv_mit = 0.0;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
      tv_raw += std::abs(raw[i] - ideal[i]);
      tv_mit += std::abs(corrected[i] - ideal[i]);
    }
    tv_raw *= 0.5;
    tv_mit *= 0.5;
    if (tv_mit < tv_raw) {
      ++improved;
    } else if (tv_mit - tv_raw > worst_gap) {
      worst_gap = tv_mit - tv_raw;
      worst_seed = s;
    }
  }
  const double rate = trials > 0 ? static_cast<double>(improved) / trials : 0.0;
  std::ostringstream detail;
  detail << "mitigation reduced total-variation distance in " << improved << "/" << trials
         << " trials";
  return {"mitigation", rate >= 0.95, 1.0 - rate, 0.05, worst_seed, detail.str()};
}

}  // namespace

std::vector<VerifySuiteResult> run_verify(const std::string& suite, int trials,
                                          std::uint64_t seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (suite == "ccr") return {verify_ccr(trials, seed)};
  if (suite == "swap_oracle") return {verify_swap_oracle(trials, seed)};
  if (suite == "probabilities") return {verify_probabilities(trials, seed)};
  if (suite == "special_cases") return {verify_special_cases(trials, seed)};
  if (suite == "mitigation") return {verify_mitigation(trials, seed)};
  if (suite == "all") {
    return {verify_ccr(trials, seed), verify_swap_oracle(trials, seed),
            verify_probabilities(trials, seed), verify_special_cases(trials, seed),
            verify_mitigation(trials, seed)};
  }
  throw UnknownSuiteError("unknown suite '" + suite +
                          "' (expected ccr, swap_oracle, probabilities, special_cases, "
                          "mitigation, all)");
}

std::string format_g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_csv(const std::vector<FigureRow>& rows, std::ostream& os) {
  os << "q,quantity,mode,value,stderr,flags\n";
  for (const auto& r : rows) {
    os << format_g12(r.q) << ',' << r.quantity << ',' << r.mode << ',' << format_g12(r.value)
       << ',' << (r.std_error.has_value() ? format_g12(*r.std_error) : std::string()) << ','
       << r.flags << '\n';
  }
}

void emit_json(const std::vector<FigureRow>& rows, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    obj["q"] = r.q;
    obj["quantity"] = r.quantity;
    obj["mode"] = r.mode;
    if (std::isnan(r.value)) {
      obj["value"] = nullptr;
    } else {
      obj["value"] = r.value;
    }
    if (r.std_error.has_value()) {
      obj["stderr"] = *r.std_error;
    } else {
      obj["stderr"] = nullptr;
    }
    obj["flags"] = r.flags;
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void emit(const std::vector<FigureRow>& rows, const std::string& format,
          const std::string& path) {
  const bool csv = format == "csv";
  if (!csv && format != "json") {
    throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
  }
  if (path == "-") {
    if (csv) {
      emit_csv(rows, std::cout);
    } else {
      emit_json(rows, std::cout);
    }
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (csv) {
    emit_csv(rows, out);
  } else {
    emit_json(rows, out);
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<FigureRow> parse_csv(std::istream& is) {
  std::vector<FigureRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (first) {
      first = false;
      continue;  // header
    }
    if (line.empty()) continue;
    std::array<std::string, 6> fields;
    std::size_t start = 0;
    for (std::size_t f = 0; f < 6; ++f) {
      const std::size_t comma = f < 5 ? line.find(',', start) : std::string::npos;
      fields[f] = line.substr(start, comma == std::string::npos ? comma : comma - start);
      if (comma == std::string::npos && f < 5) {
        throw IoError("malformed row: " + line);
      }
      start = comma + 1;
    }
    FigureRow r;
    r.q = std::stod(fields[0]);
    r.quantity = fields[1];
    r.mode = fields[2];
    r.value = std::stod(fields[3]);
    if (!fields[4].empty()) r.std_error = std::stod(fields[4]);
    r.flags = fields[5];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace eswap
