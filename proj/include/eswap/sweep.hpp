#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eswap/shots.hpp"

namespace eswap {

enum class Mode { Theory, IdealSim, NoisySim };
enum class Preparation { Computational, Hadamard };
enum class PRule { EqualQ, OneMinusQ, Explicit };

const char* to_string(Mode m);
const char* to_string(Preparation p);
const char* to_string(PRule r);
Mode mode_from_string(const std::string& s);                // ConfigError
Preparation preparation_from_string(const std::string& s);  // ConfigError
PRule p_rule_from_string(const std::string& s);              // ConfigError

inline constexpr long long kDefaultShots = 8192;
inline constexpr double kDefaultEps01 = 0.02;
inline constexpr double kDefaultEps10 = 0.04;
inline constexpr std::uint64_t kDefaultSeed = 1234;
inline constexpr int kDefaultQSteps = 21;
inline constexpr double kQClampLow = 0.03;
inline constexpr double kQClampHigh = 0.97;
inline constexpr int kJackknifeBlocks = 8;

struct SweepConfig {
  std::vector<double> q_values;  // empty selects the default grid
  Preparation preparation = Preparation::Hadamard;
  PRule p_rule = PRule::EqualQ;
  std::vector<double> explicit_p;  // used with PRule::Explicit
  long long shots = kDefaultShots;
  double eps01 = kDefaultEps01;
  double eps10 = kDefaultEps10;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Mode> modes = {Mode::Theory, Mode::IdealSim, Mode::NoisySim};
  int threads = 0;  // 0 picks the hardware concurrency
};

// Evenly spaced grid of `steps` points on [q_min, q_max].
std::vector<double> default_q_grid(int steps = kDefaultQSteps, double q_min = 0.0,
                                   double q_max = 1.0);

// One output record: a (sweep point, quantity, mode) triple.
struct FigureRow {
  double q = 0.0;
  std::string quantity;
  std::string mode;
  double value = 0.0;
  std::optional<double> std_error;  // absent in theory mode
  std::string flags;                // "" or "low_stats"
};

// sqrt(p)|00> + sqrt(1-p)|11>, or the same weights over |++> and |-->.
PureState prepare_pair(Preparation prep, double p);

// Pre-measurement sweep: local coherence and predictability of qubit C and
// the pair concurrence, per mode.  Quantities: C_C, P_C, E_AC.
std::vector<FigureRow> run_fig1(const SweepConfig& config);

// Full swapping pipeline sweep with the complementary preparation pairing
// (p = 1 - q, superposition-basis preparation).  Quantities: E_PhiPlus,
// E_PhiMinus, E_PsiPlus, E_PsiMinus, prob_identity.
std::vector<FigureRow> run_fig2(const SweepConfig& config);

struct VerifySuiteResult {
  std::string suite;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::uint64_t worst_seed = 0;
  std::string detail;
};

// Property suites: ccr, swap_oracle, probabilities, special_cases,
// mitigation, or all.  Throws UnknownSuiteError for anything else.
std::vector<VerifySuiteResult> run_verify(const std::string& suite, int trials,
                                          std::uint64_t seed);

// CSV schema: q,quantity,mode,value,stderr,flags with floats at 12
// significant digits; JSON mirrors the records as an array of objects.
void emit_csv(const std::vector<FigureRow>& rows, std::ostream& os);
void emit_json(const std::vector<FigureRow>& rows, std::ostream& os);

// Writes to a file, or to stdout when path is "-".  Throws IoError.
void emit(const std::vector<FigureRow>& rows, const std::string& format,
          const std::string& path);

// Parses emit_csv output back (used by round-trip tests).
std::vector<FigureRow> parse_csv(std::istream& is);

// %.12g rendering used for all emitted floats.
std::string format_g12(double v);

}  // namespace eswap
