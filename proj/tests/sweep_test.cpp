#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "eswap/errors.hpp"
#include "eswap/sweep.hpp"

using namespace eswap;

namespace {

const FigureRow& find_row(const std::vector<FigureRow>& rows, double q,
                          const std::string& quantity, const std::string& mode) {
  for (const auto& r : rows) {
    if (std::abs(r.q - q) <= 1e-12 && r.quantity == quantity && r.mode == mode) return r;
  }
  REQUIRE_MESSAGE(false, "row not found: q=", q, " ", quantity, "/", mode);
  static FigureRow dummy;
  return dummy;
}

double fig2_partial(double q) {
  return 2.0 * q * (1.0 - q) / (q * q + (1.0 - q) * (1.0 - q));
}

}  // namespace

TEST_CASE("enum conversions round-trip and reject unknowns") {
  CHECK(mode_from_string("theory") == Mode::Theory);
  CHECK(mode_from_string("ideal_sim") == Mode::IdealSim);
  CHECK(mode_from_string("noisy_sim") == Mode::NoisySim);
  CHECK(std::string(to_string(Mode::NoisySim)) == "noisy_sim");
  CHECK_THROWS_AS(mode_from_string("exact"), ConfigError);
  CHECK(preparation_from_string("hadamard") == Preparation::Hadamard);
  CHECK(preparation_from_string("computational") == Preparation::Computational);
  CHECK_THROWS_AS(preparation_from_string("bell"), ConfigError);
  CHECK(p_rule_from_string("one_minus_q") == PRule::OneMinusQ);
  CHECK_THROWS_AS(p_rule_from_string("mirror"), ConfigError);
}

TEST_CASE("default_q_grid spaces points evenly") {
  const std::vector<double> grid = default_q_grid();
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(std::abs(grid[1] - 0.05) <= 1e-15);
  const std::vector<double> single = default_q_grid(1, 0.2, 0.8);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 0.2);
  CHECK_THROWS_AS(default_q_grid(0), ConfigError);
}

TEST_CASE("prepare_pair emits the two preparation families") {
  const PureState comp = prepare_pair(Preparation::Computational, 0.8);
  CHECK(std::abs(comp.amps[0] - cplx(std::sqrt(0.8), 0.0)) <= 1e-14);
  CHECK(std::abs(comp.amps[3] - cplx(std::sqrt(0.2), 0.0)) <= 1e-14);
  CHECK(std::abs(comp.amps[1]) <= 1e-15);

  const PureState had = prepare_pair(Preparation::Hadamard, 0.8);
  const double a = std::sqrt(0.8);
  const double b = std::sqrt(0.2);
  CHECK(std::abs(had.amps[0] - cplx(0.5 * (a + b), 0.0)) <= 1e-14);
  CHECK(std::abs(had.amps[1] - cplx(0.5 * (a - b), 0.0)) <= 1e-14);
  CHECK(std::abs(had.amps[2] - cplx(0.5 * (a - b), 0.0)) <= 1e-14);
  CHECK(std::abs(had.amps[3] - cplx(0.5 * (a + b), 0.0)) <= 1e-14);

  CHECK_THROWS_AS(prepare_pair(Preparation::Hadamard, 1.2), ConfigError);
}

TEST_CASE("run_fig1 theory rows are exact") {
  SweepConfig cfg;
  cfg.modes = {Mode::Theory};
  cfg.preparation = Preparation::Hadamard;

  const std::vector<FigureRow> rows = run_fig1(cfg);
  const std::vector<double> grid = default_q_grid();
  for (double q : grid) {
    CHECK(std::abs(find_row(rows, q, "C_C", "theory").value - std::abs(2.0 * q - 1.0)) <=
          1e-12);
    CHECK(std::abs(find_row(rows, q, "P_C", "theory").value) <= 1e-12);
    CHECK(std::abs(find_row(rows, q, "E_AC", "theory").value -
                   2.0 * std::sqrt(q * (1.0 - q))) <= 1e-12);
  }
  CHECK_FALSE(find_row(rows, 0.5, "C_C", "theory").std_error.has_value());

  SweepConfig comp = cfg;
  comp.preparation = Preparation::Computational;
  const std::vector<FigureRow> crows = run_fig1(comp);
  CHECK(std::abs(find_row(crows, 0.9, "P_C", "theory").value - 0.8) <= 1e-12);
  CHECK(std::abs(find_row(crows, 0.9, "C_C", "theory").value) <= 1e-12);
}

TEST_CASE("q grid clamping applies only when sampling") {
  SweepConfig cfg;
  cfg.modes = {Mode::Theory};
  const std::vector<FigureRow> theory_rows = run_fig1(cfg);
  CHECK(std::abs(theory_rows.front().q - 0.0) <= 1e-15);
  CHECK(std::abs(theory_rows.back().q - 1.0) <= 1e-15);

  cfg.modes = {Mode::Theory, Mode::IdealSim};
  cfg.q_values = {0.0, 0.5, 1.0};
  cfg.shots = 256;
  const std::vector<FigureRow> clamped = run_fig1(cfg);
  CHECK(std::abs(clamped.front().q - 0.03) <= 1e-15);
  CHECK(std::abs(clamped.back().q - 0.97) <= 1e-15);
}

TEST_CASE("run_fig1 ideal simulation tracks theory") {
  SweepConfig cfg;
  cfg.modes = {Mode::IdealSim};
  cfg.q_values = {0.25, 0.5, 0.8};
  cfg.seed = 2026;
  const std::vector<FigureRow> rows = run_fig1(cfg);
  for (double q : cfg.q_values) {
    const double c_err =
        std::abs(find_row(rows, q, "C_C", "ideal_sim").value - std::abs(2.0 * q - 1.0));
    const double p_err = std::abs(find_row(rows, q, "P_C", "ideal_sim").value);
    const double e_err = std::abs(find_row(rows, q, "E_AC", "ideal_sim").value -
                                  2.0 * std::sqrt(q * (1.0 - q)));
    CHECK(c_err <= 0.05);
    CHECK(p_err <= 0.05);
    CHECK(e_err <= 0.05);
    const auto& se = find_row(rows, q, "E_AC", "ideal_sim").std_error;
    REQUIRE(se.has_value());
    CHECK(*se >= 0.0);
    CHECK(*se <= 0.1);
  }
}

TEST_CASE("run_fig1 noisy simulation with mitigation stays close") {
  SweepConfig cfg;
  cfg.modes = {Mode::NoisySim};
  cfg.q_values = {0.25, 0.5, 0.75};
  cfg.seed = 99;
  const std::vector<FigureRow> rows = run_fig1(cfg);
  for (double q : cfg.q_values) {
    CHECK(std::abs(find_row(rows, q, "C_C", "noisy_sim").value - std::abs(2.0 * q - 1.0)) <=
          0.05);
    CHECK(std::abs(find_row(rows, q, "E_AC", "noisy_sim").value -
                   2.0 * std::sqrt(q * (1.0 - q))) <= 0.05);
  }
}

TEST_CASE("run_fig2 theory rows satisfy the closed forms everywhere") {
  SweepConfig cfg;
  cfg.modes = {Mode::Theory};
  const std::vector<FigureRow> rows = run_fig2(cfg);
  for (double q : default_q_grid()) {
    CHECK(std::abs(find_row(rows, q, "E_PhiPlus", "theory").value - 1.0) <= 1e-12);
    CHECK(std::abs(find_row(rows, q, "E_PsiPlus", "theory").value - 1.0) <= 1e-12);
    CHECK(std::abs(find_row(rows, q, "E_PhiMinus", "theory").value - fig2_partial(q)) <=
          1e-12);
    CHECK(std::abs(find_row(rows, q, "E_PsiMinus", "theory").value - fig2_partial(q)) <=
          1e-12);
    // The identity-probability curve equals the squared local coherence.
    const double coherence_sq = (2.0 * q - 1.0) * (2.0 * q - 1.0);
    CHECK(std::abs(find_row(rows, q, "prob_identity", "theory").value - coherence_sq) <=
          1e-12);
  }
  CHECK(std::abs(find_row(rows, 0.25, "E_PhiMinus", "theory").value - 0.6) <= 1e-12);
  CHECK(std::abs(find_row(rows, 0.25, "prob_identity", "theory").value - 0.25) <= 1e-12);
  CHECK(std::abs(find_row(rows, 0.5, "E_PhiMinus", "theory").value - 1.0) <= 1e-12);
  CHECK(std::abs(find_row(rows, 0.5, "prob_identity", "theory").value) <= 1e-12);
}

TEST_CASE("run_fig2 ideal simulation at the reference point") {
  SweepConfig cfg;
  cfg.modes = {Mode::IdealSim};
  cfg.q_values = {0.25};
  cfg.seed = 31337;
  const std::vector<FigureRow> rows = run_fig2(cfg);
  CHECK(find_row(rows, 0.25, "E_PhiPlus", "ideal_sim").value >= 0.95);
  CHECK(std::abs(find_row(rows, 0.25, "E_PhiMinus", "ideal_sim").value - 0.6) <= 0.07);
  CHECK(std::abs(find_row(rows, 0.25, "E_PsiMinus", "ideal_sim").value - 0.6) <= 0.07);
  CHECK(std::abs(find_row(rows, 0.25, "prob_identity", "ideal_sim").value - 0.25) <= 0.07);
  for (const auto& r : rows) {
    CHECK(r.flags.empty());  // all groups are comfortably above the floor here
    REQUIRE(r.std_error.has_value());
    CHECK(*r.std_error >= 0.0);
  }
}

TEST_CASE("run_fig2 estimates converge with more shots") {
  // Aggregate monotonicity: the median absolute error over independent seeds
  // shrinks when the shot budget grows sixteenfold.
  const double q = 0.3;
  const double target = fig2_partial(q);
  std::vector<double> err_small, err_large;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (long long shots : {8192LL, 131072LL}) {
      SweepConfig cfg;
      cfg.modes = {Mode::IdealSim};
      cfg.q_values = {q};
      cfg.shots = shots;
      cfg.seed = 555000 + seed;
      const std::vector<FigureRow> rows = run_fig2(cfg);
      const double err =
          std::abs(find_row(rows, q, "E_PhiMinus", "ideal_sim").value - target);
      (shots == 8192 ? err_small : err_large).push_back(err);
    }
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2] + v[(v.size() - 1) / 2]);
  };
  CHECK(median(err_large) < median(err_small));
}

TEST_CASE("run_fig2 flags starved outcome groups") {
  SweepConfig cfg;
  cfg.modes = {Mode::IdealSim};
  cfg.q_values = {0.03};
  cfg.shots = 600;  // expected PhiPlus occupancy ~ 0.029 * 600 < floor
  cfg.seed = 4242;
  const std::vector<FigureRow> rows = run_fig2(cfg);
  CHECK(find_row(rows, 0.03, "E_PhiPlus", "ideal_sim").flags == "low_stats");
  CHECK(find_row(rows, 0.03, "prob_identity", "ideal_sim").flags == "low_stats");
  // The dominant minus branches have plenty of shots at this point.
  CHECK(find_row(rows, 0.03, "E_PhiMinus", "ideal_sim").flags.empty());
}

TEST_CASE("run_fig2 emits NaN rows for empty groups") {
  SweepConfig cfg;
  cfg.modes = {Mode::IdealSim};
  cfg.q_values = {0.5};
  cfg.shots = 1;
  const std::vector<FigureRow> rows = run_fig2(cfg);
  int nan_rows = 0;
  for (const auto& r : rows) {
    if (r.quantity == "prob_identity" || r.mode != "ideal_sim") continue;
    if (std::isnan(r.value)) {
      ++nan_rows;
      CHECK(r.flags == "low_stats");
    }
  }
  CHECK(nan_rows == 3);  // a single shot lands in exactly one outcome group
}

TEST_CASE("sweep runs are deterministic and thread-count invariant") {
  SweepConfig cfg;
  cfg.modes = {Mode::Theory, Mode::IdealSim, Mode::NoisySim};
  cfg.q_values = {0.2, 0.6};
  cfg.shots = 512;
  cfg.seed = 777;

  SweepConfig serial = cfg;
  serial.threads = 1;
  SweepConfig parallel = cfg;
  parallel.threads = 4;
  const std::vector<FigureRow> a = run_fig2(serial);
  const std::vector<FigureRow> b = run_fig2(parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].q == b[i].q);
    CHECK(a[i].quantity == b[i].quantity);
    CHECK(a[i].mode == b[i].mode);
    const bool both_nan = std::isnan(a[i].value) && std::isnan(b[i].value);
    if (!both_nan) CHECK(a[i].value == b[i].value);
    CHECK(a[i].std_error == b[i].std_error);
    CHECK(a[i].flags == b[i].flags);
  }
}

TEST_CASE("rows arrive sorted by (q, quantity, mode)") {
  SweepConfig cfg;
  cfg.modes = {Mode::IdealSim, Mode::Theory};
  cfg.q_values = {0.7, 0.2};
  cfg.shots = 256;
  const std::vector<FigureRow> rows = run_fig1(cfg);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto key = [](const FigureRow& r) {
      return std::make_tuple(r.q, r.quantity, r.mode);
    };
    CHECK(key(rows[i - 1]) <= key(rows[i]));
  }
}

TEST_CASE("invalid sweep configurations are rejected") {
  SweepConfig cfg;
  cfg.shots = 0;
  CHECK_THROWS_AS(run_fig1(cfg), ConfigError);
  cfg = SweepConfig{};
  cfg.eps01 = 0.5;
  CHECK_THROWS_AS(run_fig1(cfg), ConfigError);
  cfg = SweepConfig{};
  cfg.modes = {};
  CHECK_THROWS_AS(run_fig2(cfg), ConfigError);
  cfg = SweepConfig{};
  cfg.q_values = {1.5};
  CHECK_THROWS_AS(run_fig1(cfg), ConfigError);
  cfg = SweepConfig{};
  cfg.p_rule = PRule::Explicit;
  cfg.explicit_p = {0.5};  // wrong length for the default grid
  CHECK_THROWS_AS(run_fig1(cfg), ConfigError);
  cfg = SweepConfig{};
  cfg.threads = -2;
  CHECK_THROWS_AS(run_fig1(cfg), ConfigError);
}

TEST_CASE("verification suites") {
  for (const std::string suite :
       {"ccr", "swap_oracle", "probabilities", "special_cases"}) {
    const std::vector<VerifySuiteResult> res = run_verify(suite, 150, 1234);
    REQUIRE(res.size() == 1);
    CHECK(res[0].suite == suite);
    CHECK(res[0].passed);
    CHECK(res[0].max_deviation <= res[0].tolerance);
  }
  const std::vector<VerifySuiteResult> mit = run_verify("mitigation", 60, 1234);
  REQUIRE(mit.size() == 1);
  CHECK(mit[0].passed);

  const std::vector<VerifySuiteResult> all = run_verify("all", 50, 99);
  CHECK(all.size() == 5);
  for (const auto& r : all) CHECK(r.passed);

  CHECK_THROWS_AS(run_verify("nonsense", 10, 1), UnknownSuiteError);
  CHECK_THROWS_AS(run_verify("ccr", 0, 1), ConfigError);
}

TEST_CASE("csv emission and parsing") {
  SUBCASE("empty table is a lone header") {
    std::ostringstream os;
    emit_csv({}, os);
    CHECK(os.str() == "q,quantity,mode,value,stderr,flags\n");
  }
  SUBCASE("theory rows leave the stderr field empty") {
    std::ostringstream os;
    emit_csv({{0.25, "E_PhiPlus", "theory", 1.0, std::nullopt, ""}}, os);
    CHECK(os.str() ==
          "q,quantity,mode,value,stderr,flags\n0.25,E_PhiPlus,theory,1,,\n");
  }
  SUBCASE("round trip preserves twelve significant digits") {
    SweepConfig cfg;
    cfg.modes = {Mode::Theory, Mode::IdealSim};
    cfg.q_values = {0.25, 0.6};
    cfg.shots = 512;
    const std::vector<FigureRow> rows = run_fig2(cfg);
    std::stringstream ss;
    emit_csv(rows, ss);
    const std::vector<FigureRow> parsed = parse_csv(ss);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(format_g12(parsed[i].q) == format_g12(rows[i].q));
      CHECK(parsed[i].quantity == rows[i].quantity);
      CHECK(parsed[i].mode == rows[i].mode);
      CHECK(format_g12(parsed[i].value) == format_g12(rows[i].value));
      CHECK(parsed[i].std_error.has_value() == rows[i].std_error.has_value());
      if (rows[i].std_error.has_value()) {
        CHECK(format_g12(*parsed[i].std_error) == format_g12(*rows[i].std_error));
      }
      CHECK(parsed[i].flags == rows[i].flags);
    }
  }
}

TEST_CASE("json emission mirrors the rows") {
  std::vector<FigureRow> rows = {
      {0.25, "E_PhiPlus", "theory", 1.0, std::nullopt, ""},
      {0.25, "E_PhiPlus", "ideal_sim", std::nan(""), std::nullopt, "low_stats"},
      {0.5, "prob_identity", "ideal_sim", 0.01, 0.002, ""},
  };
  std::ostringstream os;
  emit_json(rows, os);
  const nlohmann::json doc = nlohmann::json::parse(os.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["q"] == 0.25);
  CHECK(doc[0]["quantity"] == "E_PhiPlus");
  CHECK(doc[0]["stderr"].is_null());
  CHECK(doc[1]["value"].is_null());
  CHECK(doc[1]["flags"] == "low_stats");
  CHECK(std::abs(doc[2]["stderr"].get<double>() - 0.002) <= 1e-15);
}

TEST_CASE("emit dispatches on format and surfaces io failures") {
  CHECK_THROWS_AS(emit({}, "yaml", "-"), ConfigError);
  CHECK_THROWS_AS(emit({}, "csv", "/nonexistent_dir_7f3a/out.csv"), IoError);
}
