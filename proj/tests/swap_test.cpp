#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "eswap/errors.hpp"
#include "eswap/measures.hpp"
#include "eswap/qstate.hpp"
#include "eswap/swap.hpp"

using namespace eswap;

namespace {

PureState phi_plus() {
  const double s = std::sqrt(0.5);
  return make_pair_state(s, 0.0, 0.0, s);
}

PureState diagonal_pair(double p) {
  return make_pair_state(std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p));
}

PureState hadamard_pair(double p) {
  const double a = std::sqrt(p);
  const double b = std::sqrt(1.0 - p);
  return make_pair_state(0.5 * (a + b), 0.5 * (a - b), 0.5 * (a - b), 0.5 * (a + b));
}

}  // namespace

TEST_CASE("bell_basis rows are the orthonormal Bell states") {
  const Eigen::Matrix4cd b = bell_basis();
  CHECK(((b * b.adjoint()) - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
  const double h = std::sqrt(0.5);
  CHECK(std::abs(b(0, 0) - cplx(h, 0.0)) <= 1e-15);   // PhiPlus |00>
  CHECK(std::abs(b(0, 3) - cplx(h, 0.0)) <= 1e-15);   // PhiPlus |11>
  CHECK(std::abs(b(1, 3) - cplx(-h, 0.0)) <= 1e-15);  // PhiMinus |11>
  CHECK(std::abs(b(2, 1) - cplx(h, 0.0)) <= 1e-15);   // PsiPlus |01>
  CHECK(std::abs(b(3, 2) - cplx(-h, 0.0)) <= 1e-15);  // PsiMinus |10>
}

TEST_CASE("decompose on two maximally entangled pairs") {
  const SwapResult r = decompose(phi_plus(), phi_plus());
  double prob_sum = 0.0;
  for (const auto& o : r.outcomes) {
    CHECK(std::abs(o.probability - 0.25) <= 1e-12);
    REQUIRE(o.post_concurrence.has_value());
    CHECK(std::abs(*o.post_concurrence - 1.0) <= 1e-12);
    prob_sum += o.probability;
  }
  CHECK(std::abs(prob_sum - 1.0) <= 1e-12);
  CHECK(std::abs(r.averaged_concurrence - 1.0) <= 1e-12);
}

TEST_CASE("decompose on diagonal preparations matches the closed forms") {
  const double p = 0.8;
  const double q = 0.3;
  const SwapResult r = decompose(diagonal_pair(p), diagonal_pair(q));

  const double pr_phi = (p * q + (1.0 - p) * (1.0 - q)) / 2.0;
  const double pr_psi = (p * (1.0 - q) + (1.0 - p) * q) / 2.0;
  CHECK(std::abs(pr_phi - 0.19) <= 1e-15);
  CHECK(std::abs(pr_psi - 0.31) <= 1e-15);
  CHECK(std::abs(r.at(BellOutcome::PhiPlus).probability - pr_phi) <= 1e-12);
  CHECK(std::abs(r.at(BellOutcome::PhiMinus).probability - pr_phi) <= 1e-12);
  CHECK(std::abs(r.at(BellOutcome::PsiPlus).probability - pr_psi) <= 1e-12);
  CHECK(std::abs(r.at(BellOutcome::PsiMinus).probability - pr_psi) <= 1e-12);

  const double numerator = 2.0 * std::sqrt(p * (1.0 - p) * q * (1.0 - q));
  const double conc_phi = numerator / (p * q + (1.0 - p) * (1.0 - q));
  const double conc_psi = numerator / (p * (1.0 - q) + (1.0 - p) * q);
  CHECK(std::abs(conc_phi - 0.9648) <= 1e-4);
  CHECK(std::abs(conc_psi - 0.5913) <= 1e-4);
  for (BellOutcome o : {BellOutcome::PhiPlus, BellOutcome::PhiMinus}) {
    CHECK(std::abs(*r.at(o).post_concurrence - conc_phi) <= 1e-12);
  }
  for (BellOutcome o : {BellOutcome::PsiPlus, BellOutcome::PsiMinus}) {
    CHECK(std::abs(*r.at(o).post_concurrence - conc_psi) <= 1e-12);
  }
}

TEST_CASE("decompose rejects wrong-sized inputs") {
  CHECK_THROWS_AS(decompose(haar_random_pure(1, 1), phi_plus()), DimensionMismatchError);
  CHECK_THROWS_AS(decompose(phi_plus(), haar_random_pure(3, 1)), DimensionMismatchError);
}

TEST_CASE("vanishing outcomes carry no post state") {
  // Both pairs |00>: only the Phi outcomes can fire.
  const PureState zz = make_pair_state(1.0, 0.0, 0.0, 0.0);
  const SwapResult r = decompose(zz, zz);
  CHECK(std::abs(r.at(BellOutcome::PhiPlus).probability - 0.5) <= 1e-12);
  CHECK(std::abs(r.at(BellOutcome::PhiMinus).probability - 0.5) <= 1e-12);
  CHECK(r.at(BellOutcome::PsiPlus).probability <= 1e-12);
  CHECK_FALSE(r.at(BellOutcome::PsiPlus).post_state.has_value());
  CHECK_FALSE(r.at(BellOutcome::PsiMinus).post_concurrence.has_value());
  CHECK(r.averaged_concurrence <= 1e-12);
}

TEST_CASE("averaged entanglement is the product of the input concurrences") {
  CHECK(std::abs(averaged_entanglement(phi_plus(), phi_plus()) - 1.0) <= 1e-14);
  const PureState product = tensor(haar_random_pure(1, 8), haar_random_pure(1, 9));
  CHECK(averaged_entanglement(product, phi_plus()) <= 1e-12);

  const double expected = 0.8 * 2.0 * std::sqrt(0.21);
  CHECK(std::abs(averaged_entanglement(diagonal_pair(0.8), diagonal_pair(0.3)) - expected) <=
        1e-12);
  CHECK(std::abs(expected - 0.7332) <= 1e-4);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const PureState xi = haar_random_pure(2, 52000 + 2 * seed);
    const PureState eta = haar_random_pure(2, 52001 + 2 * seed);
    const SwapResult r = decompose(xi, eta);
    CHECK(std::abs(r.averaged_concurrence - averaged_entanglement(xi, eta)) <= 1e-10);
  }
}

TEST_CASE("per-outcome concurrence-probability law") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const PureState xi = haar_random_pure(2, 61000 + 2 * seed);
    const PureState eta = haar_random_pure(2, 61001 + 2 * seed);
    const double product = concurrence_pure(xi) * concurrence_pure(eta);
    const SwapResult r = decompose(xi, eta);
    for (const auto& o : r.outcomes) {
      if (!o.post_concurrence.has_value()) continue;
      CHECK(std::abs(*o.post_concurrence * 4.0 * o.probability - product) <= 1e-10);
    }
  }
}

TEST_CASE("align_phases produces real nonnegative marginal coherences") {
  SUBCASE("real-amplitude inputs are untouched") {
    const AlignResult a = align_phases(hadamard_pair(0.7), hadamard_pair(0.6));
    CHECK(a.phi_C == 0.0);
    CHECK(a.phi_Cp == 0.0);
    CHECK(max_amp_distance(a.xi, hadamard_pair(0.7)) <= 1e-14);
  }
  SUBCASE("an imaginary marginal coherence is rotated onto the real axis") {
    // Put a quarter-turn azimuth on qubit C of a coherent pair.
    const PureState xi = apply_rz(hadamard_pair(0.8), 1, -3.0 * 3.14159265358979 / 7.0);
    const double coherence_before = l1_coherence(partial_trace(xi, {1}));
    const AlignResult a = align_phases(xi, hadamard_pair(0.6));
    const DensityMatrix after = partial_trace(a.xi, {1});
    CHECK(std::abs(after.entries(0, 1).imag()) <= 1e-12);
    CHECK(after.entries(0, 1).real() >= 0.0);
    CHECK(std::abs(l1_coherence(after) - coherence_before) <= 1e-12);
  }
  SUBCASE("P, C, E are invariant for random inputs") {
    for (std::uint64_t seed : {71u, 72u, 73u, 74u}) {
      const PureState xi = haar_random_pure(2, seed);
      const PureState eta = haar_random_pure(2, seed + 1000);
      const AlignResult a = align_phases(xi, eta);
      CHECK(std::abs(concurrence_pure(a.xi) - concurrence_pure(xi)) <= 1e-12);
      CHECK(std::abs(concurrence_pure(a.eta) - concurrence_pure(eta)) <= 1e-12);
      const DensityMatrix c_before = partial_trace(xi, {1});
      const DensityMatrix c_after = partial_trace(a.xi, {1});
      CHECK(std::abs(predictability(c_before) - predictability(c_after)) <= 1e-12);
      CHECK(std::abs(l1_coherence(c_before) - l1_coherence(c_after)) <= 1e-12);
      const DensityMatrix cp_after = partial_trace(a.eta, {0});
      CHECK(std::abs(cp_after.entries(0, 1).imag()) <= 1e-12);
      CHECK(cp_after.entries(0, 1).real() >= -1e-12);
    }
  }
}

TEST_CASE("analytic_concurrences closed forms") {
  SUBCASE("both inputs maximally entangled") {
    const AnalyticPrediction p = analytic_concurrences(0.0, 0.0, 0.0, 0.0, 0);
    for (BellOutcome o : kBellOutcomes) {
      REQUIRE(p.at(o).has_value());
      CHECK(std::abs(*p.at(o) - 1.0) <= 1e-15);
    }
  }
  SUBCASE("pure coherence, equal on both sides") {
    const double c = 0.5;
    const AnalyticPrediction p = analytic_concurrences(0.0, c, 0.0, c, 0);
    const double partial = (1.0 - c * c) / (1.0 + c * c);
    CHECK(std::abs(*p.at(BellOutcome::PhiPlus) - partial) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PsiPlus) - partial) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PhiMinus) - 1.0) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PsiMinus) - 1.0) <= 1e-14);
  }
  SUBCASE("pure predictability, same hemisphere") {
    const AnalyticPrediction p = analytic_concurrences(0.6, 0.0, 0.6, 0.0, +1);
    const double partial = 0.64 / 1.36;
    CHECK(std::abs(partial - 0.4706) <= 1e-4);
    CHECK(std::abs(*p.at(BellOutcome::PhiPlus) - partial) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PhiMinus) - partial) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PsiPlus) - 1.0) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PsiMinus) - 1.0) <= 1e-14);
  }
  SUBCASE("hemisphere sign zero collapses the plus-minus distinction in P") {
    const AnalyticPrediction p = analytic_concurrences(0.0, 0.3, 0.5, 0.4, 0);
    CHECK(std::abs(*p.at(BellOutcome::PhiPlus) - *p.at(BellOutcome::PsiPlus)) <= 1e-14);
    CHECK(std::abs(*p.at(BellOutcome::PhiMinus) - *p.at(BellOutcome::PsiMinus)) <= 1e-14);
  }
  SUBCASE("degenerate inputs: a pure product marginal zeroes every prediction") {
    // P^2 + C^2 = 1 makes the numerator vanish; denominators stay positive here.
    const AnalyticPrediction p = analytic_concurrences(1.0, 0.0, 0.3, 0.2, +1);
    for (BellOutcome o : kBellOutcomes) {
      if (p.at(o).has_value()) CHECK(std::abs(*p.at(o)) <= 1e-14);
    }
  }
  SUBCASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(analytic_concurrences(0.9, 0.9, 0.0, 0.0, 0), OutOfRangeError);
    CHECK_THROWS_AS(analytic_concurrences(0.0, 0.0, 0.0, 0.0, 2), OutOfRangeError);
  }
}

TEST_CASE("predict_and_verify ties the predictors to the oracle") {
  SUBCASE("random pairs agree to tight tolerance") {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const PureState xi = haar_random_pure(2, 83000 + 2 * seed);
      const PureState eta = haar_random_pure(2, 83001 + 2 * seed);
      worst = std::max(worst, predict_and_verify(xi, eta).max_difference);
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("complementary coherent preparations, q = 0.25") {
    const double q = 0.25;
    const VerifyReport r = predict_and_verify(hadamard_pair(1.0 - q), hadamard_pair(q));
    CHECK(r.prediction.hemisphere_sign == 0);
    CHECK(r.max_difference <= 1e-10);
    // In the aligned frame the minus outcomes carry the maximal entanglement.
    const double partial = 2.0 * q * (1.0 - q) / (q * q + (1.0 - q) * (1.0 - q));
    CHECK(std::abs(partial - 0.6) <= 1e-12);
    CHECK(std::abs(*r.prediction.at(BellOutcome::PhiMinus) - 1.0) <= 1e-10);
    CHECK(std::abs(*r.prediction.at(BellOutcome::PsiMinus) - 1.0) <= 1e-10);
    CHECK(std::abs(*r.prediction.at(BellOutcome::PhiPlus) - partial) <= 1e-10);
    CHECK(std::abs(*r.prediction.at(BellOutcome::PsiPlus) - partial) <= 1e-10);
  }
}

TEST_CASE("unaligned protocol labels for the complementary preparations") {
  // Measured in the unaligned Bell basis (as the hardware pipeline does),
  // the plus outcomes are the maximally entangled ones and the outcome
  // probabilities reproduce the coherence identity.
  const double q = 0.25;
  const SwapResult r = decompose(hadamard_pair(1.0 - q), hadamard_pair(q));
  CHECK(std::abs(r.at(BellOutcome::PhiPlus).probability - q * (1.0 - q)) <= 1e-12);
  CHECK(std::abs(r.at(BellOutcome::PsiPlus).probability - q * (1.0 - q)) <= 1e-12);
  CHECK(std::abs(*r.at(BellOutcome::PhiPlus).post_concurrence - 1.0) <= 1e-12);
  CHECK(std::abs(*r.at(BellOutcome::PsiPlus).post_concurrence - 1.0) <= 1e-12);
  CHECK(std::abs(*r.at(BellOutcome::PhiMinus).post_concurrence - 0.6) <= 1e-12);
  CHECK(std::abs(*r.at(BellOutcome::PsiMinus).post_concurrence - 0.6) <= 1e-12);

  const double coherence = std::abs(2.0 * q - 1.0);
  const double identity = 1.0 - 2.0 * (r.at(BellOutcome::PhiPlus).probability +
                                       r.at(BellOutcome::PsiPlus).probability);
  CHECK(std::abs(identity - coherence * coherence) <= 1e-12);
}

TEST_CASE("probability rewrite in local quantities holds on aligned states") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const AlignResult a = align_phases(haar_random_pure(2, 91000 + 2 * seed),
                                       haar_random_pure(2, 91001 + 2 * seed));
    const DensityMatrix rho_c = partial_trace(a.xi, {1});
    const DensityMatrix rho_cp = partial_trace(a.eta, {0});
    const auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
    const double pp = predictability(rho_c) * predictability(rho_cp) *
                      sgn(bloch_of(rho_c).r_z) * sgn(bloch_of(rho_cp).r_z);
    const double cc = l1_coherence(rho_c) * l1_coherence(rho_cp);
    const SwapResult r = decompose(a.xi, a.eta);
    CHECK(std::abs(4.0 * r.at(BellOutcome::PhiPlus).probability - (1.0 + pp + cc)) <= 1e-10);
    CHECK(std::abs(4.0 * r.at(BellOutcome::PhiMinus).probability - (1.0 + pp - cc)) <= 1e-10);
    CHECK(std::abs(4.0 * r.at(BellOutcome::PsiPlus).probability - (1.0 - pp + cc)) <= 1e-10);
    CHECK(std::abs(4.0 * r.at(BellOutcome::PsiMinus).probability - (1.0 - pp - cc)) <= 1e-10);
  }
}

TEST_CASE("structured preparations give the expected maximal-outcome sets") {
  SUBCASE("zero coherence, equal predictability, same hemisphere") {
    const SwapResult r = decompose(diagonal_pair(0.7), diagonal_pair(0.7));
    CHECK(std::abs(*r.at(BellOutcome::PsiPlus).post_concurrence - 1.0) <= 1e-10);
    CHECK(std::abs(*r.at(BellOutcome::PsiMinus).post_concurrence - 1.0) <= 1e-10);
    CHECK(*r.at(BellOutcome::PhiPlus).post_concurrence < 1.0 - 1e-6);
    CHECK(*r.at(BellOutcome::PhiMinus).post_concurrence < 1.0 - 1e-6);
  }
  SUBCASE("zero coherence, equal predictability, opposite hemispheres") {
    const SwapResult r = decompose(diagonal_pair(0.7), diagonal_pair(0.3));
    CHECK(std::abs(*r.at(BellOutcome::PhiPlus).post_concurrence - 1.0) <= 1e-10);
    CHECK(std::abs(*r.at(BellOutcome::PhiMinus).post_concurrence - 1.0) <= 1e-10);
    CHECK(*r.at(BellOutcome::PsiPlus).post_concurrence < 1.0 - 1e-6);
  }
  SUBCASE("zero predictability, equal coherence") {
    const SwapResult r = decompose(hadamard_pair(0.8), hadamard_pair(0.8));
    CHECK(std::abs(*r.at(BellOutcome::PhiMinus).post_concurrence - 1.0) <= 1e-10);
    CHECK(std::abs(*r.at(BellOutcome::PsiMinus).post_concurrence - 1.0) <= 1e-10);
    CHECK(*r.at(BellOutcome::PhiPlus).post_concurrence < 1.0 - 1e-6);
  }
}
