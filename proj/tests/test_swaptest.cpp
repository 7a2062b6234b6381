#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "qpass/encoding.hpp"
#include "qpass/linalg.hpp"
#include "qpass/rng.hpp"
#include "qpass/stats.hpp"
#include "qpass/swaptest.hpp"

using namespace qpass;

namespace {
StateVector basis_state(Eigen::Index dim, Eigen::Index k) {
  StateVector v = StateVector::Zero(dim);
  v(k) = 1.0;
  return v;
}
}  // namespace

TEST_CASE("pass probability hits the anchor cases exactly") {
  const StateVector e0 = basis_state(8, 0);
  const StateVector e1 = basis_state(8, 1);
  CHECK(pass_probability(e0, e0) == 1.0);  // identical states, exactly
  CHECK(pass_probability(e0, e1) == doctest::Approx(0.5));
  // Pure state against the maximally mixed state: (1 + 1/8)/2.
  const DensityMatrix mixed = DensityMatrix::Identity(8, 8) / 8.0;
  CHECK(pass_probability(mixed, e0) == doctest::Approx(0.5625));
  CHECK(pass_probability(mixed, outer(e0)) == doctest::Approx(0.5625));
}

TEST_CASE("pass probability is symmetric and within [1/2, 1]") {
  RngStream rng(RngSeed{31, 0});
  for (int i = 0; i < 16; ++i) {
    const StateVector a = random_pure_state(4, rng);
    const StateVector b = random_pure_state(4, rng);
    const double p = pass_probability(a, b);
    CHECK(p >= 0.5);
    CHECK(p <= 1.0);
    CHECK(pass_probability(b, a) == doctest::Approx(p).epsilon(1e-14));
    CHECK(pass_probability(outer(a), outer(b)) ==
          doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("pass probability rejects mismatched dimensions") {
  CHECK_THROWS_AS(pass_probability(basis_state(2, 0), basis_state(4, 0)),
                  std::invalid_argument);
}

TEST_CASE("identical symmetric states pass with probability exactly 1") {
  // The geometric phases cancel only up to floating point; the snap inside
  // pass_probability must absorb that residue, or honest runs could abort.
  for (std::uint64_t j : {0ull, 1ull, 77ull, 255ull}) {
    const StateVector v = symmetric_state(j, 256, 8);
    CHECK(pass_probability(v, v) == 1.0);
  }
}

TEST_CASE("sampled outcomes follow the exact probability") {
  RngStream rng(RngSeed{32, 0});
  const double p = 0.625;  // tr(rho sigma) = 1/D at D = 4
  BinomialEstimate est;
  for (int i = 0; i < 100000; ++i) est.add(sample_swap_outcome(p, rng).passed);
  CHECK(std::abs(est.rate() - p) <= 3.0 * std::sqrt(p * (1 - p) / 100000.0));
}

TEST_CASE("orthogonal states pass half the time, identical always") {
  RngStream rng(RngSeed{33, 0});
  const StateVector e0 = basis_state(4, 0);
  const StateVector e1 = basis_state(4, 1);
  BinomialEstimate est;
  for (int i = 0; i < 100000; ++i)
    est.add(run_swap_test(e0, e1, rng).passed);
  CHECK(std::abs(est.rate() - 0.5) <= 3.0 * std::sqrt(0.25 / 100000.0));
  for (int i = 0; i < 1000; ++i) CHECK(run_swap_test(e0, e0, rng).passed);
}

TEST_CASE("outcome frequencies converge: 3-sigma window covers >= 99%") {
  // 100 independent repetitions of a 1e5-trial estimate; the documented
  // convergence property allows at most 1 of them outside 3 sigma.
  const double p = pass_probability(basis_state(2, 0), basis_state(2, 1));
  const double sigma = std::sqrt(p * (1 - p) / 100000.0);
  int covered = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RngStream rng(substream(RngSeed{34, 0}, rep));
    BinomialEstimate est;
    for (int i = 0; i < 100000; ++i)
      est.add(sample_swap_outcome(p, rng).passed);
    covered += std::abs(est.rate() - p) <= 3.0 * sigma;
  }
  CHECK(covered >= 99);
}

TEST_CASE("coin flips are fair, reproducible, and stream-separated") {
  RngStream rng(RngSeed{35, 0});
  BinomialEstimate est;
  for (int i = 0; i < 100000; ++i) est.add(coin_flip_bit(rng) == 1);
  CHECK(std::abs(est.rate() - 0.5) <= 3.0 * std::sqrt(0.25 / 100000.0));

  RngStream a1(RngSeed{36, 1});
  RngStream a2(RngSeed{36, 1});
  RngStream b(RngSeed{36, 2});
  bool identical = true;
  bool differs = false;
  for (int i = 0; i < 64; ++i) {
    const int bit1 = coin_flip_bit(a1);
    identical = identical && bit1 == coin_flip_bit(a2);
    differs = differs || bit1 != coin_flip_bit(b);
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("sampled outcome carries the exact probability it used") {
  RngStream rng(RngSeed{37, 0});
  const SwapOutcome out = sample_swap_outcome(0.75, rng);
  CHECK(out.pass_probability == 0.75);
}
