#pragma once

#include "qpass/linalg.hpp"
#include "qpass/rng.hpp"

namespace qpass {

// One comparison outcome plus the exact probability it was sampled with,
// so estimators can be checked against the probabilities they came from.
struct SwapOutcome {
  bool passed = false;
  double pass_probability = 0.0;
};

// Probability a comparison of the two states passes: (1 + tr(rho sigma)) / 2,
// clamped to [0, 1]. A fidelity within NORM_TOL of 1 snaps to exactly 1, so
// identical states pass deterministically instead of with probability 1-ulp.
double pass_probability(const DensityMatrix& a, const DensityMatrix& b);
double pass_probability(const StateVector& a, const StateVector& b);
double pass_probability(const DensityMatrix& rho, const StateVector& psi);

// Sample a pass/fail outcome for the given exact probability.
SwapOutcome sample_swap_outcome(double pass_prob, RngStream& rng);

// Compare two states destructively (outcome-level; a failed comparison
// proves the states differed, a pass is evidence only).
SwapOutcome run_swap_test(const DensityMatrix& a, const DensityMatrix& b,
                          RngStream& rng);
SwapOutcome run_swap_test(const StateVector& a, const StateVector& b,
                          RngStream& rng);

// One shared unbiased random bit: the comparison of two orthogonal states,
// pass mapped to 1.
int coin_flip_bit(RngStream& rng);

}  // namespace qpass
