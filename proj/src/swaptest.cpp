#include "qpass/swaptest.hpp"

namespace qpass {
namespace {

double finalize(double fidelity) {
  if (fidelity > 1.0 - NORM_TOL) fidelity = 1.0;  // snap: see header
  if (fidelity < 0.0) fidelity = 0.0;             // roundoff below zero
  return 0.5 * (1.0 + fidelity);
}

}  // namespace

double pass_probability(const DensityMatrix& a, const DensityMatrix& b) {
  return finalize(trace_product(a, b));
}

double pass_probability(const StateVector& a, const StateVector& b) {
  return finalize(std::norm(overlap(a, b)));
}

double pass_probability(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size())
    throw std::invalid_argument("pass_probability: dimension mismatch");
  const std::complex<double> f = (psi.adjoint() * rho * psi)(0, 0);
  if (std::abs(f.imag()) > TRACE_IMAG_TOL)
    throw std::invalid_argument("pass_probability: fidelity is not real");
  return finalize(f.real());
}

SwapOutcome sample_swap_outcome(double pass_prob, RngStream& rng) {
  return {rng.bernoulli(pass_prob), pass_prob};
}

SwapOutcome run_swap_test(const DensityMatrix& a, const DensityMatrix& b,
                          RngStream& rng) {
  return sample_swap_outcome(pass_probability(a, b), rng);
}

SwapOutcome run_swap_test(const StateVector& a, const StateVector& b,
                          RngStream& rng) {
  return sample_swap_outcome(pass_probability(a, b), rng);
}

int coin_flip_bit(RngStream& rng) {
  // Orthogonal inputs make the comparison a fair coin; sampling it directly
  // is the same Bernoulli(1/2) draw.
  return sample_swap_outcome(0.5, rng).passed ? 1 : 0;
}

}  // namespace qpass
