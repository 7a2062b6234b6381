#pragma once

#include <cstdint>
#include <vector>

namespace qpass {

// Two-sided 95% normal quantile.
inline constexpr double Z_95 = 1.959963984540054;
// One-sided 0.999 normal quantile (significance 0.001 uniformity tests).
inline constexpr double Z_999 = 3.090232306167813;

// Success counter with the usual binomial error bars.
struct BinomialEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;

  void add(bool success) {
    ++trials;
    if (success) ++successes;
  }

  double rate() const;
  double std_error() const;  // sqrt(p (1 - p) / trials)
  double ci_low() const;     // 95% normal interval, clamped to [0, 1]
  double ci_high() const;
};

// Welford accumulator for real-valued samples (fidelity estimates).
class RunningMean {
 public:
  void add(double x);
  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance (n - 1 denominator)
  double sem() const;       // standard error of the mean

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Pearson statistic for equiprobable bins.
double chi_square_statistic(const std::vector<std::uint64_t>& counts);

// Upper critical value via the Wilson-Hilferty cube approximation
// (relative error under ~0.2% for dof >= 15, shrinking with dof).
// one_sided_z is the normal quantile of the desired significance.
double chi_square_critical(unsigned dof, double one_sided_z);

}  // namespace qpass
