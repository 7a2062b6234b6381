#include "qpass/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpass {

double BinomialEstimate::rate() const {
  if (trials == 0) throw std::logic_error("BinomialEstimate: no trials");
  return static_cast<double>(successes) / static_cast<double>(trials);
}

double BinomialEstimate::std_error() const {
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double BinomialEstimate::ci_low() const {
  return std::max(0.0, rate() - Z_95 * std_error());
}

double BinomialEstimate::ci_high() const {
  return std::min(1.0, rate() + Z_95 * std_error());
}

void RunningMean::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

double RunningMean::variance() const {
  if (count_ < 2) throw std::logic_error("RunningMean: need two samples");
  return m2_ / static_cast<double>(count_ - 1);
}

double RunningMean::sem() const {
  return std::sqrt(variance() / static_cast<double>(count_));
}

double chi_square_statistic(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2)
    throw std::invalid_argument("chi_square_statistic: need >= 2 bins");
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0)
    throw std::invalid_argument("chi_square_statistic: empty sample");
  const double expected =
      static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double chi_square_critical(unsigned dof, double one_sided_z) {
  if (dof == 0) throw std::invalid_argument("chi_square_critical: dof == 0");
  const double k = static_cast<double>(dof);
  const double a = 2.0 / (9.0 * k);
  const double cube = 1.0 - a + one_sided_z * std::sqrt(a);
  return k * cube * cube * cube;
}

}  // namespace qpass
