#include "qpass/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpass {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngSeed substream(const RngSeed& parent, std::uint64_t child_id) {
  return {parent.seed, splitmix64(splitmix64(parent.stream) ^ child_id)};
}

RngStream::RngStream(RngSeed id)
    : id_(id),
      engine_(splitmix64(splitmix64(id.seed) ^
                         id.stream * 0xD1B54A32D192ED03ULL)) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  // Top 53 bits; the largest result is (2^53 - 1) / 2^53 < 1.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  std::uint64_t x, r;
  do {
    x = next_u64();
    r = x % n;
  } while (x - r > UINT64_MAX - (n - 1));  // reject the truncated top bucket
  return r;
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u;
  do {
    u = uniform01();
  } while (u == 0.0);
  const double v = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace qpass
