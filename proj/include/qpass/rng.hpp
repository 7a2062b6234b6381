#pragma once

#include <cstdint>
#include <random>

namespace qpass {

// Seed plus stream id. Identical (seed, stream) pairs reproduce the same draw
// sequence on every platform; distinct stream ids give independent streams.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const RngSeed&) const = default;
};

// Derive a child stream (one per Monte Carlo trial, per protocol role, ...).
// Distinct (parent, child_id) pairs land on distinct streams with
// probability 1 - 2^-64 per pair; the parent seed is preserved.
RngSeed substream(const RngSeed& parent, std::uint64_t child_id);

// Deterministic random stream: mt19937_64 keyed by a splitmix64 blend of
// (seed, stream). Floating-point and ranged draws are derived from raw
// 64-bit output by hand, because the std distribution templates are not
// pinned across standard library implementations.
class RngStream {
 public:
  explicit RngStream(RngSeed id);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  // True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p);

  // Unbiased uniform draw from [0, n), n >= 1. Rejection sampling.
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal, Box-Muller.
  double normal();

  const RngSeed& id() const { return id_; }

 private:
  RngSeed id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qpass
