#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpass/bitstring.hpp"
#include "qpass/hashing.hpp"
#include "qpass/linalg.hpp"

namespace qpass {

// Size parameters tying passwords (m bits) to hash indices (n bits) and the
// encoded state dimension D = 2^d. The security story needs d strictly
// smaller than n: many indices share each state, so a state never reveals
// its index.
struct EncodingParams {
  unsigned password_bits = 16;  // m
  unsigned hash_bits = 8;       // n
  unsigned dim_log2 = 3;        // d
  HashSpec hash = HashSpec::make_sha256(8);

  std::uint64_t index_count() const { return std::uint64_t{1} << hash_bits; }
  Eigen::Index dim() const { return Eigen::Index{1} << dim_log2; }

  void validate() const;                      // throws std::invalid_argument
  std::vector<std::string> warnings() const;  // soft recommendations
};

// Caps keeping index arithmetic in uint64 and states at desk scale.
inline constexpr unsigned MAX_HASH_BITS = 62;
inline constexpr unsigned MAX_DIM_LOG2 = 6;  // D <= 64
inline constexpr unsigned MAX_PASSWORD_BITS = 4096;

// |Phi_j> with amplitudes e^{i 2 pi j l / N} / sqrt(D) for l = 0..D-1.
// Requires j < index_count and 1 <= dim <= index_count.
StateVector symmetric_state(std::uint64_t j, std::uint64_t index_count,
                            Eigen::Index dim);

// |psi_p^r> = |Phi_{H(p || r)}>.
StateVector password_state(const BitString& p, const BitString& r,
                           const EncodingParams& params);

}  // namespace qpass
