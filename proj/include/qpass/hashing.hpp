#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qpass/bitstring.hpp"

namespace qpass {

// Which function backs the index derivation. "sha256" truncates a real
// SHA-256 digest of the packed input; "ideal" is a keyed 64-bit mixer
// standing in for a perfectly uniform hash, useful for separating protocol
// statistics from hash quality. Both are deterministic given the HashSpec.
struct HashSpec {
  enum class Algo { sha256, ideal };

  Algo algorithm = Algo::sha256;
  unsigned output_bits = 8;     // n, 1..62
  std::uint64_t ideal_key = 0;  // only consulted by the ideal mixer

  static HashSpec make_sha256(unsigned output_bits);
  static HashSpec make_ideal(unsigned output_bits, std::uint64_t key = 0);

  // "sha256/trunc8", "ideal:5/trunc8"; parse() inverts to_string().
  std::string to_string() const;
  static HashSpec parse(const std::string& text);

  void validate() const;  // throws std::invalid_argument

  bool operator==(const HashSpec&) const = default;
};

// Raw SHA-256 (exposed so tests can pin published vectors).
std::array<std::uint8_t, 32> sha256_digest(const std::uint8_t* data,
                                           std::size_t len);

// j = integer value of the first output_bits bits of H(p || r). The
// concatenation is bit-level (p first, fixed declared lengths) and packed
// MSB-first into bytes, zero-padding only the tail of the final byte.
std::uint64_t hash_index(const BitString& p, const BitString& r,
                         const HashSpec& spec);

// Same derivation for a single input; used by the weak-password pre-hash.
std::uint64_t hash_value(const BitString& input, const HashSpec& spec);

// q = H'(b) as a bit string of spec_prime.output_bits bits. Protocols that
// assume uniformly chosen passwords substitute q for a freely chosen b.
BitString weak_password_index(const BitString& b, const HashSpec& spec_prime);

}  // namespace qpass
