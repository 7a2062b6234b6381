#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpass/rng.hpp"

namespace qpass {

// Fixed-length bit sequence; index 0 is the most significant bit. Integer
// conversions are big-endian and bijective for a fixed length.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length);  // all zeros

  // value must fit in `length` bits; length <= 62 so indices stay exact.
  static BitString from_uint(std::uint64_t value, std::size_t length);

  // Parse "10110011".
  static BitString from_string(std::string_view s);

  static BitString random(std::size_t length, RngStream& rng);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t i) const;
  void set_bit(std::size_t i, int value);

  // size() <= 62 required.
  std::uint64_t to_uint() const;

  BitString concat(const BitString& other) const;
  BitString xor_with(const BitString& other) const;  // equal lengths

  // MSB-first packing; trailing bits of a partial final byte are zero.
  std::vector<std::uint8_t> to_bytes() const;

  std::string to_string() const;  // "10110011"
  std::string to_hex() const;     // packed bytes, lowercase

  bool operator==(const BitString&) const = default;

  struct Hash {
    std::size_t operator()(const BitString& b) const;
  };

 private:
  std::vector<std::uint8_t> bits_;  // one entry per bit, each 0 or 1
};

}  // namespace qpass
