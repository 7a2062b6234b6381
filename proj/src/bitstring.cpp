#include "qpass/bitstring.hpp"

#include <stdexcept>

namespace qpass {

BitString::BitString(std::size_t length) : bits_(length, 0) {}

BitString BitString::from_uint(std::uint64_t value, std::size_t length) {
  if (length > 62)
    throw std::invalid_argument("BitString::from_uint: length > 62");
  if (length < 64 && value >> length)
    throw std::invalid_argument("BitString::from_uint: value needs more bits");
  BitString b(length);
  for (std::size_t i = 0; i < length; ++i)
    b.bits_[i] = static_cast<std::uint8_t>((value >> (length - 1 - i)) & 1u);
  return b;
}

BitString BitString::from_string(std::string_view s) {
  BitString b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("BitString::from_string: not a 0/1 string");
    b.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return b;
}

BitString BitString::random(std::size_t length, RngStream& rng) {
  BitString b(length);
  for (std::size_t i = 0; i < length; ++i)
    b.bits_[i] = static_cast<std::uint8_t>(rng.next_u64() >> 63);
  return b;
}

int BitString::bit(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::bit");
  return bits_[i];
}

void BitString::set_bit(std::size_t i, int value) {
  if (i >= bits_.size()) throw std::out_of_range("BitString::set_bit");
  bits_[i] = static_cast<std::uint8_t>(value & 1);
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 62)
    throw std::invalid_argument("BitString::to_uint: more than 62 bits");
  std::uint64_t v = 0;
  for (std::uint8_t b : bits_) v = (v << 1) | b;
  return v;
}

BitString BitString::concat(const BitString& other) const {
  BitString out;
  out.bits_.reserve(bits_.size() + other.bits_.size());
  out.bits_ = bits_;
  out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
  return out;
}

BitString BitString::xor_with(const BitString& other) const {
  if (bits_.size() != other.bits_.size())
    throw std::invalid_argument("BitString::xor_with: length mismatch");
  BitString out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> bytes((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    bytes[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
  return bytes;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::uint8_t byte : to_bytes()) {
    s.push_back(digits[byte >> 4]);
    s.push_back(digits[byte & 0xF]);
  }
  return s;
}

std::size_t BitString::Hash::operator()(const BitString& b) const {
  // FNV-1a over the bits plus the length (so "0" and "00" differ).
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001B3ULL;
  };
  for (std::size_t i = 0; i < b.size(); ++i) mix(b.bits_[i]);
  mix(b.size());
  return static_cast<std::size_t>(h);
}

}  // namespace qpass
