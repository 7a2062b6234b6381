#include "qpass/hashing.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace qpass {
namespace {

std::uint64_t splitmix64_round(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Keyed mixer over the packed bytes and the exact bit length. Two
// finalizer rounds give full avalanche; the low n bits are the output.
std::uint64_t ideal_mix(const std::vector<std::uint8_t>& bytes,
                        std::size_t bit_len, std::uint64_t key) {
  std::uint64_t h = 0xCBF29CE484222325ULL ^ key;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  h ^= bit_len;
  h *= 0x100000001B3ULL;
  return splitmix64_round(splitmix64_round(h));
}

std::uint64_t truncate_bits(const std::array<std::uint8_t, 32>& digest,
                            unsigned bits) {
  const unsigned nbytes = (bits + 7) / 8;
  std::uint64_t v = 0;
  for (unsigned i = 0; i < nbytes; ++i) v = (v << 8) | digest[i];
  return v >> (8 * nbytes - bits);
}

std::uint64_t derive(const BitString& input, const HashSpec& spec) {
  spec.validate();
  const std::vector<std::uint8_t> bytes = input.to_bytes();
  switch (spec.algorithm) {
    case HashSpec::Algo::sha256:
      return truncate_bits(sha256_digest(bytes.data(), bytes.size()),
                           spec.output_bits);
    case HashSpec::Algo::ideal:
      return ideal_mix(bytes, input.size(), spec.ideal_key) &
             ((1ULL << spec.output_bits) - 1);
  }
  throw std::logic_error("derive: unknown hash algorithm");
}

}  // namespace

HashSpec HashSpec::make_sha256(unsigned output_bits) {
  HashSpec s{Algo::sha256, output_bits, 0};
  s.validate();
  return s;
}

HashSpec HashSpec::make_ideal(unsigned output_bits, std::uint64_t key) {
  HashSpec s{Algo::ideal, output_bits, key};
  s.validate();
  return s;
}

void HashSpec::validate() const {
  if (output_bits < 1 || output_bits > 62)
    throw std::invalid_argument("HashSpec: output_bits must be in [1, 62]");
}

std::string HashSpec::to_string() const {
  std::string name = algorithm == Algo::sha256
                         ? "sha256"
                         : "ideal:" + std::to_string(ideal_key);
  return name + "/trunc" + std::to_string(output_bits);
}

HashSpec HashSpec::parse(const std::string& text) {
  const std::size_t slash = text.find("/trunc");
  if (slash == std::string::npos)
    throw std::invalid_argument("HashSpec: expected '<algo>/trunc<bits>'");
  const std::string algo = text.substr(0, slash);
  unsigned bits = 0;
  try {
    bits = static_cast<unsigned>(std::stoul(text.substr(slash + 6)));
  } catch (const std::exception&) {
    throw std::invalid_argument("HashSpec: bad bit count in '" + text + "'");
  }
  if (algo == "sha256") return make_sha256(bits);
  if (algo == "ideal") return make_ideal(bits);
  if (algo.rfind("ideal:", 0) == 0) {
    try {
      return make_ideal(bits, std::stoull(algo.substr(6)));
    } catch (const std::exception&) {
      throw std::invalid_argument("HashSpec: bad ideal key in '" + text + "'");
    }
  }
  throw std::invalid_argument("HashSpec: unknown algorithm '" + algo + "'");
}

std::array<std::uint8_t, 32> sha256_digest(const std::uint8_t* data,
                                           std::size_t len) {
  std::array<std::uint8_t, 32> out{};
  unsigned int out_len = 0;
  if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 ||
      out_len != out.size())
    throw std::runtime_error("sha256_digest: EVP_Digest failed");
  return out;
}

std::uint64_t hash_index(const BitString& p, const BitString& r,
                         const HashSpec& spec) {
  if (p.empty() || r.empty())
    throw std::invalid_argument("hash_index: empty password or random string");
  return derive(p.concat(r), spec);
}

std::uint64_t hash_value(const BitString& input, const HashSpec& spec) {
  if (input.empty()) throw std::invalid_argument("hash_value: empty input");
  return derive(input, spec);
}

BitString weak_password_index(const BitString& b, const HashSpec& spec_prime) {
  return BitString::from_uint(hash_value(b, spec_prime), spec_prime.output_bits);
}

}  // namespace qpass
