#include "qpass/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpass {

void EncodingParams::validate() const {
  hash.validate();
  if (hash.output_bits != hash_bits)
    throw std::invalid_argument(
        "EncodingParams: hash spec output width differs from hash_bits");
  if (password_bits < 1 || password_bits > MAX_PASSWORD_BITS)
    throw std::invalid_argument("EncodingParams: password_bits out of range");
  if (hash_bits < 1 || hash_bits > MAX_HASH_BITS)
    throw std::invalid_argument("EncodingParams: hash_bits out of range");
  if (dim_log2 < 1 || dim_log2 > MAX_DIM_LOG2)
    throw std::invalid_argument("EncodingParams: dim_log2 out of range");
  if (dim_log2 >= hash_bits)
    throw std::invalid_argument(
        "EncodingParams: dim_log2 must be strictly below hash_bits");
}

std::vector<std::string> EncodingParams::warnings() const {
  std::vector<std::string> out;
  if (password_bits < hash_bits)
    out.push_back(
        "password_bits < hash_bits: hash indices cannot all be reached");
  return out;
}

StateVector symmetric_state(std::uint64_t j, std::uint64_t index_count,
                            Eigen::Index dim) {
  if (index_count < 2) throw std::invalid_argument("symmetric_state: N < 2");
  if (j >= index_count)
    throw std::invalid_argument("symmetric_state: index j out of range");
  if (dim < 1 || static_cast<std::uint64_t>(dim) > index_count)
    throw std::invalid_argument("symmetric_state: need 1 <= D <= N");

  const double amplitude = 1.0 / std::sqrt(static_cast<double>(dim));
  StateVector v(dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    // Reduce j*l mod N in 128-bit so the phase never loses integer precision.
    const auto prod = static_cast<unsigned __int128>(j) *
                      static_cast<unsigned __int128>(l);
    const auto rem = static_cast<std::uint64_t>(prod % index_count);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(rem) /
                         static_cast<double>(index_count);
    v(l) = std::polar(amplitude, angle);
  }
  return v;
}

StateVector password_state(const BitString& p, const BitString& r,
                           const EncodingParams& params) {
  params.validate();
  if (p.size() != params.password_bits)
    throw std::invalid_argument("password_state: password length mismatch");
  const std::uint64_t j = hash_index(p, r, params.hash);
  return symmetric_state(j, params.index_count(), params.dim());
}

}  // namespace qpass
