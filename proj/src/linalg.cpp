#include "qpass/linalg.hpp"

namespace qpass {

StateVector random_pure_state(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("random_pure_state: dim < 1");
  StateVector v(dim);
  for (Eigen::Index l = 0; l < dim; ++l)
    v(l) = std::complex<double>(rng.normal(), rng.normal());
  const double norm = v.norm();
  if (norm == 0.0) return random_pure_state(dim, rng);  // probability ~0
  return v / norm;
}

}  // namespace qpass
