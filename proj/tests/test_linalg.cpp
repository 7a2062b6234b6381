#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qpass/linalg.hpp"
#include "qpass/rng.hpp"

using namespace qpass;
using std::complex;

namespace {
StateVector basis_state(Eigen::Index dim, Eigen::Index k) {
  StateVector v = StateVector::Zero(dim);
  v(k) = 1.0;
  return v;
}
}  // namespace

TEST_CASE("overlap is the conjugated inner product") {
  StateVector a(2), b(2);
  a << complex<double>(1.0 / std::sqrt(2.0), 0.0),
      complex<double>(0.0, 1.0 / std::sqrt(2.0));
  b << 1.0, 0.0;
  const auto o = overlap(a, b);
  CHECK(std::real(o) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::imag(o) == doctest::Approx(0.0));
  // <a|a> = 1, and conjugation flips the order.
  CHECK(std::abs(overlap(a, a) - 1.0) < NORM_TOL);
  CHECK(overlap(a, b) == std::conj(overlap(b, a)));
  CHECK_THROWS_AS(overlap(a, basis_state(3, 0)), std::invalid_argument);
}

TEST_CASE("outer builds a projector and insists on normalization") {
  const StateVector e0 = basis_state(2, 0);
  const DensityMatrix p = outer(e0);
  CHECK(p(0, 0) == complex<double>(1.0, 0.0));
  CHECK(p(1, 1) == complex<double>(0.0, 0.0));
  CHECK(is_density_matrix(p));
  StateVector unnorm(2);
  unnorm << 2.0, 0.0;
  CHECK_THROWS_AS(outer(unnorm), std::invalid_argument);
}

TEST_CASE("trace_product of Hermitian factors is real") {
  DensityMatrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;  // Pauli Z
  DensityMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;  // Pauli X
  CHECK(trace_product(z, z) == doctest::Approx(2.0));
  CHECK(trace_product(z, x) == doctest::Approx(0.0));
  const DensityMatrix half = DensityMatrix::Identity(2, 2) * 0.5;
  CHECK(trace_product(half, outer(basis_state(2, 1))) ==
        doctest::Approx(0.5));
  DensityMatrix rect(2, 3);
  CHECK_THROWS_AS(trace_product(z, rect), std::invalid_argument);
}

TEST_CASE("tensor multiplies dimensions and respects the cap") {
  const DensityMatrix a = outer(basis_state(2, 0));
  const DensityMatrix b = outer(basis_state(3, 2));
  const DensityMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  CHECK(std::real(t(2, 2)) == doctest::Approx(1.0));  // index 0*3+2
  CHECK(t.trace().real() == doctest::Approx(1.0));

  const DensityMatrix big = DensityMatrix::Identity(80, 80) / 80.0;
  CHECK_THROWS_AS(tensor(big, big), std::length_error);
}

TEST_CASE("extreme eigenvalues of known Hermitian matrices") {
  DensityMatrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  CHECK(max_eigenvalue(z) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(z) == doctest::Approx(-1.0));
  DensityMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  CHECK(max_eigenvalue(x) == doctest::Approx(1.0));
  DensityMatrix skew(2, 2);
  skew << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(max_eigenvalue(skew), std::invalid_argument);
}

TEST_CASE("scale_mix forms convex combinations and validates weights") {
  const DensityMatrix p0 = outer(basis_state(2, 0));
  const DensityMatrix p1 = outer(basis_state(2, 1));
  const DensityMatrix mix = scale_mix<double>({p0, p1}, {0.5, 0.5});
  CHECK((mix - DensityMatrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() <
        NORM_TOL);
  CHECK(is_density_matrix(mix));
  CHECK_THROWS_AS(scale_mix<double>({p0, p1}, {0.7, 0.7}),
                  std::invalid_argument);
  CHECK_THROWS_AS(scale_mix<double>({p0, p1}, {1.5, -0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(scale_mix<double>({p0}, {0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("is_density_matrix accepts physical states and rejects others") {
  CHECK(is_density_matrix(DensityMatrix::Identity(4, 4) / 4.0));
  DensityMatrix traceless(2, 2);
  traceless << 1.0, 0.0, 0.0, 1.0;  // trace 2
  CHECK_FALSE(is_density_matrix(traceless));
  DensityMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;  // negative eigenvalue
  CHECK_FALSE(is_density_matrix(negative));
}

TEST_CASE("random pure states are normalized and spread out") {
  RngStream rng(RngSeed{21, 0});
  const StateVector a = random_pure_state(8, rng);
  const StateVector b = random_pure_state(8, rng);
  CHECK(is_normalized(a));
  CHECK(is_normalized(b));
  CHECK(std::abs(overlap(a, b)) < 0.999);  // distinct draws
}
