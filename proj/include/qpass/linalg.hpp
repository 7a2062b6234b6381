#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <stdexcept>
#include <vector>

#include "qpass/rng.hpp"

namespace qpass {

// Numerical tolerances, shared by the library and its tests.
inline constexpr double NORM_TOL = 1e-12;  // normalization, trace, Hermiticity
inline constexpr double EIG_TOL = 1e-9;    // eigenvalue accuracy
inline constexpr double PSD_TOL = 1e-10;   // eigenvalues may dip to -PSD_TOL
inline constexpr double TRACE_IMAG_TOL = 1e-10;  // residual imag part of traces

// Largest tensor-product dimension we are willing to materialize.
inline constexpr Eigen::Index MAX_TENSOR_DIM = 4096;

template <typename Scalar>
using StateVectorT = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
template <typename Scalar>
using DensityMatrixT =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using StateVector = StateVectorT<double>;
using DensityMatrix = DensityMatrixT<double>;

namespace detail {

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": square matrix required");
}

}  // namespace detail

// <a|b>. Throws on dimension mismatch; for normalized inputs |result| <= 1
// up to roundoff.
template <typename DerivedA, typename DerivedB>
std::complex<detail::RealOf<DerivedA>> overlap(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size() || a.cols() != 1 || b.cols() != 1)
    throw std::invalid_argument("overlap: vectors of equal dimension required");
  return (a.adjoint() * b.derived())(0, 0);
}

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& v, double tol = NORM_TOL) {
  return std::abs(v.squaredNorm() - 1.0) <= tol;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = NORM_TOL) {
  if (a.rows() != a.cols()) return false;
  return (a.derived() - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// |v><v| for a normalized |v>.
template <typename Derived>
DensityMatrixT<detail::RealOf<Derived>> outer(
    const Eigen::MatrixBase<Derived>& v) {
  if (v.cols() != 1 || v.rows() == 0)
    throw std::invalid_argument("outer: nonempty column vector required");
  if (!is_normalized(v))
    throw std::invalid_argument("outer: vector is not normalized");
  return v.derived() * v.adjoint();
}

// tr(a b) for Hermitian a, b of equal dimension. The product of two Hermitian
// matrices has a real trace; the imaginary residue is checked and discarded.
template <typename DerivedA, typename DerivedB>
detail::RealOf<DerivedA> trace_product(const Eigen::MatrixBase<DerivedA>& a,
                                       const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_square(a, "trace_product");
  if (a.rows() != b.rows() || b.rows() != b.cols())
    throw std::invalid_argument("trace_product: dimension mismatch");
  // sum_ij a(i,j) b(j,i) without forming the product matrix.
  const auto t = a.derived().cwiseProduct(b.derived().transpose()).sum();
  if (std::abs(std::imag(t)) > TRACE_IMAG_TOL)
    throw std::invalid_argument("trace_product: trace is not real");
  return std::real(t);
}

// Kronecker product, capped so runaway dimensions fail loudly instead of
// exhausting memory.
template <typename DerivedA, typename DerivedB>
DensityMatrixT<detail::RealOf<DerivedA>> tensor(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    Eigen::Index dim_cap = MAX_TENSOR_DIM) {
  if (a.rows() * b.rows() > dim_cap || a.cols() * b.cols() > dim_cap)
    throw std::length_error("tensor: result dimension exceeds cap");
  return Eigen::kroneckerProduct(a.derived(), b.derived());
}

// Largest eigenvalue of a Hermitian matrix.
template <typename Derived>
detail::RealOf<Derived> max_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "max_eigenvalue");
  if (!is_hermitian(a))
    throw std::invalid_argument("max_eigenvalue: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DensityMatrixT<detail::RealOf<Derived>>>
      solver(a.derived(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("max_eigenvalue: eigensolver failed");
  return solver.eigenvalues().maxCoeff();
}

template <typename Derived>
detail::RealOf<Derived> min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "min_eigenvalue");
  if (!is_hermitian(a))
    throw std::invalid_argument("min_eigenvalue: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DensityMatrixT<detail::RealOf<Derived>>>
      solver(a.derived(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

// Convex combination sum_k w_k rho_k. Weights must be non-negative and sum
// to 1 within NORM_TOL; all matrices must share one dimension.
template <typename Scalar>
DensityMatrixT<Scalar> scale_mix(
    const std::vector<DensityMatrixT<Scalar>>& states,
    const std::vector<Scalar>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("scale_mix: need one weight per state");
  Scalar total = 0;
  for (Scalar w : weights) {
    if (w < Scalar(0))
      throw std::invalid_argument("scale_mix: negative weight");
    total += w;
  }
  if (std::abs(total - Scalar(1)) > NORM_TOL)
    throw std::invalid_argument("scale_mix: weights do not sum to 1");
  const Eigen::Index dim = states.front().rows();
  DensityMatrixT<Scalar> mix = DensityMatrixT<Scalar>::Zero(dim, dim);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].rows() != dim || states[k].cols() != dim)
      throw std::invalid_argument("scale_mix: dimension mismatch");
    mix += weights[k] * states[k];
  }
  return mix;
}

// Hermitian within NORM_TOL, unit trace within NORM_TOL, eigenvalues above
// -PSD_TOL. The checks every produced state must satisfy.
template <typename Derived>
bool is_density_matrix(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  if (!is_hermitian(a)) return false;
  if (std::abs(std::real(a.trace()) - 1.0) > NORM_TOL) return false;
  if (std::abs(std::imag(a.trace())) > NORM_TOL) return false;
  return min_eigenvalue((a.derived() + a.adjoint()) / 2.0) >= -PSD_TOL;
}

// Haar-random pure state: i.i.d. complex Gaussian entries, normalized.
StateVector random_pure_state(Eigen::Index dim, RngStream& rng);

}  // namespace qpass
