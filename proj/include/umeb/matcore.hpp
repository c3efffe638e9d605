#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "umeb/errors.hpp"

namespace umeb {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = Mat<Complex>;
using ComplexVector = Vec<Complex>;
using RealMatrix = Mat<double>;
using RealVector = Vec<double>;

/// Absolute tolerance for certified comparisons (`eps`) and the relative
/// eigenvalue cut-off used for numerical rank (`rank_eps`).
struct Tolerance {
  double eps = 1e-9;
  double rank_eps = 1e-7;

  /// Throws OutOfRange unless both thresholds are positive and finite.
  void validate() const;
};

namespace matcore {

namespace detail {

template <typename A, typename B>
void require_same_shape(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

template <typename A>
void require_square(const Eigen::MatrixBase<A>& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NotSquare,
                "expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
}

}  // namespace detail

/// tr(a^* b) = sum_ij conj(a_ij) b_ij.
template <typename A, typename B>
Complex frobenius_inner(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  detail::require_same_shape(a, b);
  return Complex(a.template cast<Complex>().conjugate().cwiseProduct(b.template cast<Complex>()).sum());
}

template <typename A>
double max_abs(const Eigen::MatrixBase<A>& a) {
  return a.size() == 0 ? 0.0 : double(a.cwiseAbs().maxCoeff());
}

/// Returns ((a + a^T)/2, (a - a^T)/2).
template <typename A>
std::pair<Mat<typename A::Scalar>, Mat<typename A::Scalar>> sym_antisym_split(const Eigen::MatrixBase<A>& a) {
  detail::require_square(a);
  using M = Mat<typename A::Scalar>;
  M sym = (a + a.transpose()) / typename A::Scalar(2);
  M anti = (a - a.transpose()) / typename A::Scalar(2);
  return {std::move(sym), std::move(anti)};
}

/// Column-stacking vectorization scaled by 1/sqrt(d): entry i + d*j holds
/// u(i, j)/sqrt(d). Unit norm whenever u is unitary. This is the inverse of
/// the Choi-Jamiolkowski map j(u (x) v) = u v^T, up to the 1/sqrt(d).
template <typename A>
ComplexVector cj_vectorize(const Eigen::MatrixBase<A>& u) {
  detail::require_square(u);
  const Eigen::Index d = u.rows();
  ComplexVector out(d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.segment(j * d, d) = u.col(j).template cast<Complex>();
  }
  return out / std::sqrt(double(d));
}

struct UnitarityCheck {
  bool unitary = false;
  double deviation = 0.0;
};

/// deviation = max |(u^* u - I)_ij|.
template <typename A>
UnitarityCheck is_unitary(const Eigen::MatrixBase<A>& u, const Tolerance& tol = {}) {
  detail::require_square(u);
  const ComplexMatrix uc = u.template cast<Complex>();
  const double dev = max_abs(uc.adjoint() * uc - ComplexMatrix::Identity(u.rows(), u.cols()));
  return {dev <= tol.eps, dev};
}

/// Gram matrix G_ij = tr(v_i^* v_j) of equally shaped matrices.
ComplexMatrix gram_matrix(std::span<const ComplexMatrix> vectors);

/// Each matrix as one column of a d^2 x N matrix (plain column stacking, no
/// rescaling). G = M^* M.
ComplexMatrix stack_columns(std::span<const ComplexMatrix> vectors);

/// Number of Gram eigenvalues above rank_eps * (largest eigenvalue).
Eigen::Index rank_from_gram(const ComplexMatrix& gram, const Tolerance& tol = {});

/// Dimension of span{v_i}, via the Gram matrix.
Eigen::Index numerical_rank(std::span<const ComplexMatrix> vectors, const Tolerance& tol = {});

/// Ascending eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// Tensor flip on C^d (x) C^d: SWAP(e_a (x) e_c) = e_c (x) e_a, with
/// e_a (x) e_c at index a*d + c.
RealMatrix swap_operator(Eigen::Index d);

}  // namespace matcore
}  // namespace umeb
