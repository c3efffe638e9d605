#include "umeb/matcore.hpp"

#include <algorithm>

namespace umeb {

void Tolerance::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps) || !(rank_eps > 0.0) || !std::isfinite(rank_eps)) {
    throw Error(ErrorCode::OutOfRange, "tolerances must be positive and finite (eps=" +
                                           std::to_string(eps) + ", rank_eps=" +
                                           std::to_string(rank_eps) + ")");
  }
}

namespace matcore {

ComplexMatrix stack_columns(std::span<const ComplexMatrix> vectors) {
  if (vectors.empty()) return ComplexMatrix(0, 0);
  const Eigen::Index rows = vectors.front().rows();
  const Eigen::Index cols = vectors.front().cols();
  ComplexMatrix m(rows * cols, Eigen::Index(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    detail::require_same_shape(vectors.front(), vectors[i]);
    m.col(Eigen::Index(i)) = vectors[i].reshaped();
  }
  return m;
}

ComplexMatrix gram_matrix(std::span<const ComplexMatrix> vectors) {
  const ComplexMatrix m = stack_columns(vectors);
  ComplexMatrix g = m.adjoint() * m;
  return g;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  detail::require_square(h);
  if (h.size() == 0) return RealVector(0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Eigen::Index rank_from_gram(const ComplexMatrix& gram, const Tolerance& tol) {
  tol.validate();
  if (gram.size() == 0) return 0;
  const RealVector ev = hermitian_eigenvalues(gram);
  const double largest = ev.maxCoeff();
  if (largest <= 0.0) return 0;
  return Eigen::Index((ev.array() > tol.rank_eps * largest).count());
}

Eigen::Index numerical_rank(std::span<const ComplexMatrix> vectors, const Tolerance& tol) {
  return rank_from_gram(gram_matrix(vectors), tol);
}

RealMatrix swap_operator(Eigen::Index d) {
  RealMatrix s = RealMatrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index c = 0; c < d; ++c) {
      s(c * d + a, a * d + c) = 1.0;
    }
  }
  return s;
}

}  // namespace matcore
}  // namespace umeb
