#include "umeb/unitary_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "umeb/errors.hpp"

namespace umeb {

FeasibilityReport feasibility(int d, int r) {
  if (r < 1 || r >= d) {
    throw Error(ErrorCode::RankOutOfRange,
                "need 1 <= r < d, got r=" + std::to_string(r) + ", d=" + std::to_string(d));
  }
  const std::int64_t dd = d;
  const std::int64_t rr = r;
  const std::int64_t denom = 2 * rr * (dd + 1) * (dd - rr);
  FeasibilityReport rep;
  rep.d = d;
  rep.r = r;
  rep.re_z = Rational(denom - dd * (dd + 2) * (dd - 1), denom);
  // Re(z) <= 1 always holds since the subtracted term is positive.
  rep.feasible = rep.re_z >= Rational(-1);
  for (int cand : {2 * r - 1, 2 * r, 2 * r + 1}) {
    if (cand > 0) rep.allowed_d_for_r.push_back(cand);
  }
  return rep;
}

std::int64_t feasibility_cubic(std::int64_t d, std::int64_t r) {
  return d * d * d + d * d * (1 - 4 * r) + d * (4 * r * r - 4 * r - 2) + 4 * r * r;
}

Complex compute_phase(int d, int r) {
  const FeasibilityReport rep = feasibility(d, r);
  if (!rep.feasible) {
    throw Error(ErrorCode::Infeasible, "no unit-modulus phase for d=" + std::to_string(d) +
                                           ", r=" + std::to_string(r) + " (Re z = " +
                                           std::to_string(rep.re_z.numerator()) + "/" +
                                           std::to_string(rep.re_z.denominator()) + " < -1)");
  }
  const double re = to_double(rep.re_z);
  // 1 - re^2 evaluated exactly before the square root.
  const Rational im_sq = Rational(1) - rep.re_z * rep.re_z;
  return {re, std::sqrt(to_double(im_sq))};
}

UnitaryFamily build_unitaries(std::shared_ptr<const packing::ProjectionFamily> family, Complex z) {
  UnitaryFamily uf;
  uf.d = family->d;
  uf.z = z;
  uf.unitaries.reserve(family->size());
  const ComplexMatrix id = ComplexMatrix::Identity(uf.d, uf.d);
  for (const auto& proj : family->projections) {
    uf.unitaries.push_back(id - (Complex(1.0) - z) * proj);
  }
  uf.source = std::move(family);
  return uf;
}

UnitaryFamily build_unitaries(const packing::ProjectionFamily& family, Complex z) {
  return build_unitaries(std::make_shared<const packing::ProjectionFamily>(family), z);
}

CjStates cj_states(const UnitaryFamily& uf) {
  CjStates out;
  out.states.reserve(uf.size());
  for (const auto& u : uf.unitaries) out.states.push_back(matcore::cj_vectorize(u));
  if (out.states.empty()) return out;

  ComplexMatrix stacked(out.states.front().size(), Eigen::Index(out.states.size()));
  for (std::size_t i = 0; i < out.states.size(); ++i) stacked.col(Eigen::Index(i)) = out.states[i];
  const ComplexMatrix inner = stacked.adjoint() * stacked;
  for (Eigen::Index i = 0; i < inner.rows(); ++i) {
    out.max_norm_dev = std::max(out.max_norm_dev, std::abs(std::sqrt(inner(i, i).real()) - 1.0));
    for (Eigen::Index j = i + 1; j < inner.cols(); ++j) {
      out.max_overlap = std::max(out.max_overlap, std::abs(inner(i, j)));
    }
  }
  return out;
}

namespace {

// Orthonormal basis (columns) of the span of the columns of `stacked`,
// from the eigendecomposition of its Gram matrix.
ComplexMatrix orthonormal_span(const ComplexMatrix& stacked, const ComplexMatrix& gram,
                               const Tolerance& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  const RealVector& ev = solver.eigenvalues();
  const double largest = ev.size() ? ev.maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (largest > 0.0 && ev(i) > tol.rank_eps * largest) keep.push_back(i);
  }
  ComplexMatrix coeffs(gram.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    coeffs.col(Eigen::Index(c)) = solver.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  }
  return stacked * coeffs;
}

}  // namespace

UmebCertificate certify_umeb(const UnitaryFamily& uf, const Tolerance& tol) {
  tol.validate();
  UmebCertificate cert;
  const int d = uf.d;
  cert.d = d;
  cert.cardinality = uf.size();
  cert.d_odd = d % 2 == 1;
  cert.small_case_p3 = uf.source && uf.source->p && *uf.source->p == 3;
  if (uf.unitaries.empty()) return cert;

  for (const auto& u : uf.unitaries) {
    cert.max_unitarity_dev = std::max(cert.max_unitarity_dev, matcore::is_unitary(u, tol).deviation);
    cert.max_transpose_dev = std::max(cert.max_transpose_dev, matcore::max_abs(u - u.transpose()));
  }

  const ComplexMatrix stacked = matcore::stack_columns(uf.unitaries);
  const ComplexMatrix gram = stacked.adjoint() * stacked;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    cert.max_norm_dev = std::max(cert.max_norm_dev, std::abs(gram(i, i) - Complex(d)));
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
      cert.max_orthogonality_dev = std::max(cert.max_orthogonality_dev, std::abs(gram(i, j)));
    }
  }
  cert.unitary = cert.max_unitarity_dev <= tol.eps;
  cert.orthogonal = std::max(cert.max_orthogonality_dev, cert.max_norm_dev) <= tol.eps * d;

  cert.span_rank = matcore::rank_from_gram(gram, tol);
  const Eigen::Index sym_dim = Eigen::Index(d) * (d + 1) / 2;
  const Eigen::Index antisym_dim = Eigen::Index(d) * (d - 1) / 2;
  cert.symmetric_span = cert.span_rank == sym_dim && cert.max_transpose_dev <= tol.eps;

  // Antisymmetric basis (E_ij - E_ji)/sqrt(2), column-stacked.
  const ComplexMatrix basis = orthonormal_span(stacked, gram, tol);
  ComplexMatrix antisym = ComplexMatrix::Zero(Eigen::Index(d) * d, antisym_dim);
  Eigen::Index col = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j, ++col) {
      antisym(i + Eigen::Index(d) * j, col) = 1.0 / std::sqrt(2.0);
      antisym(j + Eigen::Index(d) * i, col) = -1.0 / std::sqrt(2.0);
    }
  }
  if (antisym_dim > 0 && basis.cols() > 0) {
    const ComplexMatrix overlap = basis.adjoint() * antisym;
    cert.max_antisym_overlap = overlap.colwise().norm().maxCoeff();
  }
  cert.complement_antisymmetric =
      cert.max_antisym_overlap <= tol.eps && cert.span_rank + antisym_dim == Eigen::Index(d) * d;

  const CjStates cj = cj_states(uf);
  cert.cj_orthonormality_dev = std::max(cj.max_overlap, cj.max_norm_dev);

  cert.unextendible_verdict = cert.symmetric_span && cert.complement_antisymmetric && cert.d_odd;
  return cert;
}

std::vector<LineFeasibilityRow> line_feasibility_sweep(int d_max) {
  if (d_max < 3) {
    throw Error(ErrorCode::OutOfRange, "line sweep needs d_max >= 3, got " + std::to_string(d_max));
  }
  std::vector<LineFeasibilityRow> rows;
  for (int d = 1; d <= d_max; ++d) {
    LineFeasibilityRow row;
    row.d = d;
    row.re_z = Rational(1) - Rational(std::int64_t(d) * (d + 2), 2 * (std::int64_t(d) + 1));
    row.feasible = row.re_z >= Rational(-1) && row.re_z <= Rational(1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace umeb
