#include "umeb/channels.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "umeb/errors.hpp"

namespace umeb::channels {

ComplexMatrix wh_plus_apply(const ComplexMatrix& x) {
  matcore::detail::require_square(x);
  const auto d = x.rows();
  return (x.trace() * ComplexMatrix::Identity(d, d) + x.transpose()) / double(d + 1);
}

ComplexMatrix choi_of_channel(const Channel& channel, int d) {
  ComplexMatrix choi = ComplexMatrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  ComplexMatrix unit = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      unit(a, b) = 1.0;
      const ComplexMatrix image = channel(unit);
      matcore::detail::require_same_shape(unit, image);
      choi.block(Eigen::Index(a) * d, Eigen::Index(b) * d, d, d) = image;
      unit(a, b) = 0.0;
    }
  }
  return choi;
}

Eigen::Index choi_rank(const Channel& channel, int d, const Tolerance& tol) {
  tol.validate();
  const RealVector ev = matcore::hermitian_eigenvalues(choi_of_channel(channel, d));
  const double largest = ev.size() ? ev.maxCoeff() : 0.0;
  if (largest <= 0.0) return 0;
  return Eigen::Index((ev.array() > tol.rank_eps * largest).count());
}

MixedUnitaryDecomposition umeb_decomposition(const UnitaryFamily& uf, const UmebCertificate& cert) {
  if (!cert.symmetric_span || !cert.unitary || !cert.orthogonal) {
    throw Error(ErrorCode::NotCertified,
                "unitary family is not a certified trace-orthogonal basis of the symmetric matrices");
  }
  const double w = 2.0 / (double(uf.d) * double(uf.d + 1));
  return {std::vector<double>(uf.size(), w), uf};
}

MixedUnitaryDecomposition umeb_decomposition(const UnitaryFamily& uf, const Tolerance& tol) {
  return umeb_decomposition(uf, certify_umeb(uf, tol));
}

ComplexMatrix apply_decomposition(const MixedUnitaryDecomposition& dec, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (std::size_t j = 0; j < dec.weights.size(); ++j) {
    const auto& u = dec.unitaries.unitaries[j];
    out += dec.weights[j] * (u * x * u.adjoint());
  }
  return out;
}

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = unit(rng);
      const double im = unit(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return (g + g.adjoint()) / 2.0;
}

DecompositionReport verify_decomposition(const MixedUnitaryDecomposition& dec, int trials,
                                         std::uint64_t seed, const Tolerance& tol) {
  tol.validate();
  if (trials < 1) {
    throw Error(ErrorCode::OutOfRange, "need at least one trial, got " + std::to_string(trials));
  }
  if (dec.weights.size() != dec.unitaries.size()) {
    throw Error(ErrorCode::ShapeMismatch, "weights and unitaries differ in count");
  }
  const int d = dec.unitaries.d;
  DecompositionReport rep;
  rep.d = d;
  rep.cardinality = dec.weights.size();
  rep.weight_sum = std::accumulate(dec.weights.begin(), dec.weights.end(), 0.0);
  rep.trials = trials;
  rep.seed = seed;

  // (a) Choi matrices: mixture of vec(U) vec(U)^* against the channel's own.
  ComplexMatrix mixture = ComplexMatrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (std::size_t j = 0; j < dec.weights.size(); ++j) {
    const ComplexVector v = dec.unitaries.unitaries[j].reshaped();
    mixture += dec.weights[j] * (v * v.adjoint());
  }
  const ComplexMatrix target = choi_of_channel(wh_plus_apply, d);
  rep.choi_dev = (mixture - target).norm();
  rep.choi_pass = rep.choi_dev <= tol.eps * double(d) * double(d);

  // (b) Action on random Hermitian inputs; channel side by direct formula.
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix x = random_hermitian(d, seed + std::uint64_t(t));
    const double dev = matcore::max_abs(apply_decomposition(dec, x) - wh_plus_apply(x));
    rep.apply_dev_max = std::max(rep.apply_dev_max, dev / matcore::max_abs(x));
  }
  rep.apply_pass = rep.apply_dev_max <= tol.eps;

  const bool weights_ok =
      std::abs(rep.weight_sum - 1.0) <= tol.eps &&
      std::all_of(dec.weights.begin(), dec.weights.end(), [](double w) { return w > 0.0; });
  rep.verdict = weights_ok && rep.choi_pass && rep.apply_pass;
  return rep;
}

}  // namespace umeb::channels
