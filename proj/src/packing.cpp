#include "umeb/packing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "umeb/errors.hpp"

namespace umeb::packing {

double beta_lines(int d) { return 1.0 / std::sqrt(double(d) + 2.0); }

Rational beta_projections(int d, int r) {
  if (r < 1 || r >= d) {
    throw Error(ErrorCode::RankOutOfRange,
                "need 1 <= r < d, got r=" + std::to_string(r) + ", d=" + std::to_string(d));
  }
  return Rational(std::int64_t(r) * (std::int64_t(r) * d + r - 2),
                  (std::int64_t(d) + 2) * (std::int64_t(d) - 1));
}

double chrss_constant(std::int64_t p) {
  return (1.0 + std::sqrt(double(p) + 2.0)) / std::sqrt(double(p) + 1.0);
}

std::vector<RealVector> chrss_base_vectors(const numth::UmebPrime& prime,
                                           const hadamard::HadamardMatrix& h, int t) {
  const std::int64_t p = prime.p;
  const std::int64_t half = (p - 1) / 2;
  if (h.order() != (p + 1) / 2) {
    throw Error(ErrorCode::HadamardOrderMismatch,
                "need a Hadamard matrix of order " + std::to_string((p + 1) / 2) + ", got " +
                    std::to_string(h.order()));
  }
  if (t < 0 || t > half) {
    throw Error(ErrorCode::IndexOutOfRange,
                "t=" + std::to_string(t) + " outside 0.." + std::to_string(half));
  }

  const double c = chrss_constant(p);
  std::vector<RealVector> out;
  out.reserve(std::size_t(half));
  std::set<std::int64_t> support;
  for (std::int64_t s = 1; s <= half; ++s) {
    const std::int64_t q = prime.residues[std::size_t(s - 1)];
    const std::int64_t kq = prime.k * q % p;
    if (!support.insert(q).second || !support.insert(kq).second) {
      throw Error(ErrorCode::NotOrthogonal, "support collision at index " + std::to_string(q) +
                                                " or " + std::to_string(kq) + " for k=" +
                                                std::to_string(prime.k));
    }
    RealVector v = RealVector::Zero(p);
    v(q) = 1.0;
    // Column t is scaled by h(0, t): equiangularity needs the unused row 0
    // to be all ones, which Paley II and imported matrices need not satisfy.
    v(kq) = double(h(s, t) * h(0, t)) * c;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RealVector> cyclic_shift(std::span<const RealVector> vectors, int x) {
  std::vector<RealVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    const Eigen::Index n = v.size();
    RealVector w(n);
    const Eigen::Index offset = ((Eigen::Index(x) % n) + n) % n;
    for (Eigen::Index i = 0; i < n; ++i) w((i + offset) % n) = v(i);
    out.push_back(std::move(w));
  }
  return out;
}

ComplexMatrix projection_from_basis(std::span<const RealVector> vectors, const Tolerance& tol) {
  if (vectors.empty()) {
    throw Error(ErrorCode::OutOfRange, "projection needs at least one basis vector");
  }
  const Eigen::Index n = vectors.front().size();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) {
      throw Error(ErrorCode::ShapeMismatch, "basis vectors differ in length");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double overlap = std::abs(vectors[i].dot(vectors[j]));
      if (overlap > tol.eps * vectors[i].norm() * vectors[j].norm()) {
        throw Error(ErrorCode::NotOrthogonal, "basis vectors " + std::to_string(j) + " and " +
                                                  std::to_string(i) + " overlap by " +
                                                  std::to_string(overlap));
      }
    }
  }
  RealMatrix p = RealMatrix::Zero(n, n);
  for (const auto& v : vectors) p += v * v.transpose() / v.squaredNorm();
  return p.cast<Complex>();
}

ProjectionFamily build_chrss_family(const numth::UmebPrime& prime, const hadamard::HadamardMatrix& h,
                                    const Tolerance& tol) {
  const int p = int(prime.p);
  const int half = (p - 1) / 2;

  ProjectionFamily family;
  family.d = p;
  family.r = half;
  family.beta_target = beta_projections(p, half);
  family.C = chrss_constant(p);
  family.p = prime.p;
  family.k = prime.k;
  family.source = "chrss";
  family.projections.reserve(std::size_t(p) * std::size_t(half + 1));

  for (int t = 0; t <= half; ++t) {
    const auto base = chrss_base_vectors(prime, h, t);
    for (int x = 0; x < p; ++x) {
      const auto shifted = cyclic_shift(base, x);
      family.projections.push_back(projection_from_basis(shifted, tol));
      family.provenance.push_back({t, x});
    }
  }
  return family;
}

EquiangularReport verify_equiangular(const ProjectionFamily& family, const Tolerance& tol) {
  return verify_equiangular(family, matcore::gram_matrix(family.projections), tol);
}

EquiangularReport verify_equiangular(const ProjectionFamily& family, const ComplexMatrix& gram,
                                     const Tolerance& tol) {
  tol.validate();
  EquiangularReport rep;
  const std::size_t n = family.size();
  rep.count = n;
  rep.pairs = n * (n > 0 ? n - 1 : 0) / 2;
  const double beta = to_double(family.beta_target);

  for (const auto& proj : family.projections) {
    rep.max_idempotency_dev = std::max(rep.max_idempotency_dev, matcore::max_abs(proj * proj - proj));
    rep.max_rank_dev = std::max(rep.max_rank_dev, std::abs(proj.trace() - Complex(family.r)));
    rep.max_symmetry_dev = std::max({rep.max_symmetry_dev, matcore::max_abs(proj - proj.transpose()),
                                     matcore::max_abs(proj - proj.adjoint())});
    rep.max_imag = std::max(rep.max_imag, matcore::max_abs(proj.imag()));
  }
  for (Eigen::Index i = 0; i < Eigen::Index(n); ++i) {
    for (Eigen::Index j = i + 1; j < Eigen::Index(n); ++j) {
      rep.max_pair_dev = std::max(rep.max_pair_dev, std::abs(gram(i, j) - Complex(beta)));
    }
  }
  rep.pass = n > 0 && rep.max_pair_dev <= tol.eps && rep.max_idempotency_dev <= tol.eps &&
             rep.max_rank_dev <= tol.eps && rep.max_symmetry_dev <= tol.eps && rep.max_imag <= tol.eps;
  return rep;
}

ProjectionFamily dual_family(const ProjectionFamily& family) {
  ProjectionFamily dual = family;
  dual.r = family.d - family.r;
  dual.beta_target = Rational(dual.r) + (family.beta_target - Rational(family.r));
  dual.source = family.source + "+dual";
  const ComplexMatrix id = ComplexMatrix::Identity(family.d, family.d);
  for (auto& proj : dual.projections) proj = id - proj;
  return dual;
}

ProjectionFamily icosahedron_lines() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::vector<std::array<double, 3>> coords = {
      {0, 1, phi}, {0, -1, phi}, {1, phi, 0}, {-1, phi, 0}, {phi, 0, 1}, {phi, 0, -1},
  };
  ProjectionFamily family;
  family.d = 3;
  family.r = 1;
  family.beta_target = beta_projections(3, 1);
  family.source = "icosahedron";
  for (const auto& c : coords) {
    RealVector v(3);
    v << c[0], c[1], c[2];
    v /= std::sqrt(1.0 + phi * phi);
    family.projections.push_back((v * v.transpose()).cast<Complex>());
  }
  return family;
}

Rational identity_coefficient(int d, int r, const Rational& beta) {
  const Rational rr(r);
  return (rr * rr - Rational(d) * beta) / (rr * (rr - beta));
}

double identity_reconstruction_dev(const ProjectionFamily& family) {
  const double x = to_double(identity_coefficient(family.d, family.r, family.beta_target));
  ComplexMatrix sum = ComplexMatrix::Zero(family.d, family.d);
  for (const auto& proj : family.projections) sum += proj;
  return matcore::max_abs(x * sum - ComplexMatrix::Identity(family.d, family.d));
}

}  // namespace umeb::packing
