#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "umeb/hadamard.hpp"
#include "umeb/matcore.hpp"
#include "umeb/numth.hpp"
#include "umeb/rational.hpp"

namespace umeb::packing {

/// Where a CHRSS projection came from: base block t and cyclic shift.
struct Provenance {
  int t = 0;
  int shift = 0;
};

/// Rank-r real symmetric projections in M_d with a target pairwise trace.
struct ProjectionFamily {
  int d = 0;
  int r = 0;
  std::vector<ComplexMatrix> projections;
  Rational beta_target;
  // One entry per projection for CHRSS-built families, empty otherwise.
  std::vector<Provenance> provenance;
  std::optional<double> C;
  // CHRSS parameters, when applicable.
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> k;
  std::string source;

  std::size_t size() const { return projections.size(); }
};

/// |<v_i, v_j>| for a maximal set of real equiangular lines: 1/sqrt(d+2).
double beta_lines(int d);

/// r (rd + r - 2) / ((d+2)(d-1)), the pairwise trace tr(P_i P_j) of d(d+1)/2
/// real equiangular rank-r projections. Throws RankOutOfRange unless 1 <= r < d.
Rational beta_projections(int d, int r);

/// (1 + sqrt(p+2)) / sqrt(p+1).
double chrss_constant(std::int64_t p);

/// The (p-1)/2 unnormalized vectors e_{q_s} + h(s,t) h(0,t) C e_{k q_s mod p},
/// s = 1..(p-1)/2 indexing rows of h. Supports are checked to be disjoint.
std::vector<RealVector> chrss_base_vectors(const numth::UmebPrime& prime,
                                           const hadamard::HadamardMatrix& h, int t);

/// Moves entry i of every vector to index (i + x) mod n.
std::vector<RealVector> cyclic_shift(std::span<const RealVector> vectors, int x);

/// sum v v^T / |v|^2 over pairwise-orthogonal vectors. Throws NotOrthogonal
/// when some pair has |<u,v>| > eps |u||v|.
ComplexMatrix projection_from_basis(std::span<const RealVector> vectors, const Tolerance& tol = {});

/// p(p+1)/2 projections, ordered lexicographically by (t, shift).
ProjectionFamily build_chrss_family(const numth::UmebPrime& prime, const hadamard::HadamardMatrix& h,
                                    const Tolerance& tol = {});

struct EquiangularReport {
  std::size_t count = 0;
  std::size_t pairs = 0;
  double max_pair_dev = 0.0;         // max |tr(P_i P_j) - beta| over i != j
  double max_idempotency_dev = 0.0;  // max |P^2 - P|
  double max_rank_dev = 0.0;         // max |tr(P) - r|
  double max_symmetry_dev = 0.0;     // max |P - P^T| and |P - P^*|
  double max_imag = 0.0;
  bool pass = false;
};

/// Pairwise traces are taken from the Gram matrix of the family, which equals
/// tr(P_i P_j) for Hermitian members.
EquiangularReport verify_equiangular(const ProjectionFamily& family, const Tolerance& tol = {});

/// Same, reusing an already computed Gram matrix of the family.
EquiangularReport verify_equiangular(const ProjectionFamily& family, const ComplexMatrix& gram,
                                     const Tolerance& tol = {});

/// Q_i = I - P_i; rank d - r, beta' = (d - r) + (beta - r).
ProjectionFamily dual_family(const ProjectionFamily& family);

/// The 6 icosahedron diagonals (0, +-1, phi), (+-1, phi, 0), (phi, 0, +-1),
/// normalized, as rank-one projections in d = 3.
ProjectionFamily icosahedron_lines();

/// x = (r^2 - d beta) / (r (r - beta)); x * sum P_i = I for a spanning family.
Rational identity_coefficient(int d, int r, const Rational& beta);

/// max |x sum P_i - I| with x from identity_coefficient.
double identity_reconstruction_dev(const ProjectionFamily& family);

}  // namespace umeb::packing
