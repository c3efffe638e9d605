#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "umeb/matcore.hpp"
#include "umeb/packing.hpp"
#include "umeb/rational.hpp"

// Unitaries U_i = I - (1 - z) P_i built from a spanning equiangular family,
// and the certificate that their Choi-Jamiolkowski images form a UMEB.
namespace umeb {

struct FeasibilityReport {
  int d = 0;
  int r = 0;
  Rational re_z;
  bool feasible = false;
  std::vector<int> allowed_d_for_r;
};

struct UnitaryFamily {
  int d = 0;
  Complex z;
  std::vector<ComplexMatrix> unitaries;
  // Null when the family was imported without its projections.
  std::shared_ptr<const packing::ProjectionFamily> source;

  std::size_t size() const { return unitaries.size(); }
};

struct UmebCertificate {
  int d = 0;
  std::size_t cardinality = 0;
  double max_unitarity_dev = 0.0;
  // max |tr(U_i^* U_j)| over i != j, and max |tr(U_i^* U_i) - d|.
  double max_orthogonality_dev = 0.0;
  double max_norm_dev = 0.0;
  bool unitary = false;
  bool orthogonal = false;
  Eigen::Index span_rank = 0;
  double max_transpose_dev = 0.0;
  bool symmetric_span = false;
  // Largest norm of an antisymmetric basis element's projection onto span{U_i}.
  double max_antisym_overlap = 0.0;
  bool complement_antisymmetric = false;
  bool d_odd = false;
  bool unextendible_verdict = false;
  double cj_orthonormality_dev = 0.0;
  // d = 3 built from p = 3 sits outside the p = 7 (mod 8) family.
  bool small_case_p3 = false;

  /// Verdict plus the unitarity and orthogonality checks.
  bool all_pass() const { return unextendible_verdict && unitary && orthogonal; }
};

/// Exact Re(z) = (2r(d+1)(d-r) - d(d+2)(d-1)) / (2r(d+1)(d-r)); feasible iff
/// Re(z) >= -1. Throws RankOutOfRange unless 1 <= r < d.
FeasibilityReport feasibility(int d, int r);

/// The cubic d^3 + d^2(1-4r) + d(4r^2-4r-2) + 4r^2, nonpositive exactly when
/// d(d+2)(d-1) <= 4r(d+1)(d-r).
std::int64_t feasibility_cubic(std::int64_t d, std::int64_t r);

/// z = Re(z) + i sqrt(1 - Re(z)^2) on the nonnegative imaginary branch.
/// Throws Infeasible when no unit-modulus z exists.
Complex compute_phase(int d, int r);

UnitaryFamily build_unitaries(const packing::ProjectionFamily& family, Complex z);
UnitaryFamily build_unitaries(std::shared_ptr<const packing::ProjectionFamily> family, Complex z);

struct CjStates {
  std::vector<ComplexVector> states;
  double max_overlap = 0.0;
  double max_norm_dev = 0.0;
};

/// Vectorized unitaries (I (x) U) phi / sqrt(d).
CjStates cj_states(const UnitaryFamily& uf);

UmebCertificate certify_umeb(const UnitaryFamily& uf, const Tolerance& tol = {});

struct LineFeasibilityRow {
  int d = 0;
  Rational re_z;
  bool feasible = false;
};

/// Rank-one sweep using Re(z) = 1 - d(d+2)/(2(d+1)) for d = 1..d_max.
std::vector<LineFeasibilityRow> line_feasibility_sweep(int d_max);

}  // namespace umeb
