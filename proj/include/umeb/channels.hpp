#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "umeb/matcore.hpp"
#include "umeb/unitary_basis.hpp"

namespace umeb::channels {

/// A linear map M_d -> M_d.
using Channel = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// (tr(X) I + X^T) / (d + 1). Throws NotSquare.
ComplexMatrix wh_plus_apply(const ComplexMatrix& x);

/// sum_ab E_ab (x) Phi(E_ab), with E_ab (x) B placing B in block (a, b).
/// Under column-stacking vec this makes the Choi matrix of X -> U X U^*
/// equal to vec(U) vec(U)^*.
ComplexMatrix choi_of_channel(const Channel& channel, int d);

/// Numerical rank of the Choi matrix (Hermitian eigenvalues above
/// rank_eps * largest).
Eigen::Index choi_rank(const Channel& channel, int d, const Tolerance& tol = {});

struct MixedUnitaryDecomposition {
  std::vector<double> weights;
  UnitaryFamily unitaries;
};

/// Uniform weights 2/(d(d+1)). Throws NotCertified unless the certificate
/// shows a trace-orthogonal unitary basis of the symmetric matrices.
MixedUnitaryDecomposition umeb_decomposition(const UnitaryFamily& uf, const UmebCertificate& cert);

/// Runs certify_umeb first.
MixedUnitaryDecomposition umeb_decomposition(const UnitaryFamily& uf, const Tolerance& tol = {});

/// sum_j w_j U_j X U_j^*.
ComplexMatrix apply_decomposition(const MixedUnitaryDecomposition& dec, const ComplexMatrix& x);

/// (G + G^*)/2 with Re and Im of each G entry uniform on [0, 1), from a
/// mt19937_64 seeded with `seed`.
ComplexMatrix random_hermitian(int d, std::uint64_t seed);

struct DecompositionReport {
  int d = 0;
  std::size_t cardinality = 0;
  double weight_sum = 0.0;
  // |sum_j w_j vec(U_j) vec(U_j)^* - Choi(WH+)|_F
  double choi_dev = 0.0;
  bool choi_pass = false;
  // max over trials of |sum_j w_j U_j X U_j^* - WH+(X)|_max / |X|_max
  double apply_dev_max = 0.0;
  bool apply_pass = false;
  int trials = 0;
  std::uint64_t seed = 0;
  bool verdict = false;
};

/// Choi check passes at eps * d^2; apply check at eps relative to |X|_max.
/// Trial i uses seed + i.
DecompositionReport verify_decomposition(const MixedUnitaryDecomposition& dec, int trials,
                                         std::uint64_t seed, const Tolerance& tol = {});

}  // namespace umeb::channels
