#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace umeb::hadamard {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A +-1 matrix with H H^T = n I, checked exactly on construction.
/// Rows and columns are 0-indexed.
class HadamardMatrix {
 public:
  /// Throws InvalidHadamard if `entries` is not square, has an entry outside
  /// {+1, -1}, or fails H H^T = n I.
  explicit HadamardMatrix(IntMatrix entries);

  Eigen::Index order() const { return entries_.rows(); }
  std::int64_t operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }
  const IntMatrix& entries() const { return entries_; }

  friend bool operator==(const HadamardMatrix& a, const HadamardMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  IntMatrix entries_;
};

/// True iff every entry is +-1 and H H^T = H^T H = n I in integer arithmetic.
bool is_hadamard(const IntMatrix& h);

/// Order 2^k, built by repeated doubling [[H, H], [H, -H]].
HadamardMatrix sylvester(int k);

/// Paley type I, order q+1, for prime q = 3 (mod 4).
HadamardMatrix paley_one(std::int64_t q);

/// Paley type II, order 2(q+1), for prime q = 1 (mod 4).
HadamardMatrix paley_two(std::int64_t q);

/// Multiplies each column j by h(0, j), so that row 0 becomes all ones.
HadamardMatrix normalize_first_row(const HadamardMatrix& h);

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

// Strategy order: Sylvester, Paley I, Paley II, then Kronecker splits n = a*b
// with a ascending. Deterministic for a given n.
std::optional<HadamardMatrix> try_construct(std::int64_t n);

/// As try_construct, but throws UnsupportedOrder when no strategy applies.
HadamardMatrix construct(std::int64_t n);

}  // namespace umeb::hadamard
