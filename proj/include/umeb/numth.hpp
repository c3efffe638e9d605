#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace umeb::numth {

/// A prime p with p = 3 or p = 7 (mod 8), together with its nonzero
/// quadratic residues Q, non-residues R (both ascending) and a fixed k in R.
struct UmebPrime {
  std::int64_t p = 0;
  std::vector<std::int64_t> residues;
  std::vector<std::int64_t> nonresidues;
  std::int64_t k = 0;
};

bool is_prime(std::int64_t n);

/// Throws OutOfRange unless 1 <= a <= p-1.
bool is_quadratic_residue(std::int64_t a, std::int64_t p);

/// Legendre symbol (a/p) in {-1, 0, 1} for odd prime p and any integer a.
int legendre(std::int64_t a, std::int64_t p);

/// Validates p and tabulates residues. `k` overrides the default choice of
/// the smallest non-residue; it must itself be a non-residue.
UmebPrime validate_prime(std::int64_t p, std::optional<std::int64_t> k = std::nullopt);

}  // namespace umeb::numth
