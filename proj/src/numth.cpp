#include "umeb/numth.hpp"

#include <algorithm>
#include <string>

#include "umeb/errors.hpp"

namespace umeb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::WrongResidueClass: return "WrongResidueClass";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadResidueClass: return "BadResidueClass";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::InvalidHadamard: return "InvalidHadamard";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::HadamardOrderMismatch: return "HadamardOrderMismatch";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace numth {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1;
  base = mod(base, p);
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

}  // namespace

int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = mod(a, p);
  if (r == 0) return 0;
  // Euler's criterion.
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_quadratic_residue(std::int64_t a, std::int64_t p) {
  if (a < 1 || a > p - 1) {
    throw Error(ErrorCode::OutOfRange,
                "residue query needs 1 <= a <= p-1, got a=" + std::to_string(a) +
                    ", p=" + std::to_string(p));
  }
  return legendre(a, p) == 1;
}

UmebPrime validate_prime(std::int64_t p, std::optional<std::int64_t> k) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, "p=" + std::to_string(p) + " is not an odd prime");
  }
  if (p != 3 && p % 8 != 7) {
    throw Error(ErrorCode::WrongResidueClass,
                "p=" + std::to_string(p) + " has p mod 8 = " + std::to_string(p % 8) +
                    "; need p = 3 or p = 7 (mod 8)");
  }

  UmebPrime out;
  out.p = p;
  for (std::int64_t a = 1; a < p; ++a) {
    (is_quadratic_residue(a, p) ? out.residues : out.nonresidues).push_back(a);
  }

  if (k) {
    if (!std::binary_search(out.nonresidues.begin(), out.nonresidues.end(), *k)) {
      throw Error(ErrorCode::OutOfRange,
                  "k=" + std::to_string(*k) + " is not a quadratic non-residue mod " +
                      std::to_string(p));
    }
    out.k = *k;
  } else {
    out.k = out.nonresidues.front();
  }
  return out;
}

}  // namespace numth
}  // namespace umeb
