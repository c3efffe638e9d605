#include "umeb/hadamard.hpp"

#include <string>
#include <utility>

#include "umeb/errors.hpp"
#include "umeb/numth.hpp"

namespace umeb::hadamard {

bool is_hadamard(const IntMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) return false;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    const auto v = h.data()[i];
    if (v != 1 && v != -1) return false;
  }
  const IntMatrix target = IntMatrix::Identity(h.rows(), h.cols()) * h.rows();
  return IntMatrix(h * h.transpose()) == target && IntMatrix(h.transpose() * h) == target;
}

HadamardMatrix::HadamardMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (!is_hadamard(entries_)) {
    throw Error(ErrorCode::InvalidHadamard,
                "matrix of shape " + std::to_string(entries_.rows()) + "x" +
                    std::to_string(entries_.cols()) + " does not satisfy H H^T = n I");
  }
}

HadamardMatrix sylvester(int k) {
  IntMatrix h = IntMatrix::Ones(1, 1);
  for (int step = 0; step < k; ++step) {
    const Eigen::Index n = h.rows();
    IntMatrix next(2 * n, 2 * n);
    next << h, h, h, -h;
    h = std::move(next);
  }
  return HadamardMatrix(std::move(h));
}

namespace {

void require_prime_class(std::int64_t q, int residue_mod4) {
  if (!numth::is_prime(q) || q < 3) {
    throw Error(ErrorCode::NotPrime, "Paley construction needs an odd prime, got " + std::to_string(q));
  }
  if (q % 4 != residue_mod4) {
    throw Error(ErrorCode::BadResidueClass,
                "Paley construction needs q = " + std::to_string(residue_mod4) +
                    " (mod 4), got q=" + std::to_string(q));
  }
}

// Jacobsthal matrix Q_ij = chi(j - i) bordered by a row and column of ones:
// the conference-style core shared by both Paley constructions.
IntMatrix bordered_jacobsthal(std::int64_t q, std::int64_t first_col_sign) {
  const Eigen::Index n = q + 1;
  IntMatrix s = IntMatrix::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j) {
    s(0, j) = 1;
    s(j, 0) = first_col_sign;
  }
  for (std::int64_t i = 0; i < q; ++i) {
    for (std::int64_t j = 0; j < q; ++j) {
      s(i + 1, j + 1) = numth::legendre(j - i, q);
    }
  }
  return s;
}

}  // namespace

HadamardMatrix paley_one(std::int64_t q) {
  require_prime_class(q, 3);
  // Skew conference matrix S; H = I + S.
  IntMatrix s = bordered_jacobsthal(q, -1);
  s += IntMatrix::Identity(q + 1, q + 1);
  return HadamardMatrix(std::move(s));
}

HadamardMatrix paley_two(std::int64_t q) {
  require_prime_class(q, 1);
  const IntMatrix c = bordered_jacobsthal(q, 1);
  const Eigen::Index n = c.rows();
  // 0 -> [[1,-1],[-1,-1]], +-1 -> +-[[1,1],[1,-1]].
  IntMatrix h(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto v = c(i, j);
      if (v == 0) {
        h.block<2, 2>(2 * i, 2 * j) << 1, -1, -1, -1;
      } else {
        h.block<2, 2>(2 * i, 2 * j) << v, v, v, -v;
      }
    }
  }
  return HadamardMatrix(std::move(h));
}

HadamardMatrix normalize_first_row(const HadamardMatrix& h) {
  IntMatrix out = h.entries();
  for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) *= h(0, j);
  return HadamardMatrix(std::move(out));
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
  const Eigen::Index na = a.order();
  const Eigen::Index nb = b.order();
  IntMatrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.entries();
    }
  }
  return HadamardMatrix(std::move(out));
}

std::optional<HadamardMatrix> try_construct(std::int64_t n) {
  if (n < 1) return std::nullopt;
  if (n != 1 && n != 2 && n % 4 != 0) return std::nullopt;

  if ((n & (n - 1)) == 0) {
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    return sylvester(k);
  }
  if (numth::is_prime(n - 1) && (n - 1) % 4 == 3) return paley_one(n - 1);
  if (n % 2 == 0) {
    const std::int64_t q = n / 2 - 1;
    if (q >= 5 && numth::is_prime(q) && q % 4 == 1) return paley_two(q);
  }
  for (std::int64_t a = 2; a * a <= n; ++a) {
    if (n % a != 0) continue;
    auto left = try_construct(a);
    if (!left) continue;
    auto right = try_construct(n / a);
    if (!right) continue;
    return kronecker(*left, *right);
  }
  return std::nullopt;
}

HadamardMatrix construct(std::int64_t n) {
  if (auto h = try_construct(n)) return std::move(*h);
  throw Error(ErrorCode::UnsupportedOrder,
              "no built-in Hadamard construction of order " + std::to_string(n) +
                  "; supply one explicitly with --hadamard FILE");
}

}  // namespace umeb::hadamard
