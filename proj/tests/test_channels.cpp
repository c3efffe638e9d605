#include <doctest.h>

#include <cmath>
#include <memory>

#include "umeb/channels.hpp"
#include "umeb/errors.hpp"

using namespace umeb;
using namespace umeb::channels;

namespace {

ComplexMatrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

// Oracle: entry (a d + c, b d + e) of sum_ab E_ab (x) Phi(E_ab) is
// Phi(E_ab)(c, e) = (delta_ab delta_ce + delta_bc delta_ae) / (d + 1).
ComplexMatrix wh_plus_choi_by_index(int d) {
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double v = 0.0;
          if (a == b && c == e) v += 1.0;
          if (b == c && a == e) v += 1.0;
          m(a * d + c, b * d + e) = v / (d + 1);
        }
  return m;
}

UnitaryFamily umeb_family(std::int64_t p) {
  auto fam = std::make_shared<const packing::ProjectionFamily>(
      packing::build_chrss_family(numth::validate_prime(p), hadamard::construct((p + 1) / 2)));
  return build_unitaries(fam, compute_phase(fam->d, fam->r));
}

UnitaryFamily icosahedron_family() {
  auto fam = std::make_shared<const packing::ProjectionFamily>(packing::icosahedron_lines());
  return build_unitaries(fam, compute_phase(3, 1));
}

}  // namespace

TEST_CASE("wh_plus_apply") {
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  CHECK(matcore::max_abs(wh_plus_apply(i3) - i3) < 1e-15);
  CHECK(matcore::max_abs(wh_plus_apply(unit(3, 0, 1)) - unit(3, 1, 0) / 4.0) == 0.0);
  CHECK_THROWS_AS(wh_plus_apply(ComplexMatrix::Zero(2, 3)), Error);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix x = random_hermitian(5, seed);
    CHECK(std::abs(wh_plus_apply(x).trace() - x.trace()) < 1e-12);
    CHECK(matcore::max_abs(x - x.adjoint()) == 0.0);
  }
}

TEST_CASE("choi_of_channel") {
  const Channel identity = [](const ComplexMatrix& x) { return x; };
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  CHECK(matcore::max_abs(choi_of_channel(identity, 2) - phi * phi.adjoint()) == 0.0);

  const Channel transpose = [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); };
  CHECK(matcore::max_abs(choi_of_channel(transpose, 3) - matcore::swap_operator(3).cast<Complex>()) == 0.0);

  for (int d : {2, 3, 4, 7}) {
    CAPTURE(d);
    const ComplexMatrix c = choi_of_channel(wh_plus_apply, d);
    CHECK(matcore::max_abs(c - wh_plus_choi_by_index(d)) < 1e-15);
    const ComplexMatrix expected =
        (ComplexMatrix::Identity(d * d, d * d) + matcore::swap_operator(d).cast<Complex>()) / double(d + 1);
    CHECK(matcore::max_abs(c - expected) < 1e-15);
    CHECK(matcore::max_abs(c - c.adjoint()) == 0.0);
    CHECK(matcore::hermitian_eigenvalues(c).minCoeff() > -1e-12);
  }

  // Conjugation by U has Choi matrix vec(U) vec(U)^*.
  const auto uf = umeb_family(7);
  const ComplexMatrix& u = uf.unitaries[3];
  const Channel conj = [&](const ComplexMatrix& x) { return ComplexMatrix(u * x * u.adjoint()); };
  const ComplexVector v = u.reshaped();
  CHECK(matcore::max_abs(choi_of_channel(conj, 7) - v * v.adjoint()) < 1e-14);
}

TEST_CASE("choi_rank") {
  const Channel identity = [](const ComplexMatrix& x) { return x; };
  CHECK(choi_rank(identity, 4) == 1);
  CHECK(choi_rank(wh_plus_apply, 3) == 6);
  CHECK(choi_rank(wh_plus_apply, 7) == 28);
}

TEST_CASE("umeb_decomposition") {
  const auto dec7 = umeb_decomposition(umeb_family(7));
  REQUIRE(dec7.weights.size() == 28);
  for (double w : dec7.weights) CHECK(w == doctest::Approx(1.0 / 28.0).epsilon(1e-15));

  const auto dec3 = umeb_decomposition(icosahedron_family());
  REQUIRE(dec3.weights.size() == 6);
  for (double w : dec3.weights) CHECK(w == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  auto truncated = umeb_family(7);
  truncated.unitaries.pop_back();
  try {
    umeb_decomposition(truncated);
    FAIL("expected NotCertified");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCertified);
  }
}

TEST_CASE("the decomposition reproduces the channel") {
  for (auto uf : {icosahedron_family(), umeb_family(3), umeb_family(7)}) {
    CAPTURE(uf.d);
    const auto dec = umeb_decomposition(uf);
    const int d = uf.d;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    CHECK(matcore::max_abs(apply_decomposition(dec, id) - id) < 1e-12);

    const auto rep = verify_decomposition(dec, 20, 42);
    CHECK(rep.verdict);
    CHECK(rep.choi_pass);
    CHECK(rep.apply_pass);
    CHECK(rep.choi_dev <= 1e-9 * d * d);
    CHECK(rep.apply_dev_max <= 1e-9);
    CHECK(rep.weight_sum == doctest::Approx(1.0));
    CHECK(rep.trials == 20);
    CHECK(rep.seed == 42);
  }
}

TEST_CASE("random_hermitian is reproducible") {
  CHECK(matcore::max_abs(random_hermitian(4, 9) - random_hermitian(4, 9)) == 0.0);
  CHECK(matcore::max_abs(random_hermitian(4, 9) - random_hermitian(4, 10)) > 0.0);
  const ComplexMatrix x = random_hermitian(6, 1);
  CHECK(x.real().minCoeff() >= 0.0);
  CHECK(x.real().maxCoeff() < 1.0);
}

TEST_CASE("a perturbed weight is detected") {
  auto dec = umeb_decomposition(umeb_family(7));
  dec.weights[0] += 0.01;
  double total = 0.0;
  for (double w : dec.weights) total += w;
  for (double& w : dec.weights) w /= total;
  const auto rep = verify_decomposition(dec, 20, 42);
  CHECK_FALSE(rep.verdict);
  CHECK_FALSE(rep.choi_pass);
  CHECK(rep.choi_dev > 1e-3);
  CHECK(rep.apply_dev_max > 1e-4);
}

TEST_CASE("verify_decomposition preconditions") {
  const auto dec = umeb_decomposition(icosahedron_family());
  CHECK_THROWS_AS(verify_decomposition(dec, 0, 1), Error);
}
