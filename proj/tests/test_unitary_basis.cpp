#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "umeb/errors.hpp"
#include "umeb/unitary_basis.hpp"

using namespace umeb;

namespace {

std::shared_ptr<const packing::ProjectionFamily> chrss(std::int64_t p) {
  return std::make_shared<const packing::ProjectionFamily>(
      packing::build_chrss_family(numth::validate_prime(p), hadamard::construct((p + 1) / 2)));
}

// Oracle: expanding tr(U_i^* U_j) = d + (beta - r)(2 - 2 Re z) = 0 gives
// Re z = 1 - d / (2 (r - beta)).
Rational re_z_from_trace(int d, int r) {
  return Rational(1) - Rational(d) / (Rational(2) * (Rational(r) - packing::beta_projections(d, r)));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an umeb::Error");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("feasibility worked examples") {
  const auto a = feasibility(3, 1);
  CHECK(a.re_z == Rational(-7, 8));
  CHECK(a.feasible);

  const auto b = feasibility(5, 1);
  CHECK(b.re_z == Rational(-23, 12));
  CHECK_FALSE(b.feasible);

  const auto c = feasibility(7, 3);
  CHECK(c.re_z == Rational(-31, 32));
  CHECK(c.feasible);

  const auto e = feasibility(6, 3);
  CHECK(e.re_z == Rational(-19, 21));
  CHECK(e.feasible);

  CHECK(feasibility(23, 11).re_z == Rational(-287, 288));
  CHECK(feasibility(23, 11).feasible);
  CHECK(code_of([] { feasibility(3, 0); }) == ErrorCode::RankOutOfRange);
  CHECK(code_of([] { feasibility(3, 3); }) == ErrorCode::RankOutOfRange);
}

TEST_CASE("feasibility agrees with the trace-orthogonality oracle") {
  for (int d = 2; d <= 40; ++d) {
    for (int r = 1; r < d; ++r) {
      CAPTURE(d);
      CAPTURE(r);
      const auto rep = feasibility(d, r);
      CHECK(rep.re_z == re_z_from_trace(d, r));
      CHECK(rep.re_z <= Rational(1));
    }
  }
}

TEST_CASE("feasibility matches the sign of the cubic") {
  for (int r = 1; r <= 10; ++r) {
    for (int d = r + 1; d <= 4 * r + 4; ++d) {
      CAPTURE(d);
      CAPTURE(r);
      CHECK(feasibility(d, r).feasible == (feasibility_cubic(d, r) <= 0));
    }
  }
}

TEST_CASE("feasible dimensions are exactly the allowed window") {
  for (int r = 1; r <= 30; ++r) {
    CAPTURE(r);
    std::vector<int> feasible;
    for (int d = r + 1; d <= 6 * r + 6; ++d) {
      if (feasibility(d, r).feasible) feasible.push_back(d);
    }
    std::vector<int> window;
    for (int d : feasibility(r + 1, r).allowed_d_for_r) {
      if (d > r) window.push_back(d);
    }
    CHECK(feasible == window);
  }
  CHECK(feasibility(3, 1).allowed_d_for_r == std::vector<int>{1, 2, 3});
}

TEST_CASE("complementary ranks give the same phase") {
  for (int d = 2; d <= 30; ++d) {
    for (int r = 1; r < d; ++r) CHECK(feasibility(d, r).re_z == feasibility(d, d - r).re_z);
  }
}

TEST_CASE("compute_phase") {
  const Complex z = compute_phase(7, 3);
  CHECK(z.real() == doctest::Approx(-31.0 / 32.0).epsilon(1e-15));
  CHECK(z.imag() == doctest::Approx(std::sqrt(63.0) / 32.0).epsilon(1e-15));
  CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);

  const Complex w = compute_phase(3, 1);
  CHECK(w.real() == doctest::Approx(-7.0 / 8.0));
  CHECK(w.imag() > 0.0);
  CHECK(std::abs(compute_phase(7, 4) - z) < 1e-15);

  CHECK(code_of([] { compute_phase(5, 1); }) == ErrorCode::Infeasible);
}

TEST_CASE("build_unitaries satisfies the trace identity") {
  const auto fam = chrss(7);
  const Complex z = compute_phase(7, 3);
  const auto uf = build_unitaries(fam, z);
  REQUIRE(uf.size() == 28);
  CHECK(uf.source == fam);
  const double beta = to_double(fam->beta_target);
  for (const auto& u : uf.unitaries) CHECK(matcore::is_unitary(u).unitary);

  // Any phase: tr(U_i^* U_j) = d + (beta - r)(2 - 2 Re z).
  for (double theta : {0.3, 1.7, 2.9}) {
    const Complex w = std::polar(1.0, theta);
    const auto vf = build_unitaries(*fam, w);
    const Complex t = matcore::frobenius_inner(vf.unitaries[0], vf.unitaries[9]);
    CHECK(std::abs(t - Complex(7.0 + (beta - 3.0) * (2.0 - 2.0 * w.real()))) < 1e-12);
  }
}

TEST_CASE("certify_umeb at p = 7") {
  const auto uf = build_unitaries(chrss(7), compute_phase(7, 3));
  const auto cert = certify_umeb(uf);
  CHECK(cert.d == 7);
  CHECK(cert.cardinality == 28);
  CHECK(cert.unitary);
  CHECK(cert.orthogonal);
  CHECK(cert.max_unitarity_dev <= 1e-12);
  CHECK(cert.max_orthogonality_dev <= 1e-12);
  CHECK(cert.span_rank == 28);
  CHECK(cert.symmetric_span);
  CHECK(cert.max_transpose_dev == 0.0);
  CHECK(cert.complement_antisymmetric);
  CHECK(cert.max_antisym_overlap <= 1e-12);
  CHECK(cert.d_odd);
  CHECK(cert.unextendible_verdict);
  CHECK(cert.cj_orthonormality_dev <= 1e-12);
  CHECK_FALSE(cert.small_case_p3);
  CHECK(cert.all_pass());
}

TEST_CASE("certify_umeb at d = 3") {
  const auto ico = std::make_shared<const packing::ProjectionFamily>(packing::icosahedron_lines());
  const auto cert = certify_umeb(build_unitaries(ico, compute_phase(3, 1)));
  CHECK(cert.cardinality == 6);
  CHECK(cert.span_rank == 6);
  CHECK(cert.all_pass());
  CHECK_FALSE(cert.small_case_p3);

  const auto small = certify_umeb(build_unitaries(chrss(3), compute_phase(3, 1)));
  CHECK(small.all_pass());
  CHECK(small.small_case_p3);
}

TEST_CASE("truncated families fail the verdict") {
  const auto fam = chrss(7);
  const Complex z = compute_phase(7, 3);
  auto uf = build_unitaries(fam, z);
  Eigen::Index last_rank = 28;
  for (std::size_t keep : {27, 20, 10, 1}) {
    uf.unitaries.resize(keep);
    const auto cert = certify_umeb(uf);
    CAPTURE(keep);
    CHECK(cert.orthogonal);
    CHECK(cert.span_rank == Eigen::Index(keep));
    CHECK(cert.span_rank < last_rank);
    CHECK_FALSE(cert.symmetric_span);
    CHECK_FALSE(cert.unextendible_verdict);
    last_rank = cert.span_rank;
  }
}

TEST_CASE("the degenerate phase z = 1 gives identities") {
  const auto uf = build_unitaries(chrss(7), Complex(1.0));
  for (const auto& u : uf.unitaries) CHECK(matcore::max_abs(u - ComplexMatrix::Identity(7, 7)) == 0.0);
  const auto cert = certify_umeb(uf);
  CHECK(cert.unitary);
  CHECK_FALSE(cert.orthogonal);
  CHECK(cert.span_rank == 1);
  CHECK_FALSE(cert.all_pass());
}

TEST_CASE("a wrong phase breaks orthogonality but not unitarity") {
  const auto uf = build_unitaries(chrss(7), std::polar(1.0, 1.0));
  const auto cert = certify_umeb(uf);
  CHECK(cert.unitary);
  CHECK_FALSE(cert.orthogonal);
  CHECK_FALSE(cert.all_pass());
}

TEST_CASE("cj_states") {
  UnitaryFamily id;
  id.d = 3;
  id.unitaries = {ComplexMatrix::Identity(3, 3)};
  const auto s = cj_states(id);
  REQUIRE(s.states.size() == 1);
  ComplexVector phi = ComplexVector::Zero(9);
  phi(0) = phi(4) = phi(8) = 1.0 / std::sqrt(3.0);
  CHECK(matcore::max_abs(s.states[0] - phi) < 1e-15);
  CHECK(s.max_norm_dev < 1e-15);

  const auto cj = cj_states(build_unitaries(chrss(7), compute_phase(7, 3)));
  CHECK(cj.states.size() == 28);
  CHECK(cj.max_overlap < 1e-12);
  CHECK(cj.max_norm_dev < 1e-12);
  for (const auto& v : cj.states) {
    // Symmetric U gives a state fixed by SWAP.
    CHECK(matcore::max_abs(matcore::swap_operator(7).cast<Complex>() * v - v) < 1e-15);
  }
}

TEST_CASE("line_feasibility_sweep") {
  const auto rows = line_feasibility_sweep(10);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].re_z == Rational(1, 4));
  CHECK(rows[1].re_z == Rational(-1, 3));
  CHECK(rows[2].re_z == Rational(-7, 8));
  CHECK(rows[3].re_z == Rational(-7, 5));
  CHECK(rows[6].re_z == Rational(-47, 16));
  for (const auto& row : rows) {
    CAPTURE(row.d);
    CHECK(row.feasible == (row.d <= 3));
    if (row.d >= 2) CHECK(row.re_z == feasibility(row.d, 1).re_z);
  }
  CHECK(code_of([] { line_feasibility_sweep(2); }) == ErrorCode::OutOfRange);
}
