#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <random>

#include "umeb/errors.hpp"
#include "umeb/serialize.hpp"

using namespace umeb;
using namespace umeb::serialize;

namespace {

bool bit_identical(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a.data()[i], &b.data()[i], sizeof(Complex)) != 0) return false;
  }
  return true;
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

packing::ProjectionFamily chrss7() {
  return packing::build_chrss_family(numth::validate_prime(7), hadamard::construct(4));
}

}  // namespace

TEST_CASE("matrices round-trip bit for bit") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix m(3, 5);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(u(rng) * 1e-7, u(rng) * 1e9);
    const json j = to_json(m);
    CHECK(bit_identical(matrix_from_json(json::parse(j.dump())), m));
  }
  ComplexMatrix awkward(1, 3);
  awkward << Complex(0.1, -0.0), Complex(1.0 / 3.0, std::sqrt(2.0)), Complex(5e-324, 1.7976931348623157e308);
  CHECK(bit_identical(matrix_from_json(json::parse(to_json(awkward).dump())), awkward));
}

TEST_CASE("matrix layout") {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const json j = to_json(m);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("cols") == 2);
  CHECK(j.at("data")[1] == json::array({3.0, 4.0}));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK(code_of([] { matrix_from_json(json::object()); }) == ErrorCode::ParseError);
  CHECK(code_of([] { matrix_from_json(json{{"rows", 1}, {"cols", 2}, {"data", json::array({json::array({1.0, 0.0})})}}); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"data", json::array({json::array({1.0})})}}); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { matrix_from_json(json{{"rows", "x"}, {"cols", 1}, {"data", json::array()}}); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("Hadamard round trip and validation") {
  const auto h = hadamard::paley_two(5);
  CHECK(hadamard_from_json(to_json(h)) == h);

  json bad = to_json(hadamard::sylvester(2));
  bad["rows"][1][1] = 1;
  CHECK(code_of([&] { hadamard_from_json(bad); }) == ErrorCode::InvalidHadamard);

  json short_rows = to_json(hadamard::sylvester(2));
  short_rows["rows"].erase(3);
  CHECK(code_of([&] { hadamard_from_json(short_rows); }) == ErrorCode::ParseError);
}

TEST_CASE("projection families round-trip") {
  const auto fam = chrss7();
  const auto back = family_from_json(json::parse(to_json(fam).dump()));
  CHECK(back.d == fam.d);
  CHECK(back.r == fam.r);
  CHECK(back.beta_target == fam.beta_target);
  CHECK(back.p == fam.p);
  CHECK(back.k == fam.k);
  CHECK(back.source == fam.source);
  REQUIRE(back.size() == fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CHECK(bit_identical(back.projections[i], fam.projections[i]));
    CHECK(back.provenance[i].t == fam.provenance[i].t);
    CHECK(back.provenance[i].shift == fam.provenance[i].shift);
  }
  CHECK(packing::verify_equiangular(back).max_pair_dev == packing::verify_equiangular(fam).max_pair_dev);

  json bad = to_json(fam);
  bad["beta_den"] = 0;
  CHECK(code_of([&] { family_from_json(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("unitary families round-trip") {
  const auto fam = std::make_shared<const packing::ProjectionFamily>(chrss7());
  const auto uf = build_unitaries(fam, compute_phase(7, 3));
  const auto back = unitary_family_from_json(json::parse(to_json(uf).dump()));
  CHECK(back.d == 7);
  CHECK(std::memcmp(&back.z, &uf.z, sizeof(Complex)) == 0);
  REQUIRE(back.size() == uf.size());
  for (std::size_t i = 0; i < uf.size(); ++i) CHECK(bit_identical(back.unitaries[i], uf.unitaries[i]));

  const auto a = certify_umeb(uf);
  const auto b = certify_umeb(back);
  CHECK(a.max_orthogonality_dev == b.max_orthogonality_dev);
  CHECK(a.max_antisym_overlap == b.max_antisym_overlap);
  CHECK(b.all_pass());
}

TEST_CASE("certificate json") {
  const auto uf = build_unitaries(std::make_shared<const packing::ProjectionFamily>(packing::icosahedron_lines()),
                                  compute_phase(3, 1));
  const auto cert = certify_umeb(uf);
  const json with = to_json(cert, "abc", std::string("2026-01-01T00:00:00Z"));
  CHECK(with.at("tool_version") == kToolVersion);
  CHECK(with.at("input_hash") == "abc");
  CHECK(with.at("timestamp") == "2026-01-01T00:00:00Z");
  CHECK(with.at("unextendible_verdict") == true);
  CHECK(with.at("span_rank") == 6);

  const json without = to_json(cert, "abc", std::nullopt);
  CHECK_FALSE(without.contains("timestamp"));
}

TEST_CASE("report json") {
  const json f = to_json(feasibility(5, 1));
  CHECK(f.at("re_z_num") == -23);
  CHECK(f.at("re_z_den") == 12);
  CHECK(f.at("feasible") == false);
}

TEST_CASE("sha256_hex") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("file io") {
  const auto dir = std::filesystem::temp_directory_path() / "umeb_test_serialize";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "m.json").string();
  write_json_file(path, to_json(ComplexMatrix::Identity(2, 2)));
  CHECK(bit_identical(matrix_from_json(read_json_file(path)), ComplexMatrix::Identity(2, 2)));

  CHECK(code_of([&] { read_json_file((dir / "missing.json").string()); }) == ErrorCode::IoError);

  const std::string junk = (dir / "junk.json").string();
  std::FILE* f = std::fopen(junk.c_str(), "w");
  std::fputs("{not json", f);
  std::fclose(f);
  CHECK(code_of([&] { read_json_file(junk); }) == ErrorCode::ParseError);
  std::filesystem::remove_all(dir);
}
