#include "umeb/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "umeb/errors.hpp"

namespace umeb::serialize {

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field \"") + key + "\": " + e.what());
  }
}

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_pair(m(i, k)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = get_field<std::int64_t>(j, "rows");
  const auto cols = get_field<std::int64_t>(j, "cols");
  const json data = get_field<json>(j, "data");
  if (rows <= 0 || cols <= 0 || !data.is_array() || std::int64_t(data.size()) != rows * cols) {
    throw Error(ErrorCode::ParseError, "matrix data length does not match rows*cols");
  }
  ComplexMatrix m(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[std::size_t(i * cols + k)]);
  }
  return m;
}

json to_json(const hadamard::HadamardMatrix& h) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < h.order(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < h.order(); ++k) row.push_back(h(i, k));
    rows.push_back(std::move(row));
  }
  return {{"order", h.order()}, {"rows", std::move(rows)}};
}

hadamard::HadamardMatrix hadamard_from_json(const json& j) {
  const auto order = get_field<std::int64_t>(j, "order");
  const auto rows = get_field<std::vector<std::vector<std::int64_t>>>(j, "rows");
  if (order <= 0 || std::int64_t(rows.size()) != order) {
    throw Error(ErrorCode::ParseError, "Hadamard row count does not match order");
  }
  hadamard::IntMatrix m(order, order);
  for (std::int64_t i = 0; i < order; ++i) {
    if (std::int64_t(rows[std::size_t(i)].size()) != order) {
      throw Error(ErrorCode::ParseError, "Hadamard row " + std::to_string(i) + " has wrong length");
    }
    for (std::int64_t k = 0; k < order; ++k) m(i, k) = rows[std::size_t(i)][std::size_t(k)];
  }
  return hadamard::HadamardMatrix(std::move(m));
}

json to_json(const packing::ProjectionFamily& family) {
  json projections = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    json entry;
    if (i < family.provenance.size()) {
      entry["t"] = family.provenance[i].t;
      entry["shift"] = family.provenance[i].shift;
    } else {
      entry["t"] = nullptr;
      entry["shift"] = nullptr;
    }
    entry["matrix"] = to_json(family.projections[i]);
    projections.push_back(std::move(entry));
  }
  json j = {
      {"d", family.d},
      {"r", family.r},
      {"beta_num", family.beta_target.numerator()},
      {"beta_den", family.beta_target.denominator()},
      {"C", family.C ? json(*family.C) : json(nullptr)},
      {"source", family.source},
      {"projections", std::move(projections)},
  };
  if (family.p) j["p"] = *family.p;
  if (family.k) j["k"] = *family.k;
  return j;
}

packing::ProjectionFamily family_from_json(const json& j) {
  packing::ProjectionFamily family;
  family.d = get_field<int>(j, "d");
  family.r = get_field<int>(j, "r");
  const auto den = get_field<std::int64_t>(j, "beta_den");
  if (den == 0) throw Error(ErrorCode::ParseError, "beta_den is zero");
  family.beta_target = Rational(get_field<std::int64_t>(j, "beta_num"), den);
  if (j.contains("C") && !j["C"].is_null()) family.C = j["C"].get<double>();
  if (j.contains("p")) family.p = j["p"].get<std::int64_t>();
  if (j.contains("k")) family.k = j["k"].get<std::int64_t>();
  if (j.contains("source")) family.source = j["source"].get<std::string>();

  bool all_provenance = true;
  std::vector<packing::Provenance> provenance;
  for (const auto& entry : get_field<json>(j, "projections")) {
    ComplexMatrix m = matrix_from_json(entry.at("matrix"));
    if (m.rows() != family.d || m.cols() != family.d) {
      throw Error(ErrorCode::ShapeMismatch, "projection shape does not match d");
    }
    family.projections.push_back(std::move(m));
    if (entry.contains("t") && entry["t"].is_number_integer() && entry.contains("shift") &&
        entry["shift"].is_number_integer()) {
      provenance.push_back({entry["t"].get<int>(), entry["shift"].get<int>()});
    } else {
      all_provenance = false;
    }
  }
  if (all_provenance) family.provenance = std::move(provenance);
  return family;
}

json to_json(const UnitaryFamily& uf) {
  json unitaries = json::array();
  for (const auto& u : uf.unitaries) unitaries.push_back(to_json(u));
  json j = {{"d", uf.d}, {"z", complex_pair(uf.z)}, {"unitaries", std::move(unitaries)}};
  if (uf.source) {
    j["source"] = uf.source->source;
    j["r"] = uf.source->r;
    if (uf.source->p) j["p"] = *uf.source->p;
    if (uf.source->k) j["k"] = *uf.source->k;
  }
  return j;
}

UnitaryFamily unitary_family_from_json(const json& j) {
  UnitaryFamily uf;
  uf.d = get_field<int>(j, "d");
  uf.z = complex_from_json(get_field<json>(j, "z"));
  for (const auto& entry : get_field<json>(j, "unitaries")) {
    ComplexMatrix m = matrix_from_json(entry);
    if (m.rows() != uf.d || m.cols() != uf.d) {
      throw Error(ErrorCode::ShapeMismatch, "unitary shape does not match d");
    }
    uf.unitaries.push_back(std::move(m));
  }
  if (j.contains("p")) {
    // Keep the CHRSS parameters so certificates can flag the p = 3 case.
    auto meta = std::make_shared<packing::ProjectionFamily>();
    meta->d = uf.d;
    meta->p = j["p"].get<std::int64_t>();
    if (j.contains("k")) meta->k = j["k"].get<std::int64_t>();
    if (j.contains("r")) meta->r = j["r"].get<int>();
    if (j.contains("source")) meta->source = j["source"].get<std::string>();
    uf.source = std::move(meta);
  }
  return uf;
}

json to_json(const packing::EquiangularReport& rep) {
  return {
      {"count", rep.count},
      {"pairs", rep.pairs},
      {"max_pair_dev", rep.max_pair_dev},
      {"max_idempotency_dev", rep.max_idempotency_dev},
      {"max_rank_dev", rep.max_rank_dev},
      {"max_symmetry_dev", rep.max_symmetry_dev},
      {"max_imag", rep.max_imag},
      {"pass", rep.pass},
  };
}

json to_json(const FeasibilityReport& rep) {
  return {
      {"d", rep.d},
      {"r", rep.r},
      {"re_z_num", rep.re_z.numerator()},
      {"re_z_den", rep.re_z.denominator()},
      {"re_z", to_double(rep.re_z)},
      {"feasible", rep.feasible},
      {"allowed_d_for_r", rep.allowed_d_for_r},
  };
}

json to_json(const channels::DecompositionReport& rep) {
  return {
      {"d", rep.d},
      {"cardinality", rep.cardinality},
      {"weight_sum", rep.weight_sum},
      {"choi_dev", rep.choi_dev},
      {"choi_pass", rep.choi_pass},
      {"apply_dev_max", rep.apply_dev_max},
      {"apply_pass", rep.apply_pass},
      {"trials", rep.trials},
      {"seed", rep.seed},
      {"verdict", rep.verdict},
  };
}

json to_json(const UmebCertificate& cert, const std::string& input_hash,
             const std::optional<std::string>& timestamp) {
  json j = {
      {"d", cert.d},
      {"cardinality", cert.cardinality},
      {"max_unitarity_dev", cert.max_unitarity_dev},
      {"max_orthogonality_dev", cert.max_orthogonality_dev},
      {"max_norm_dev", cert.max_norm_dev},
      {"unitary", cert.unitary},
      {"orthogonal", cert.orthogonal},
      {"span_rank", cert.span_rank},
      {"max_transpose_dev", cert.max_transpose_dev},
      {"symmetric_span", cert.symmetric_span},
      {"max_antisym_overlap", cert.max_antisym_overlap},
      {"complement_antisymmetric", cert.complement_antisymmetric},
      {"d_odd", cert.d_odd},
      {"unextendible_verdict", cert.unextendible_verdict},
      {"cj_orthonormality_dev", cert.cj_orthonormality_dev},
      {"small_case_p3", cert.small_case_p3},
      {"tool_version", kToolVersion},
      {"input_hash", input_hash},
  };
  if (timestamp) j["timestamp"] = *timestamp;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  }
  return out.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace umeb::serialize
