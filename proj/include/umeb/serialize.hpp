#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "umeb/channels.hpp"
#include "umeb/hadamard.hpp"
#include "umeb/matcore.hpp"
#include "umeb/packing.hpp"
#include "umeb/unitary_basis.hpp"

// JSON persistence. Doubles are written in shortest round-trip form, so an
// export/import cycle reproduces every entry bit for bit.
namespace umeb::serialize {

using nlohmann::json;

inline constexpr const char* kToolVersion = "umeb 1.0.0";

/// {"rows": m, "cols": n, "data": [[re, im], ...]}, row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"order": n, "rows": [[+-1, ...], ...]}; import re-validates H H^T = n I.
json to_json(const hadamard::HadamardMatrix& h);
hadamard::HadamardMatrix hadamard_from_json(const json& j);

/// {"d", "r", "beta_num", "beta_den", "C", "projections": [{"t", "shift", "matrix"}]}
/// plus "p", "k" and "source" when known.
json to_json(const packing::ProjectionFamily& family);
packing::ProjectionFamily family_from_json(const json& j);

/// {"d", "z": [re, im], "unitaries": [matrix, ...]} plus CHRSS metadata.
json to_json(const UnitaryFamily& uf);
UnitaryFamily unitary_family_from_json(const json& j);

json to_json(const packing::EquiangularReport& rep);
json to_json(const FeasibilityReport& rep);
json to_json(const channels::DecompositionReport& rep);

/// Certificate fields verbatim, plus "tool_version", "input_hash" and, unless
/// `timestamp` is empty, "timestamp".
json to_json(const UmebCertificate& cert, const std::string& input_hash,
             const std::optional<std::string>& timestamp);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace umeb::serialize
