#include "umeb/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "umeb/channels.hpp"
#include "umeb/errors.hpp"
#include "umeb/hadamard.hpp"
#include "umeb/numth.hpp"
#include "umeb/packing.hpp"
#include "umeb/serialize.hpp"
#include "umeb/unitary_basis.hpp"

namespace umeb::cli {

using serialize::json;

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  std::optional<double> eps;
  std::optional<double> rank_eps;
  std::string format = "text";
  std::uint64_t seed = cfg.seed;
  int trials = cfg.trials;

  CLI::App app{"Unextendible maximally entangled bases from equiangular projections", "umeb"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--eps", eps, "Absolute tolerance for certified comparisons (default 1e-9)");
  app.add_option("--rank-eps", rank_eps, "Relative eigenvalue cut-off for numerical rank (default 1e-7)");
  app.add_option("--format", format, "Summary format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit timestamps from reports");

  auto add_prime_opts = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", cfg.p, "Prime p = 3 or p = 7 (mod 8)");
    if (required) opt->required();
    sub->add_option("--k", cfg.k, "Quadratic non-residue k (default: smallest)");
    sub->add_option("--hadamard", cfg.hadamard_file, "Hadamard matrix JSON of order (p+1)/2");
    sub->add_flag("--dual", cfg.dual, "Use the dual family Q_i = I - P_i");
  };

  auto* generate = app.add_subcommand("generate", "Build and verify a CHRSS projection family");
  add_prime_opts(generate, true);
  generate->add_option("--out", cfg.out, "Family JSON output path");

  auto* umeb_cmd = app.add_subcommand("umeb", "Build the unitary family and its UMEB certificate");
  add_prime_opts(umeb_cmd, true);
  umeb_cmd->add_option("--out", cfg.out, "Unitary family JSON output path");
  umeb_cmd->add_option("--cert", cfg.cert, "Certificate JSON output path");

  auto* verify = app.add_subcommand("verify", "Re-verify a family or unitary family JSON file");
  verify->add_option("--in", cfg.in, "Input JSON")->required();
  verify->add_option("--report", cfg.report, "Report JSON output path");

  auto* feas = app.add_subcommand("feasibility", "Tabulate Re(z) and feasibility of (d, r)");
  feas->add_option("--r", cfg.r, "Common rank r >= 1")->required();
  auto* dmax_opt = feas->add_option("--dmax", cfg.dmax, "Largest dimension to tabulate");
  feas->add_option("--d", cfg.d, "Single dimension to query")->excludes(dmax_opt);
  feas->add_option("--out", cfg.out, "Table JSON output path");

  auto* wh = app.add_subcommand("wh-check", "Verify the Werner-Holevo mixed-unitary decomposition");
  add_prime_opts(wh, true);
  wh->add_option("--trials", trials, "Random Hermitian inputs")->check(CLI::PositiveNumber);
  wh->add_option("--seed", seed, "Base seed; trial i uses seed + i");
  wh->add_option("--report", cfg.report, "Report JSON output path");

  auto* had = app.add_subcommand("hadamard", "Construct a Hadamard matrix");
  had->add_option("--order", cfg.order, "Order n (1, 2 or a multiple of 4)")->required();
  had->add_option("--out", cfg.out, "Hadamard JSON output path");

  auto* demo = app.add_subcommand("demo-icosahedron", "d = 3 pipeline from the icosahedron diagonals");
  demo->add_option("--cert", cfg.cert, "Certificate JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }

  if (*generate) cfg.command = Command::Generate;
  else if (*umeb_cmd) cfg.command = Command::Umeb;
  else if (*verify) cfg.command = Command::Verify;
  else if (*feas) cfg.command = Command::Feasibility;
  else if (*wh) cfg.command = Command::WhCheck;
  else if (*had) cfg.command = Command::Hadamard;
  else cfg.command = Command::DemoIcosahedron;

  if (cfg.command == Command::Feasibility && !cfg.d && !cfg.dmax) {
    throw Error(ErrorCode::UsageError, "feasibility needs --dmax or --d");
  }

  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.seed = seed;
  cfg.trials = trials;
  if (eps) {
    cfg.tol.eps = *eps;
  } else if (const char* env = std::getenv("UMEB_TOL")) {
    try {
      std::size_t used = 0;
      cfg.tol.eps = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::UsageError, std::string("UMEB_TOL is not a number: ") + env);
    }
  }
  if (rank_eps) cfg.tol.rank_eps = *rank_eps;
  try {
    cfg.tol.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }
  return cfg;
}

namespace {

std::optional<std::string> timestamp(const RunConfig& cfg) {
  if (cfg.no_timestamp) return std::nullopt;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream s;
  s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void stamp(json& j, const RunConfig& cfg) {
  j["tool_version"] = serialize::kToolVersion;
  if (auto ts = timestamp(cfg)) j["timestamp"] = *ts;
}

// Writes `j` to `path` when given, else to `out` in JSON mode.
void emit(const json& j, const std::optional<std::string>& path, const RunConfig& cfg, std::ostream& out) {
  if (path) {
    serialize::write_json_file(*path, j);
  } else if (cfg.format == Format::Json) {
    out << j.dump(2) << '\n';
  }
}

std::string rational_str(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator())
                              : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

struct Pipeline {
  numth::UmebPrime prime;
  hadamard::HadamardMatrix h;
  std::shared_ptr<const packing::ProjectionFamily> family;
};

Pipeline build_pipeline(const RunConfig& cfg) {
  auto prime = numth::validate_prime(*cfg.p, cfg.k);
  auto h = cfg.hadamard_file ? serialize::hadamard_from_json(serialize::read_json_file(*cfg.hadamard_file))
                             : hadamard::construct((prime.p + 1) / 2);
  auto family = packing::build_chrss_family(prime, h, cfg.tol);
  if (cfg.dual) family = packing::dual_family(family);
  return {std::move(prime), std::move(h),
          std::make_shared<const packing::ProjectionFamily>(std::move(family))};
}

json pipeline_input(const RunConfig& cfg, const Pipeline& pl) {
  return {{"p", pl.prime.p}, {"k", pl.prime.k}, {"dual", cfg.dual}, {"hadamard", serialize::to_json(pl.h)}};
}

struct FamilyCheck {
  packing::EquiangularReport equi;
  Eigen::Index gram_rank = 0;
  double identity_dev = 0.0;
  bool verdict = false;
};

FamilyCheck check_family(const packing::ProjectionFamily& family, const Tolerance& tol) {
  FamilyCheck fc;
  const ComplexMatrix gram = matcore::gram_matrix(family.projections);
  fc.equi = packing::verify_equiangular(family, gram, tol);
  fc.gram_rank = matcore::rank_from_gram(gram, tol);
  const auto spanning = std::size_t(family.d) * std::size_t(family.d + 1) / 2;
  fc.identity_dev = packing::identity_reconstruction_dev(family);
  // The identity relation only holds for families spanning the symmetric matrices.
  const bool identity_ok = family.size() != spanning || fc.identity_dev <= tol.eps * double(family.size());
  fc.verdict = fc.equi.pass && fc.gram_rank == Eigen::Index(family.size()) && identity_ok;
  return fc;
}

json family_check_json(const packing::ProjectionFamily& family, const FamilyCheck& fc) {
  return {{"d", family.d},
          {"r", family.r},
          {"beta_num", family.beta_target.numerator()},
          {"beta_den", family.beta_target.denominator()},
          {"equiangular", serialize::to_json(fc.equi)},
          {"gram_rank", fc.gram_rank},
          {"identity_dev", fc.identity_dev},
          {"verdict", fc.verdict}};
}

void print_family_text(const packing::ProjectionFamily& family, const FamilyCheck& fc, std::ostream& out) {
  out << "family: " << family.size() << " rank-" << family.r << " projections in d=" << family.d
      << " (source " << family.source << ")\n"
      << "  target tr(P_i P_j) = " << rational_str(family.beta_target) << "\n"
      << "  max pair deviation  = " << fc.equi.max_pair_dev << " over " << fc.equi.pairs << " pairs\n"
      << "  max idempotency dev = " << fc.equi.max_idempotency_dev << "\n"
      << "  max trace dev       = " << fc.equi.max_rank_dev << "\n"
      << "  gram rank           = " << fc.gram_rank << "\n"
      << "  identity dev        = " << fc.identity_dev << "\n"
      << "verdict: " << (fc.verdict ? "PASS" : "FAIL") << "\n";
}

void print_cert_text(const UmebCertificate& cert, Complex z, std::ostream& out) {
  out << "umeb: d=" << cert.d << " cardinality=" << cert.cardinality << " z=" << z.real()
      << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i\n"
      << "  max unitarity dev     = " << cert.max_unitarity_dev << "\n"
      << "  max orthogonality dev = " << cert.max_orthogonality_dev << "\n"
      << "  span rank             = " << cert.span_rank << "\n"
      << "  symmetric span        = " << std::boolalpha << cert.symmetric_span << "\n"
      << "  antisym complement    = " << cert.complement_antisymmetric << "\n"
      << "  d odd                 = " << cert.d_odd << "\n"
      << "  cj orthonormality dev = " << cert.cj_orthonormality_dev << "\n";
  if (cert.small_case_p3) out << "  note: p = 3 small case\n";
  out << "verdict: " << (cert.all_pass() ? "PASS" : "FAIL") << "\n";
}

int run_generate(const RunConfig& cfg, std::ostream& out) {
  const Pipeline pl = build_pipeline(cfg);
  const FamilyCheck fc = check_family(*pl.family, cfg.tol);
  if (cfg.out) serialize::write_json_file(*cfg.out, serialize::to_json(*pl.family));
  if (cfg.format == Format::Json) {
    json j = family_check_json(*pl.family, fc);
    j["input_hash"] = serialize::sha256_hex(pipeline_input(cfg, pl).dump());
    stamp(j, cfg);
    out << j.dump(2) << '\n';
  } else {
    print_family_text(*pl.family, fc, out);
  }
  return fc.verdict ? kExitOk : kExitVerdictFailed;
}

int run_umeb(const RunConfig& cfg, std::ostream& out) {
  const Pipeline pl = build_pipeline(cfg);
  const Complex z = compute_phase(pl.family->d, pl.family->r);
  const UnitaryFamily uf = build_unitaries(pl.family, z);
  const UmebCertificate cert = certify_umeb(uf, cfg.tol);
  if (cfg.out) serialize::write_json_file(*cfg.out, serialize::to_json(uf));
  const json cj =
      serialize::to_json(cert, serialize::sha256_hex(pipeline_input(cfg, pl).dump()), timestamp(cfg));
  emit(cj, cfg.cert, cfg, out);
  if (cfg.format == Format::Text) print_cert_text(cert, z, out);
  return cert.all_pass() ? kExitOk : kExitVerdictFailed;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(*cfg.in, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + *cfg.in);
  std::ostringstream raw;
  raw << in.rdbuf();
  json input;
  try {
    input = json::parse(raw.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, *cfg.in + ": " + e.what());
  }
  const std::string hash = serialize::sha256_hex(raw.str());

  if (input.contains("unitaries")) {
    const UnitaryFamily uf = serialize::unitary_family_from_json(input);
    const UmebCertificate cert = certify_umeb(uf, cfg.tol);
    emit(serialize::to_json(cert, hash, timestamp(cfg)), cfg.report, cfg, out);
    if (cfg.format == Format::Text) print_cert_text(cert, uf.z, out);
    return cert.all_pass() ? kExitOk : kExitVerdictFailed;
  }
  if (input.contains("projections")) {
    const packing::ProjectionFamily family = serialize::family_from_json(input);
    const FamilyCheck fc = check_family(family, cfg.tol);
    json j = family_check_json(family, fc);
    j["input_hash"] = hash;
    stamp(j, cfg);
    emit(j, cfg.report, cfg, out);
    if (cfg.format == Format::Text) print_family_text(family, fc, out);
    return fc.verdict ? kExitOk : kExitVerdictFailed;
  }
  throw Error(ErrorCode::ParseError, *cfg.in + " has neither \"projections\" nor \"unitaries\"");
}

int run_feasibility(const RunConfig& cfg, std::ostream& out) {
  const int r = *cfg.r;
  const int lo = cfg.d ? *cfg.d : r + 1;
  const int hi = cfg.d ? *cfg.d : *cfg.dmax;
  json rows = json::array();
  if (cfg.format == Format::Text) out << "d\tr\tRe(z)\tfeasible\n";
  for (int d = lo; d <= hi; ++d) {
    const FeasibilityReport rep = feasibility(d, r);
    rows.push_back(serialize::to_json(rep));
    if (cfg.format == Format::Text) {
      out << d << '\t' << r << '\t' << rational_str(rep.re_z) << '\t' << (rep.feasible ? "yes" : "no") << '\n';
    }
  }
  json j = {{"r", r}, {"rows", std::move(rows)}};
  stamp(j, cfg);
  emit(j, cfg.out, cfg, out);
  return kExitOk;
}

int run_wh_check(const RunConfig& cfg, std::ostream& out) {
  const Pipeline pl = build_pipeline(cfg);
  const int d = pl.family->d;
  const UnitaryFamily uf = build_unitaries(pl.family, compute_phase(d, pl.family->r));
  const UmebCertificate cert = certify_umeb(uf, cfg.tol);
  const auto dec = channels::umeb_decomposition(uf, cert);
  const auto rep = channels::verify_decomposition(dec, cfg.trials, cfg.seed, cfg.tol);
  const Eigen::Index rank = channels::choi_rank(channels::wh_plus_apply, d, cfg.tol);
  const Eigen::Index expected = Eigen::Index(d) * (d + 1) / 2;
  const bool verdict = rep.verdict && rank == expected && Eigen::Index(dec.weights.size()) == expected;

  json j = serialize::to_json(rep);
  j["choi_rank"] = rank;
  j["verdict"] = verdict;
  j["input_hash"] = serialize::sha256_hex(pipeline_input(cfg, pl).dump());
  stamp(j, cfg);
  emit(j, cfg.report, cfg, out);
  if (cfg.format == Format::Text) {
    out << "wh-check: d=" << d << " decomposition size=" << dec.weights.size() << " choi rank=" << rank << "\n"
        << "  choi deviation (Frobenius) = " << rep.choi_dev << "\n"
        << "  max apply deviation        = " << rep.apply_dev_max << " over " << rep.trials
        << " trials (seed " << rep.seed << ")\n"
        << "verdict: " << (verdict ? "PASS" : "FAIL") << "\n";
  }
  return verdict ? kExitOk : kExitVerdictFailed;
}

int run_hadamard(const RunConfig& cfg, std::ostream& out) {
  const auto h = hadamard::construct(*cfg.order);
  const json j = serialize::to_json(h);
  if (cfg.out) {
    serialize::write_json_file(*cfg.out, j);
    if (cfg.format == Format::Text) out << "hadamard: order " << h.order() << " written to " << *cfg.out << "\n";
  } else {
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int run_demo(const RunConfig& cfg, std::ostream& out) {
  auto family = std::make_shared<const packing::ProjectionFamily>(packing::icosahedron_lines());
  const FamilyCheck fc = check_family(*family, cfg.tol);
  const FeasibilityReport feas = feasibility(3, 1);
  const UnitaryFamily uf = build_unitaries(family, compute_phase(3, 1));
  const UmebCertificate cert = certify_umeb(uf, cfg.tol);
  const json input = {{"demo", "icosahedron"}};
  emit(serialize::to_json(cert, serialize::sha256_hex(input.dump()), timestamp(cfg)), cfg.cert, cfg, out);
  if (cfg.format == Format::Text) {
    print_family_text(*family, fc, out);
    out << "Re(z) = " << rational_str(feas.re_z) << "\n";
    print_cert_text(cert, uf.z, out);
  }
  return fc.verdict && cert.all_pass() ? kExitOk : kExitVerdictFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.tol.validate();
    switch (config.command) {
      case Command::Generate: return run_generate(config, out);
      case Command::Umeb: return run_umeb(config, out);
      case Command::Verify: return run_verify(config, out);
      case Command::Feasibility: return run_feasibility(config, out);
      case Command::WhCheck: return run_wh_check(config, out);
      case Command::Hadamard: return run_hadamard(config, out);
      case Command::DemoIcosahedron: return run_demo(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace umeb::cli
