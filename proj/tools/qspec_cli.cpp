// Command-line front end: spectra, q-series products, functional calculus,
// Cech exactness, category spectra and the verification suites.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "qspec/cechcat.hpp"
#include "qspec/error.hpp"
#include "qspec/funcalc.hpp"
#include "qspec/io.hpp"
#include "qspec/koszul.hpp"
#include "qspec/plot.hpp"
#include "qspec/qtopology.hpp"
#include "qspec/verify.hpp"

namespace {

using qspec::Error;
using qspec::ErrorCode;
using qspec::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitGeometry = 4;

struct Options {
  std::optional<double> tol_rank;
  std::optional<double> tol_relation;
  std::optional<double> tol_point;
  std::string geometry = "fq";
  std::string plot;
  std::size_t grid = 0;
  std::string record;
};

struct Outcome {
  Json output;
  int exit_code = kExitOk;
  /// Human-readable text printed instead of the JSON output (verify).
  std::string text;
  std::optional<qspec::ToleranceConfig> cfg;
};

qspec::ToleranceConfig apply_flags(qspec::ToleranceConfig cfg, const Options& o) {
  if (o.tol_rank) cfg.rank_tol = *o.tol_rank;
  if (o.tol_relation) cfg.relation_tol = *o.tol_relation;
  if (o.tol_point) cfg.point_match_tol = *o.tol_point;
  cfg.validate();
  return cfg;
}

qspec::ToleranceConfig config_for(const Json& j, const Options& o) {
  qspec::ToleranceConfig cfg;
  if (j.is_object() && j.contains("tolerances")) cfg = qspec::io::tolerances_from_json(j["tolerances"]);
  return apply_flags(cfg, o);
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << content;
}

Json points_json(const std::vector<qspec::AxisPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(qspec::io::to_json(p));
  return out;
}

Outcome cmd_spectrum(const std::string& pair_file, const Options& o) {
  const Json j = qspec::io::read_json_file(pair_file);
  const qspec::ToleranceConfig cfg = config_for(j, o);
  const qspec::QPair pair = qspec::io::pair_from_json(j, &cfg);
  const qspec::Geometry geometry = qspec::parse_geometry(o.geometry);

  Outcome out;
  out.cfg = cfg;
  const qspec::SpectrumResult s = qspec::taylor_spectrum(pair, cfg);
  out.output = qspec::io::to_json(s);
  const qspec::PutinarResult p = qspec::putinar_spectrum(pair, geometry, cfg);
  out.output["putinar"] = qspec::io::to_json(p.set);
  if (!p.diagnostic.empty()) out.output["putinar"]["diagnostic"] = p.diagnostic;
  if (o.grid > 0) {
    const qspec::GridScanReport g = qspec::grid_scan(pair, o.grid, cfg);
    out.output["grid"] = Json{{"n", o.grid},
                              {"points_tested", g.points_tested},
                              {"outside", points_json(g.outside)},
                              {"ambiguous", g.ambiguous},
                              {"radius", g.radius}};
    if (g.ambiguous > 0) out.exit_code = kExitUndecided;
  }
  if (!o.plot.empty()) write_file(o.plot, qspec::spectrum_svg(s.taylor, pair.q()));
  if (!s.undecided.empty() || !p.undecided.empty()) out.exit_code = kExitUndecided;
  return out;
}

Outcome cmd_qmul(const std::string& f_file, const std::string& g_file) {
  const qspec::QSeries f = qspec::io::series_from_json(qspec::io::read_json_file(f_file));
  const qspec::QSeries g = qspec::io::series_from_json(qspec::io::read_json_file(g_file));
  return {qspec::io::to_json(qspec::q_mul(f, g)), kExitOk, {}};
}

Outcome cmd_calc(const std::string& f_file, const std::string& pair_file, const std::string& open_file,
                 const Options& o) {
  const qspec::QSeries f = qspec::io::series_from_json(qspec::io::read_json_file(f_file));
  const Json pj = qspec::io::read_json_file(pair_file);
  const qspec::ToleranceConfig cfg = config_for(pj, o);
  const qspec::QPair pair = qspec::io::pair_from_json(pj, &cfg);
  const qspec::OpenSet u = qspec::io::open_set_from_json(qspec::io::read_json_file(open_file));
  const qspec::Geometry geometry = qspec::parse_geometry(o.geometry);
  qspec::CalculusResult r = qspec::evaluate(f, pair, cfg);
  r.admissibility = qspec::calculus_admissible(pair, u, geometry, cfg);
  return {qspec::io::to_json(r), kExitOk, {}, cfg};
}

Outcome cmd_cech(const std::string& presheaf_file, const std::string& basis_file, const Options& o) {
  const Json pj = qspec::io::read_json_file(presheaf_file);
  const qspec::ToleranceConfig cfg = config_for(pj, o);
  const qspec::Presheaf p = qspec::io::presheaf_from_json(pj, cfg);
  const qspec::io::BasisSpec b = qspec::io::basis_from_json(qspec::io::read_json_file(basis_file), p);
  qspec::CechOptions opts;
  opts.p_max = b.p_max;
  const qspec::CechReport rep = qspec::cech_exactness(p, b.basis, b.open, opts, cfg);
  const qspec::ComplexCheck check = qspec::check_complex(rep.cech.complex, cfg);

  Json basis = Json::array();
  for (std::size_t i : rep.cech.basis_u) basis.push_back(p.space().open_name(i));
  double worst = 0.0;
  for (double s : check.scaled) worst = std::max(worst, s);
  Outcome out;
  out.cfg = cfg;
  out.output = Json{{"open", p.space().open_name(rep.cech.open)},
                    {"basis", basis},
                    {"p_max", rep.cech.p_max},
                    {"dims", rep.cech.complex.dims},
                    {"ranks", rep.homology.ranks},
                    {"homology", rep.homology.dims},
                    {"complex_residual", worst},
                    {"ambiguous", rep.homology.ambiguous},
                    {"exact", rep.exact}};
  if (rep.homology.ambiguous) out.exit_code = kExitUndecided;
  return out;
}

Outcome cmd_catspec(const std::string& cat_file, const std::string& oracle_file) {
  const qspec::FiniteCategory cat = qspec::io::category_from_json(qspec::io::read_json_file(cat_file));
  const qspec::TransversalityOracle oracle = qspec::io::oracle_from_json(qspec::io::read_json_file(oracle_file));
  return {qspec::io::to_json(qspec::category_spectrum(cat, oracle), cat), kExitOk, {}};
}

Outcome cmd_verify(const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = qspec::suite_names();
  } else if (suite == "propCex3") {
    names = {"nilpotent"};
  } else {
    names = {suite};
  }
  Outcome out;
  out.output = Json::object();
  std::ostringstream text;
  bool all = true;
  for (const std::string& name : names) {
    const qspec::SuiteResult r = qspec::run_suite(name);
    text << (r.pass ? "PASS " : "FAIL ") << r.name << "\n";
    for (const std::string& d : r.details) text << "  " << d << "\n";
    out.output[r.name] = Json{{"pass", r.pass}, {"details", r.details}};
    all = all && r.pass;
  }
  out.text = text.str();
  out.exit_code = all ? kExitOk : kExitFailed;
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::GeometryPreconditionFailed:
      return kExitGeometry;
    case ErrorCode::RankAmbiguous:
      return kExitUndecided;
    default:
      return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of q-commuting operator pairs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol-rank", o.tol_rank, "relative singular-value threshold");
  app.add_option("--tol-relation", o.tol_relation, "q-commutation residual tolerance");
  app.add_option("--tol-point", o.tol_point, "point matching tolerance");
  app.add_option("--geometry", o.geometry, "fq, oy, xo, local or oq")
      ->check(CLI::IsMember({"fq", "oy", "xo", "local", "oq"}));
  app.add_option("--plot", o.plot, "write an SVG of the spectrum");
  app.add_option("--grid", o.grid, "grid density for the falsification scan");
  app.add_option("--record", o.record, "write a run record JSON file");

  std::vector<std::string> inputs;
  std::string pair_file, f_file, g_file, open_file, presheaf_file, basis_file, cat_file, oracle_file, suite;

  auto* spectrum = app.add_subcommand("spectrum", "Taylor and Putinar spectrum of a pair");
  spectrum->add_option("pair", pair_file)->required();
  auto* qmul = app.add_subcommand("qmul", "product of two truncated q-series");
  qmul->add_option("f", f_file)->required();
  qmul->add_option("g", g_file)->required();
  auto* calc = app.add_subcommand("calc", "evaluate f(T, S) and check admissibility");
  calc->add_option("f", f_file)->required();
  calc->add_option("pair", pair_file)->required();
  calc->add_option("open", open_file)->required();
  auto* cech = app.add_subcommand("cech", "exactness of an augmented Cech complex");
  cech->add_option("presheaf", presheaf_file)->required();
  cech->add_option("basis", basis_file)->required();
  auto* catspec = app.add_subcommand("catspec", "spectrum of a finite category");
  catspec->add_option("category", cat_file)->required();
  catspec->add_option("oracle", oracle_file)->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite, or all");
  verify->add_option("suite", suite)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  std::string command;
  try {
    if (*spectrum) {
      command = "spectrum";
      inputs = {pair_file};
      out = cmd_spectrum(pair_file, o);
    } else if (*qmul) {
      command = "qmul";
      inputs = {f_file, g_file};
      out = cmd_qmul(f_file, g_file);
    } else if (*calc) {
      command = "calc";
      inputs = {f_file, pair_file, open_file};
      out = cmd_calc(f_file, pair_file, open_file, o);
    } else if (*cech) {
      command = "cech";
      inputs = {presheaf_file, basis_file};
      out = cmd_cech(presheaf_file, basis_file, o);
    } else if (*catspec) {
      command = "catspec";
      inputs = {cat_file, oracle_file};
      out = cmd_catspec(cat_file, oracle_file);
    } else {
      command = "verify";
      out = cmd_verify(suite);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    std::cerr << "error: InvalidInput: " << e.what() << "\n";
    return kExitInput;
  }

  if (out.text.empty()) {
    std::cout << out.output.dump(2) << "\n";
  } else {
    std::cout << out.text;
  }

  if (!o.record.empty()) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
      Json digests = Json::object();
      std::string all_bytes;
      for (const std::string& path : inputs) {
        const std::string bytes = read_bytes(path);
        digests[path] = sha256_hex(bytes);
        all_bytes += sha256_hex(bytes);
      }
      const qspec::ToleranceConfig cfg = out.cfg.value_or(apply_flags({}, o));
      const Json record{{"command", command},
                        {"inputs", Json{{"files", digests}, {"digest", sha256_hex(all_bytes)}}},
                        {"outputs", out.output},
                        {"exit_code", out.exit_code},
                        {"tolerances", qspec::io::to_json(cfg)},
                        {"geometry", o.geometry},
                        {"timings", Json{{"total_s", seconds}}}};
      write_file(o.record, record.dump(2) + "\n");
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInput;
    }
  }
  return out.exit_code;
}
