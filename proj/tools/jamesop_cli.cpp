// Command-line front end. Talks to the library through the C API only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jamesop.h"

namespace {

using Json = nlohmann::json;

enum Exit { kOk = 0, kAssertion = 1, kInput = 2, kCap = 3, kPipeline = 4 };

int exit_for(jo_status s) {
  switch (s) {
    case JO_OK:
      return kOk;
    case JO_INVALID_ARGUMENT:
      return kInput;
    case JO_CAP_EXCEEDED:
      return kCap;
    default:
      return kPipeline;
  }
}

// Carries a C API failure up to main.
struct Failure {
  int code;
  std::string message;
};

void check(jo_status s) {
  if (s != JO_OK) throw Failure{exit_for(s), jo_last_error()};
}

std::string take(char* s) {
  std::string out(s == nullptr ? "" : s);
  jo_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using VectorPtr = std::unique_ptr<jo_vector, Deleter<jo_vector, jo_vector_free>>;
using MatrixPtr = std::unique_ptr<jo_matrix, Deleter<jo_matrix, jo_matrix_free>>;
using OperatorPtr = std::unique_ptr<jo_operator, Deleter<jo_operator, jo_operator_free>>;
using CertificatePtr = std::unique_ptr<jo_certificate, Deleter<jo_certificate, jo_certificate_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInput, "cannot read '" + path + "'"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kInput, "cannot write '" + path + "'"};
}

struct Options {
  jo_config config{};
  std::string out = "human";
  std::vector<std::string> argv;
};

// A report: a table of numeric rows plus judged assertions.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json assertions = Json::array();
  Json extra = Json::object();
  double seconds = 0.0;

  bool pass() const {
    for (const Json& a : assertions)
      if (!a.value("pass", false)) return false;
    return true;
  }
};

Json config_json(const jo_config& c) {
  return Json{{"seed", c.seed},           {"norm_tol", c.norm_tol},     {"solver_tol", c.solver_tol},
              {"cert_tol", c.cert_tol},   {"oracle_cap", c.oracle_cap}, {"walsh_cap", c.walsh_cap}};
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void emit(const Report& r, const Options& o) {
  if (o.out == "json") {
    Json j{{"command", o.argv}, {"config", config_json(o.config)}, {"columns", r.columns}, {"results", r.rows},
           {"assertions", r.assertions}, {"pass", r.pass()}, {"seconds", r.seconds}};
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (o.out == "csv") {
    for (std::size_t c = 0; c < r.columns.size(); ++c) std::cout << (c ? "," : "") << r.columns[c];
    std::cout << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? "," : "") << fmt(row[c]);
      std::cout << "\n";
    }
    return;
  }
  std::cout << r.command << "\n";
  std::vector<int> width;
  for (const std::string& c : r.columns) width.push_back(std::max<int>(14, static_cast<int>(c.size()) + 2));
  for (std::size_t c = 0; c < r.columns.size(); ++c) std::cout << std::setw(width[c]) << r.columns[c];
  std::cout << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      std::cout << std::setw(c < width.size() ? width[c] : 14) << std::setprecision(8) << row[c];
    std::cout << "\n";
  }
  for (const Json& a : r.assertions)
    std::cout << (a.value("pass", false) ? "PASS " : "FAIL ") << a.value("what", std::string()) << "\n";
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it)
    if (it.value().is_string()) std::cout << it.key() << ": " << it.value().get<std::string>() << "\n";
  std::cout << "time " << std::setprecision(3) << r.seconds << " s\n";
}

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------------------

struct NormArgs {
  std::string file;
  std::optional<std::string> basis;
  std::optional<double> p;
  bool oracle = false;
};

VectorPtr load_vector(const NormArgs& a) {
  const std::string text = read_file(a.file);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception&) {
    // Plain comma or whitespace separated numbers.
    std::string t = text;
    for (char& ch : t)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream in(t);
    j = Json::array();
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        j.push_back(v);
      } catch (const std::exception&) {
        throw Failure{kInput, "'" + tok + "' is not a number"};
      }
    }
  }
  if (j.is_array()) j = Json{{"coeffs", j}};
  if (!j.is_object()) throw Failure{kInput, "vector file must hold an object or an array"};
  if (a.basis) j["basis"] = *a.basis == "e" ? "E_BASIS" : "F_BASIS";
  if (a.p) j["p"] = *a.p;
  jo_vector* v = nullptr;
  check(jo_vector_parse(j.dump().c_str(), &v));
  return VectorPtr(v);
}

int cmd_norm(const NormArgs& a, const Options& o) {
  const double t0 = now();
  VectorPtr v = load_vector(a);
  Report r;
  r.command = "norm " + a.file;
  double value = 0.0;
  std::size_t len = 0;
  check(jo_norm(v.get(), &value, nullptr, 0, &len));
  std::vector<std::size_t> chain(len);
  check(jo_norm(v.get(), &value, chain.data(), chain.size(), &len));
  r.columns = {"value", "chain_length"};
  std::vector<double> row{value, static_cast<double>(len)};
  for (std::size_t i = 0; i < len; ++i) {
    r.columns.push_back("chain_" + std::to_string(i + 1));
    row.push_back(static_cast<double>(chain[i]));
  }
  r.extra["chain"] = chain;
  if (a.oracle) {
    double ov = 0.0;
    std::size_t olen = 0;
    check(jo_norm_oracle(v.get(), o.config.oracle_cap, &ov, nullptr, 0, &olen));
    std::vector<std::size_t> ochain(olen);
    check(jo_norm_oracle(v.get(), o.config.oracle_cap, &ov, ochain.data(), ochain.size(), &olen));
    r.columns.insert(r.columns.begin() + 1, "oracle_value");
    row.insert(row.begin() + 1, ov);
    r.extra["oracle_chain"] = ochain;
    r.assertions.push_back({{"what", "dynamic program equals oracle"}, {"value", std::abs(ov - value)},
                            {"tolerance", 0.0}, {"pass", ov == value && ochain == chain}});
  }
  r.rows.push_back(std::move(row));
  r.seconds = now() - t0;
  emit(r, o);
  return r.pass() ? kOk : kAssertion;
}

int cmd_walsh(int from, std::optional<int> to, const Options& o) {
  const double t0 = now();
  const int last = to.value_or(from);
  if (last < from) throw Failure{kInput, "--to must not be below n"};
  Report r;
  r.command = "walsh " + std::to_string(from) + ".." + std::to_string(last);
  r.columns = {"n", "spectral", "regular", "ratio", "expected", "residual"};
  const double tol = 1e-9;
  for (int n = from; n <= last; ++n) {
    char* out = nullptr;
    check(jo_walsh(n, o.config.norm_tol, static_cast<int>(o.config.walsh_cap), &out));
    const Json w = Json::parse(take(out));
    r.rows.push_back({static_cast<double>(n), w["spectral"], w["regular"], w["ratio"], w["expected"], w["residual"]});
    r.assertions.push_back({{"what", "n=" + std::to_string(n) + " relative residual <= 1e-9"},
                            {"value", w["residual"]}, {"tolerance", tol},
                            {"pass", w["residual"].get<double>() <= tol}});
  }
  r.seconds = now() - t0;
  emit(r, o);
  return r.pass() ? kOk : kAssertion;
}

struct CertifyArgs {
  std::string s_file;
  std::string w_file;
  std::string cert_out = "certificate.json";
  std::string replay;
  double delta = 0.1;
};

Report certificate_report(const std::string& command, const Json& summary) {
  Report r;
  r.command = command;
  r.columns = {"m", "l", "regular_norm", "target", "reported_bound", "achieved_constant", "meets_target"};
  r.rows.push_back({summary["m"].get<double>(), summary["l"].get<double>(), summary["regular_norm"],
                    summary["target"], summary["reported_bound"], summary["achieved_constant"],
                    summary["meets_target"].get<bool>() ? 1.0 : 0.0});
  r.extra["embedding_note"] = summary.value("embedding_note", std::string());
  return r;
}

int cmd_replay(const CertifyArgs& a, const Options& o) {
  const double t0 = now();
  jo_certificate* raw = nullptr;
  check(jo_certificate_parse(read_file(a.replay).c_str(), &raw));
  CertificatePtr cert(raw);
  char* summary = nullptr;
  check(jo_certificate_summary(cert.get(), &summary));
  Report r = certificate_report("certify --replay " + a.replay, Json::parse(take(summary)));
  int ok = 0;
  double recomputed = 0.0;
  char* detail = nullptr;
  check(jo_certificate_verify(cert.get(), o.config.cert_tol, &ok, &recomputed, &detail));
  r.extra["verification"] = take(detail);
  r.assertions.push_back({{"what", "stored witness re-evaluates to the reported bound"},
                          {"value", recomputed}, {"tolerance", o.config.cert_tol}, {"pass", ok == 1}});
  r.seconds = now() - t0;
  emit(r, o);
  return r.pass() ? kOk : kAssertion;
}

int cmd_certify(const CertifyArgs& a, const Options& o) {
  if (!a.replay.empty()) return cmd_replay(a, o);
  if (a.s_file.empty()) throw Failure{kInput, "certify needs --S or --replay"};
  const double t0 = now();
  jo_matrix* sm = nullptr;
  check(jo_matrix_parse(read_file(a.s_file).c_str(), &sm));
  MatrixPtr s(sm);
  char* s_json = nullptr;
  check(jo_matrix_to_json(s.get(), &s_json));
  const Json sj = Json::parse(take(s_json));
  std::string w_text;
  if (a.w_file.empty()) {
    Json zero = Json::array();
    for (std::size_t i = 0; i < sj.size(); ++i) zero.push_back(std::vector<double>(sj.size(), 0.0));
    w_text = zero.dump();
  } else {
    w_text = read_file(a.w_file);
  }
  jo_operator* wm = nullptr;
  check(jo_operator_parse(w_text.c_str(), &wm));
  OperatorPtr w(wm);

  jo_certificate* raw = nullptr;
  const jo_status st = jo_certify(s.get(), w.get(), a.delta, &o.config, &raw);
  if (st == JO_PIPELINE_FAILURE) {
    const std::string why = jo_last_error();
    char* w_json = nullptr;
    check(jo_operator_to_json(w.get(), &w_json));
    const Json partial{{"status", "pipeline_failure"}, {"failure", why},       {"s", sj},
                       {"w", Json::parse(take(w_json))}, {"delta", a.delta}, {"seed", o.config.seed}};
    write_file(a.cert_out, partial.dump(2) + "\n");
    throw Failure{kPipeline, why + " (partial certificate written to " + a.cert_out + ")"};
  }
  check(st);
  CertificatePtr cert(raw);
  char* full = nullptr;
  check(jo_certificate_to_json(cert.get(), &full));
  write_file(a.cert_out, take(full) + "\n");
  char* summary = nullptr;
  check(jo_certificate_summary(cert.get(), &summary));
  const Json sum = Json::parse(take(summary));
  Report r = certificate_report("certify --S " + a.s_file, sum);
  r.extra["certificate"] = a.cert_out;
  r.assertions.push_back({{"what", "bound meets (1+delta)^-2 ||S||_r - delta"},
                          {"value", sum["reported_bound"]}, {"tolerance", 0.0}, {"pass", sum["meets_target"]}});
  r.seconds = now() - t0;
  emit(r, o);
  // A weaker bound is still a valid certificate; only errors change the exit code.
  return kOk;
}

int cmd_suite(const std::string& name, const Options& o) {
  char* out = nullptr;
  int passed = 0;
  check(jo_run_suite(name.c_str(), &o.config, 1, &out, &passed));
  const Json rep = Json::parse(take(out));
  Report r;
  r.command = "suite " + name;
  r.columns = {"criterion", "pass", "assertions", "failed", "seconds"};
  for (const Json& c : rep["criteria"]) {
    double failed = 0.0;
    for (const Json& a : c["assertions"]) failed += a["pass"].get<bool>() ? 0.0 : 1.0;
    r.rows.push_back({c["id"].get<double>(), c["pass"].get<bool>() ? 1.0 : 0.0,
                      static_cast<double>(c["assertions"].size()), failed, c["seconds"]});
    r.assertions.push_back({{"what", "criterion " + std::to_string(c["id"].get<int>()) + ": " +
                                         c["title"].get<std::string>()},
                            {"pass", c["pass"]}});
  }
  r.extra["report"] = rep;
  r.seconds = rep["seconds"];
  emit(r, o);
  return passed ? kOk : kAssertion;
}

// Parses a matrix or table (JSON or CSV with header) and prints it back.
int cmd_table(const std::string& file, const Options& o) {
  jo_matrix* raw = nullptr;
  check(jo_matrix_parse(read_file(file).c_str(), &raw));
  MatrixPtr m(raw);
  char* out = nullptr;
  if (o.out == "csv") {
    check(jo_matrix_to_csv(m.get(), &out));
    std::cout << take(out);
  } else {
    check(jo_matrix_to_json(m.get(), &out));
    std::cout << take(out) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  jo_config_default(&o.config);
  o.argv.assign(argv, argv + argc);

  CLI::App app{"James-space operator toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", o.config.seed, "Seed for every random choice");
  app.add_option("--tol.norm", o.config.norm_tol, "Power iteration tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol.solver", o.config.solver_tol, "Subspace distance gap")->check(CLI::PositiveNumber);
  app.add_option("--tol.cert", o.config.cert_tol, "Certificate re-evaluation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--cap.oracle", o.config.oracle_cap, "Largest m for the exhaustive oracle");
  app.add_option("--cap.walsh", o.config.walsh_cap, "Largest Walsh index");
  app.add_option("--out", o.out, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));

  NormArgs norm;
  CLI::App* norm_cmd = app.add_subcommand("norm", "James norm of a vector file");
  norm_cmd->add_option("file", norm.file, "JSON vector, JSON array or plain numbers")->required();
  norm_cmd->add_option("--basis", norm.basis, "Basis of a bare coefficient list")->check(CLI::IsMember({"e", "f"}));
  norm_cmd->add_option("--p", norm.p, "Variation exponent")->check(CLI::Range(1.0, 1e6));
  norm_cmd->add_flag("--oracle", norm.oracle, "Cross-check with exhaustive enumeration");

  int walsh_n = 0;
  std::optional<int> walsh_to;
  CLI::App* walsh_cmd = app.add_subcommand("walsh", "Norms of the Walsh matrices");
  walsh_cmd->add_option("n", walsh_n, "Walsh index")->required();
  walsh_cmd->add_option("--to", walsh_to, "Last index of a range");

  CertifyArgs cert;
  CLI::App* cert_cmd = app.add_subcommand("certify", "Lower-bound certificate for ||S^ - W||");
  cert_cmd->add_option("--S", cert.s_file, "Scalar matrix file (JSON rows or CSV)");
  cert_cmd->add_option("--W", cert.w_file, "Operator matrix with zero scalar part (JSON)");
  cert_cmd->add_option("--delta", cert.delta, "Slack delta")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--cert-out", cert.cert_out, "Where to write the certificate");
  cert_cmd->add_option("--replay", cert.replay, "Re-verify a certificate file instead");

  std::string suite_name;
  CLI::App* suite_cmd = app.add_subcommand("suite", "Run a verification suite");
  suite_cmd->add_option("name", suite_name, "core, blocks, lifted or all")->required();

  std::string table_file;
  CLI::App* table_cmd = app.add_subcommand("table", "Parse a matrix or CSV table and print it back");
  table_cmd->add_option("file", table_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*norm_cmd) return cmd_norm(norm, o);
    if (*walsh_cmd) return cmd_walsh(walsh_n, walsh_to, o);
    if (*cert_cmd) return cmd_certify(cert, o);
    if (*suite_cmd) return cmd_suite(suite_name, o);
    if (*table_cmd) return cmd_table(table_file, o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
