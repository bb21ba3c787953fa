#include "jamesop.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "jamesop/james.hpp"
#include "jamesop/lifted.hpp"
#include "jamesop/regular.hpp"
#include "jamesop/serialize.hpp"
#include "jamesop/suites.hpp"

struct jo_vector {
  jamesop::JamesVector v;
};
struct jo_matrix {
  jamesop::Matrix m;
};
struct jo_operator {
  jamesop::OperatorMatrix op;
};
struct jo_certificate {
  jamesop::WitnessCertificate cert;
};

namespace {

thread_local std::string last_error;

template <class F>
jo_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return JO_OK;
  } catch (const jamesop::Error& e) {
    last_error = e.what();
    return static_cast<jo_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return JO_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return JO_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  jamesop::require(p != nullptr, std::string(what) + " must not be null");
}

jamesop::RunConfig to_config(const jo_config* c) {
  jamesop::RunConfig r;
  if (c != nullptr) {
    r.seed = c->seed;
    r.norm_tol = c->norm_tol;
    r.solver_tol = c->solver_tol;
    r.cert_tol = c->cert_tol;
    r.oracle_cap = c->oracle_cap;
    r.walsh_cap = c->walsh_cap;
  }
  r.validate();
  return r;
}

void write_chain(const jamesop::Chain& chain, size_t* out, size_t cap, size_t* len) {
  if (len != nullptr) *len = chain.size();
  if (out == nullptr) return;
  for (size_t i = 0; i < chain.size() && i < cap; ++i) out[i] = chain[i];
}

}  // namespace

extern "C" {

const char* jo_version(void) { return "0.1.0"; }

const char* jo_last_error(void) { return last_error.c_str(); }

void jo_string_free(char* s) { delete[] s; }

void jo_config_default(jo_config* config) {
  if (config == nullptr) return;
  const jamesop::RunConfig r;
  config->seed = r.seed;
  config->norm_tol = r.norm_tol;
  config->solver_tol = r.solver_tol;
  config->cert_tol = r.cert_tol;
  config->oracle_cap = r.oracle_cap;
  config->walsh_cap = r.walsh_cap;
}

jo_status jo_vector_parse(const char* json, jo_vector** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new jo_vector{jamesop::parse_vector(json)};
  });
}

jo_status jo_vector_create(jo_basis basis, const double* coeffs, size_t count, double p, size_t inner_dim,
                           jo_vector** out) {
  return guarded([&] {
    need(out, "out");
    jamesop::require(count == 0 || coeffs != nullptr, "coeffs must not be null");
    jamesop::require(basis == JO_BASIS_E || basis == JO_BASIS_F, "unknown basis");
    jamesop::JamesVector v(basis == JO_BASIS_E ? jamesop::Basis::kE : jamesop::Basis::kF,
                           std::vector<double>(coeffs, coeffs + count), p, inner_dim);
    v.validate();
    *out = new jo_vector{std::move(v)};
  });
}

void jo_vector_free(jo_vector* v) { delete v; }

jo_status jo_vector_to_json(const jo_vector* v, char** out) {
  return guarded([&] {
    need(v, "vector");
    need(out, "out");
    *out = copy_string(jamesop::Json(v->v).dump());
  });
}

jo_status jo_vector_convert(const jo_vector* v, jo_vector** out) {
  return guarded([&] {
    need(v, "vector");
    need(out, "out");
    *out = new jo_vector{jamesop::convert_basis(v->v)};
  });
}

jo_status jo_norm(const jo_vector* v, double* value, size_t* chain, size_t chain_cap, size_t* chain_len) {
  return guarded([&] {
    need(v, "vector");
    need(value, "value");
    const jamesop::NormResult r = jamesop::james_norm(v->v);
    *value = r.value;
    write_chain(r.chain, chain, chain_cap, chain_len);
  });
}

jo_status jo_norm_oracle(const jo_vector* v, size_t cap, double* value, size_t* chain, size_t chain_cap,
                         size_t* chain_len) {
  return guarded([&] {
    need(v, "vector");
    need(value, "value");
    const jamesop::NormResult r = jamesop::james_norm_oracle(v->v, cap);
    *value = r.value;
    write_chain(r.chain, chain, chain_cap, chain_len);
  });
}

jo_status jo_matrix_parse(const char* text, jo_matrix** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new jo_matrix{jamesop::parse_matrix(text)};
  });
}

void jo_matrix_free(jo_matrix* m) { delete m; }

jo_status jo_matrix_to_json(const jo_matrix* m, char** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = copy_string(jamesop::matrix_to_json(m->m).dump());
  });
}

jo_status jo_matrix_to_csv(const jo_matrix* m, char** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = copy_string(jamesop::matrix_to_csv(m->m));
  });
}

jo_status jo_regular_norm(const jo_matrix* m, double tol, double* value) {
  return guarded([&] {
    need(m, "matrix");
    need(value, "value");
    *value = jamesop::regular_norm(m->m, tol);
  });
}

jo_status jo_spectral_norm(const jo_matrix* m, double tol, double* value) {
  return guarded([&] {
    need(m, "matrix");
    need(value, "value");
    *value = jamesop::spectral_norm(m->m, tol);
  });
}

jo_status jo_walsh(int n, double tol, int cap, char** out) {
  return guarded([&] {
    need(out, "out");
    const jamesop::WalshNorms w = jamesop::walsh_norms(n, tol, cap);
    const jamesop::Json j{{"n", w.n},
                          {"spectral", w.spectral},
                          {"regular", w.regular},
                          {"ratio", w.ratio},
                          {"expected", w.expected},
                          {"residual", w.residual},
                          {"spectral_iterative", w.spectral_iterative},
                          {"regular_iterative", w.regular_iterative},
                          {"ratio_iterative", w.ratio_iterative}};
    *out = copy_string(j.dump());
  });
}

jo_status jo_operator_parse(const char* text, jo_operator** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new jo_operator{jamesop::parse_operator_matrix(text)};
  });
}

void jo_operator_free(jo_operator* op) { delete op; }

jo_status jo_operator_to_json(const jo_operator* op, char** out) {
  return guarded([&] {
    need(op, "operator");
    need(out, "out");
    *out = copy_string(jamesop::Json(op->op).dump());
  });
}

jo_status jo_certify(const jo_matrix* s, const jo_operator* w, double delta, const jo_config* config,
                     jo_certificate** out) {
  return guarded([&] {
    need(s, "S");
    need(w, "W");
    need(out, "out");
    const jamesop::RunConfig rc = to_config(config);
    jamesop::CertifyOptions opts;
    opts.seed = rc.seed;
    opts.norm_tol = rc.norm_tol;
    *out = new jo_certificate{jamesop::certify_lower_bound(s->m, w->op, delta, opts)};
  });
}

jo_status jo_certificate_parse(const char* json, jo_certificate** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new jo_certificate{jamesop::parse_certificate(json)};
  });
}

void jo_certificate_free(jo_certificate* c) { delete c; }

jo_status jo_certificate_to_json(const jo_certificate* c, char** out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "out");
    *out = copy_string(jamesop::Json(c->cert).dump());
  });
}

jo_status jo_certificate_summary(const jo_certificate* c, char** out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "out");
    jamesop::Json j = c->cert;
    for (const char* big : {"w", "witness", "blocks", "embedding"}) j.erase(big);
    if (c->cert.embedding) j["embedding_lower_constant"] = c->cert.embedding->lower_constant;
    j["blocks_count"] = c->cert.blocks.blocks();
    *out = copy_string(j.dump());
  });
}

jo_status jo_certificate_verify(const jo_certificate* c, double tol, int* ok, double* recomputed, char** detail) {
  return guarded([&] {
    need(c, "certificate");
    need(ok, "ok");
    const jamesop::CertificateCheck r = jamesop::verify_certificate(c->cert, tol);
    *ok = r.ok ? 1 : 0;
    if (recomputed != nullptr) *recomputed = r.recomputed;
    if (detail != nullptr) *detail = copy_string(r.detail);
  });
}

jo_status jo_run_suite(const char* name, const jo_config* config, int include_timing, char** report, int* passed) {
  return guarded([&] {
    need(name, "name");
    need(report, "report");
    const jamesop::SuiteReport r = jamesop::run_suite(name, to_config(config));
    *report = copy_string(jamesop::report_json(r, include_timing != 0));
    if (passed != nullptr) *passed = r.pass() ? 1 : 0;
  });
}

jo_status jo_run_criterion(int id, const jo_config* config, char** report, int* passed) {
  return guarded([&] {
    need(report, "report");
    jamesop::SuiteReport r;
    r.suite = "criterion " + std::to_string(id);
    r.config = to_config(config);
    r.criteria.push_back(jamesop::run_criterion(id, r.config));
    r.seconds = r.criteria.back().seconds;
    *report = copy_string(jamesop::report_json(r, true));
    if (passed != nullptr) *passed = r.pass() ? 1 : 0;
  });
}

}  // extern "C"
