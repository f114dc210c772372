#include "sgk/sgk.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>

#include "sgk/commands.hpp"
#include "sgk/io.hpp"

struct sgk_report {
  sgk::Report report;
  std::string text;
};

struct sgk_algebra {
  sgk::AlgebraPtr algebra;
  sgk::HopfConventions conventions;
};

struct sgk_pair {
  sgk::PairPtr pair;
};

struct sgk_subpair {
  std::shared_ptr<const sgk::HCSubpair> sub;
};

namespace {

thread_local std::string last_error;

sgk_status status_of(sgk::Errc e) {
  switch (e) {
    case sgk::Errc::Parse: return SGK_ERR_PARSE;
    case sgk::Errc::InvalidInput: return SGK_ERR_INVALID;
    case sgk::Errc::Degenerate: return SGK_ERR_DEGENERATE;
    case sgk::Errc::DimensionMismatch: return SGK_ERR_DIMENSION;
    case sgk::Errc::ParentMismatch: return SGK_ERR_PARENT;
    case sgk::Errc::Io: return SGK_ERR_IO;
  }
  return SGK_ERR_INTERNAL;
}

template <class F>
sgk_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return SGK_OK;
  } catch (const sgk::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SGK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SGK_ERR_INTERNAL;
  }
}

sgk_status argument_error(const char* what) {
  last_error = what;
  return SGK_ERR_ARGUMENT;
}

sgk_status emit(sgk::Report rep, sgk_report** out) {
  *out = new sgk_report{std::move(rep), {}};
  return SGK_OK;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* sgk_version(void) { return "1.0.0"; }

const char* sgk_status_name(sgk_status status) {
  switch (status) {
    case SGK_OK: return "ok";
    case SGK_ERR_PARSE: return "parse error";
    case SGK_ERR_INVALID: return "invalid input";
    case SGK_ERR_DEGENERATE: return "degenerate";
    case SGK_ERR_DIMENSION: return "dimension mismatch";
    case SGK_ERR_PARENT: return "parent mismatch";
    case SGK_ERR_IO: return "i/o error";
    case SGK_ERR_ARGUMENT: return "bad argument";
    case SGK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sgk_last_error(void) { return last_error.c_str(); }

void sgk_options_init(sgk_options* opts) {
  if (!opts) return;
  sgk::RunConfig c;
  opts->degree = c.degree;
  opts->closure_depth = c.closure_depth;
  opts->seed = c.seed;
  opts->allow_invalid = c.allow_invalid ? 1 : 0;
  opts->pairs = c.pairs;
}

size_t sgk_command_count(void) { return sgk::command_names().size(); }

const char* sgk_command_name(size_t index) {
  const auto& n = sgk::command_names();
  return index < n.size() ? n[index].c_str() : nullptr;
}

const char* sgk_command_help(void) {
  static const std::string help = sgk::command_help();
  return help.c_str();
}

sgk_status sgk_run(const char* command, const char* const* inputs, size_t n_inputs, const sgk_options* opts,
                   sgk_report** out) {
  if (!command || !out || (n_inputs && !inputs)) return argument_error("null argument");
  *out = nullptr;
  sgk::Report rep;
  sgk_status st = guarded([&] {
    sgk::RunConfig c;
    c.command = command;
    for (size_t i = 0; i < n_inputs; ++i) {
      if (!inputs[i]) sgk::raise(sgk::Errc::InvalidInput, "null input path");
      c.inputs.emplace_back(inputs[i]);
    }
    if (opts) {
      c.degree = opts->degree;
      c.closure_depth = opts->closure_depth;
      c.seed = opts->seed;
      c.allow_invalid = opts->allow_invalid != 0;
      c.pairs = opts->pairs;
    }
    rep = sgk::run_command(c);
  });
  if (st != SGK_OK) return st;
  return emit(std::move(rep), out);
}

size_t sgk_report_line_count(const sgk_report* r) { return r ? r->report.lines().size() : 0; }

int sgk_report_line_pass(const sgk_report* r, size_t index) {
  return r && index < r->report.lines().size() && r->report.lines()[index].pass ? 1 : 0;
}

const char* sgk_report_line_check(const sgk_report* r, size_t index) {
  return r && index < r->report.lines().size() ? r->report.lines()[index].check.c_str() : nullptr;
}

const char* sgk_report_line_detail(const sgk_report* r, size_t index) {
  return r && index < r->report.lines().size() ? r->report.lines()[index].detail.c_str() : nullptr;
}

size_t sgk_report_pass_count(const sgk_report* r) { return r ? r->report.pass_count() : 0; }
size_t sgk_report_fail_count(const sgk_report* r) { return r ? r->report.fail_count() : 0; }

const char* sgk_report_text(sgk_report* r) {
  if (!r) return nullptr;
  r->text = r->report.text();
  return r->text.c_str();
}

const char* sgk_report_summary(sgk_report* r, double elapsed_seconds) {
  if (!r) return nullptr;
  std::optional<double> e;
  if (elapsed_seconds >= 0 && std::isfinite(elapsed_seconds)) e = elapsed_seconds;
  r->text = r->report.summary_json(e);
  return r->text.c_str();
}

void sgk_report_free(sgk_report* r) { delete r; }

sgk_status sgk_algebra_load(const char* path, int allow_invalid, sgk_algebra** out) {
  if (!path || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    sgk::io::Loader ld({allow_invalid != 0});
    auto af = ld.algebra(path);
    *out = new sgk_algebra{af.algebra, af.conventions};
  });
}

size_t sgk_algebra_even_dim(const sgk_algebra* a) { return a ? a->algebra->basis().n_even() : 0; }
size_t sgk_algebra_odd_dim(const sgk_algebra* a) { return a ? a->algebra->basis().n_odd() : 0; }

const char* sgk_algebra_basis_name(const sgk_algebra* a, size_t index) {
  return a && index < a->algebra->dim() ? a->algebra->basis().name(index).c_str() : nullptr;
}

int sgk_algebra_is_split(const sgk_algebra* a, size_t* witness_left, size_t* witness_right) {
  if (!a) return 0;
  auto w = sgk::odd_bracket_witness(*a->algebra);
  if (!w) return 1;
  if (witness_left) *witness_left = w->first;
  if (witness_right) *witness_right = w->second;
  return 0;
}

sgk_status sgk_algebra_jacobi(const sgk_algebra* a, sgk_report** out) {
  if (!a || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    sgk::Report rep("jacobi");
    sgk::JacobiReport jr = sgk::check_jacobi(*a->algebra);
    rep.add(jr.pass, "identity", a->algebra->label() + " violations=" + std::to_string(jr.violations.size()));
    emit(std::move(rep), out);
  });
}

sgk_status sgk_algebra_hopf(const sgk_algebra* a, int degree, sgk_report** out) {
  if (!a || !out || degree < 1) return argument_error("null argument or degree < 1");
  *out = nullptr;
  return guarded([&] { emit(sgk::hopf_axiom_check(sgk::make_envelope(a->algebra), degree, a->conventions), out); });
}

void sgk_algebra_free(sgk_algebra* a) { delete a; }

sgk_status sgk_pair_load(const char* path, int allow_invalid, sgk_pair** out) {
  if (!path || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    sgk::io::Loader ld({allow_invalid != 0});
    *out = new sgk_pair{ld.pair(path)};
  });
}

sgk_status sgk_pair_algebra(const sgk_pair* p, sgk_algebra** out) {
  if (!p || !out) return argument_error("null argument");
  *out = new sgk_algebra{p->pair->algebra(), {}};
  return SGK_OK;
}

sgk_status sgk_pair_group_axioms(const sgk_pair* p, int degree, sgk_report** out) {
  if (!p || !out || degree < 1) return argument_error("null argument or degree < 1");
  *out = nullptr;
  return guarded([&] {
    sgk::Report rep = sgk::check_pair(p->pair, p->pair->samples());
    rep.merge(sgk::group_axiom_check(p->pair, p->pair->samples(), degree));
    emit(std::move(rep), out);
  });
}

sgk_status sgk_pair_split_check(const sgk_pair* p, sgk_report** out) {
  if (!p || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] { emit(sgk::split_check(p->pair, p->pair->samples()), out); });
}

void sgk_pair_free(sgk_pair* p) { delete p; }

sgk_status sgk_subpair_load(const char* path, int allow_invalid, sgk_subpair** out) {
  if (!path || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    sgk::io::Loader ld({allow_invalid != 0});
    *out = new sgk_subpair{ld.subpair(path).sub};
  });
}

size_t sgk_subpair_quotient_dim(const sgk_subpair* s) { return s ? s->sub->quotient().dim() : 0; }

sgk_status sgk_subpair_isotropy(const sgk_subpair* s, const char* const* h_entries, size_t n_entries,
                                char*** out_entries, size_t* out_count) {
  if (!s || !h_entries || !out_entries || !out_count) return argument_error("null argument");
  *out_entries = nullptr;
  *out_count = 0;
  return guarded([&] {
    std::size_t n = s->sub->parent()->model().n();
    if (n_entries != n * n) sgk::raise(sgk::Errc::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");
    sgk::ScalarMatrix h(n, n);
    for (std::size_t k = 0; k < n_entries; ++k) {
      if (!h_entries[k]) sgk::raise(sgk::Errc::InvalidInput, "null matrix entry");
      h(k / n, k % n) = sgk::Scalar::parse(h_entries[k]);
    }
    sgk::ScalarMatrix psi = sgk::isotropy_matrix(*s->sub, h);
    std::size_t cnt = psi.rows() * psi.cols();
    char** arr = static_cast<char**>(std::calloc(cnt ? cnt : 1, sizeof(char*)));
    if (!arr) throw std::bad_alloc();
    try {
      for (std::size_t k = 0; k < cnt; ++k) arr[k] = dup(psi(k / psi.cols(), k % psi.cols()).to_string());
    } catch (...) {
      sgk_strings_free(arr, cnt);
      throw;
    }
    *out_entries = arr;
    *out_count = cnt;
  });
}

sgk_status sgk_subpair_split_check(const sgk_subpair* s, sgk_report** out) {
  if (!s || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] { emit(sgk::split_homogeneous_check(*s->sub), out); });
}

void sgk_subpair_free(sgk_subpair* s) { delete s; }

void sgk_strings_free(char** strings, size_t count) {
  if (!strings) return;
  for (size_t i = 0; i < count; ++i) std::free(strings[i]);
  std::free(strings);
}

}  // extern "C"
