/*
  Copyright 2026 The SolitonScope Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "solitonscope/solitonscope.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "config.hpp"
#include "driver.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "jet.hpp"

using namespace solitonscope;

struct ss_expr {
  expr::Expr e;
};

struct ss_session {
  std::optional<config::RunConfig> cfg;
  driver::Options opt;
  std::string report;
  std::string summary;
  double elapsed_ms = 0.0;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_kind;
thread_local long g_offset = -1;

void clear_error() {
  g_error.clear();
  g_kind.clear();
  g_offset = -1;
}

ss_status fail(ss_status status, const std::string& kind, const std::string& msg) {
  g_error = msg;
  g_kind = kind;
  return status;
}

ss_status status_for(ErrorKind k) {
  return k == ErrorKind::Domain || k == ErrorKind::Numerical ? SS_ERR_NUMERICAL : SS_ERR_INPUT;
}

template <class F>
ss_status guarded(F&& fn) {
  clear_error();
  try {
    return fn();
  } catch (const SyntaxError& e) {
    g_offset = static_cast<long>(e.offset());
    return fail(SS_ERR_INPUT, to_string(e.kind()), e.what());
  } catch (const Error& e) {
    return fail(status_for(e.kind()), to_string(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SS_ERR_INTERNAL, "internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(SS_ERR_INTERNAL, "internal", e.what());
  } catch (...) {
    return fail(SS_ERR_INTERNAL, "internal", "unknown failure");
  }
}

ss_status null_arg(const char* what) { return fail(SS_ERR_ARGUMENT, "argument", std::string(what) + " is null"); }

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

expr::EvalContext context(size_t nvars, const char* const* names, const double* values) {
  expr::EvalContext ctx;
  for (size_t i = 0; i < nvars; ++i) {
    if (!names[i]) throw Error(ErrorKind::Config, "variable name " + std::to_string(i) + " is null");
    ctx.variables.emplace_back(names[i], values[i]);
  }
  return ctx;
}

}  // namespace

extern "C" {

const char* ss_version(void) { return SOLITONSCOPE_VERSION_STRING; }
const char* ss_last_error(void) { return g_error.c_str(); }
const char* ss_last_error_kind(void) { return g_kind.c_str(); }
long ss_last_error_offset(void) { return g_offset; }
void ss_string_free(char* s) { std::free(s); }

ss_status ss_expr_parse(const char* text, ss_expr** out) {
  return guarded([&] {
    if (!text) return null_arg("text");
    if (!out) return null_arg("out");
    *out = nullptr;
    *out = new ss_expr{expr::parse(text)};
    return SS_OK;
  });
}

void ss_expr_free(ss_expr* e) { delete e; }

ss_status ss_expr_print(const ss_expr* e, char** out) {
  return guarded([&] {
    if (!e) return null_arg("expression");
    if (!out) return null_arg("out");
    *out = dup(e->e.str());
    return SS_OK;
  });
}

ss_status ss_expr_eval(const ss_expr* e, size_t nvars, const char* const* names, const double* values, double* out) {
  return guarded([&] {
    if (!e) return null_arg("expression");
    if (!out) return null_arg("out");
    if (nvars && (!names || !values)) return null_arg("names or values");
    std::map<std::string, double> b;
    for (size_t i = 0; i < nvars; ++i) {
      if (!names[i]) return null_arg("variable name");
      b[names[i]] = values[i];
    }
    *out = expr::evaluate(e->e, b);
    return SS_OK;
  });
}

ss_status ss_expr_eval_jet(const ss_expr* e, size_t nvars, const char* const* names, const double* values, int order,
                           double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    if (!e) return null_arg("expression");
    if (!count) return null_arg("count");
    if (nvars && (!names || !values)) return null_arg("names or values");
    if (order < 0) return fail(SS_ERR_ARGUMENT, "argument", "order must be >= 0");
    auto ctx = context(nvars, names, values);
    ctx.jet_order = order;
    ctx.max_order = std::max(order, expr::kDefaultMaxJetOrder);
    const auto jet = expr::eval_jet(e->e, ctx);
    const auto entries = jet.entries();
    *count = entries.size();
    if (capacity < entries.size() || (!out && !entries.empty())) {
      return fail(SS_ERR_ARGUMENT, "argument",
                  "output buffer holds " + std::to_string(capacity) + " values, " + std::to_string(entries.size()) +
                      " needed");
    }
    for (size_t i = 0; i < entries.size(); ++i) out[i] = entries[i].second;
    return SS_OK;
  });
}

ss_status ss_gallery_list_json(char** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    driver::Options opt;
    opt.format = "json";
    *out = dup(driver::run(driver::Command::Gallery, std::nullopt, opt).report);
    return SS_OK;
  });
}

ss_status ss_session_create(ss_session** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = new ss_session();
    return SS_OK;
  });
}

void ss_session_destroy(ss_session* s) { delete s; }

ss_status ss_session_load_config(ss_session* s, const char* text) {
  return guarded([&] {
    if (!s) return null_arg("session");
    if (!text) return null_arg("text");
    s->cfg.reset();
    s->cfg = config::load_config(text);
    return SS_OK;
  });
}

ss_status ss_session_set_format(ss_session* s, const char* format) {
  return guarded([&] {
    if (!s) return null_arg("session");
    if (!format) {
      s->opt.format.reset();
      return SS_OK;
    }
    const std::string f = format;
    if (f != "text" && f != "json" && f != "csv") {
      return fail(SS_ERR_INPUT, "config", "format must be text, json or csv, got '" + f + "'");
    }
    s->opt.format = f;
    return SS_OK;
  });
}

ss_status ss_session_set_jet_order(ss_session* s, int order) {
  return guarded([&] {
    if (!s) return null_arg("session");
    if (order < 2 || order > 8) return fail(SS_ERR_INPUT, "config", "jet order must be in [2, 8]");
    s->opt.jet_order = order;
    return SS_OK;
  });
}

ss_status ss_session_set_threads(ss_session* s, int threads) {
  return guarded([&] {
    if (!s) return null_arg("session");
    if (threads < 1) return fail(SS_ERR_INPUT, "config", "threads must be >= 1");
    s->opt.threads = threads;
    return SS_OK;
  });
}

ss_status ss_session_set_expect(ss_session* s, const char* expect) {
  return guarded([&] {
    if (!s) return null_arg("session");
    if (expect) s->opt.expect = std::string(expect);
    else s->opt.expect.reset();
    return SS_OK;
  });
}

const char* ss_session_output_path(const ss_session* s) {
  if (!s || !s->cfg || !s->cfg->output.path) return nullptr;
  return s->cfg->output.path->c_str();
}

ss_status ss_session_run(ss_session* s, const char* command, int* exit_code) {
  if (exit_code) *exit_code = driver::kExitInput;
  return guarded([&] {
    if (!s) return null_arg("session");
    if (!command) return null_arg("command");
    if (!exit_code) return null_arg("exit_code");
    s->report.clear();
    s->summary.clear();
    try {
      const auto o = driver::run(driver::parse_command(command), s->cfg, s->opt);
      s->report = o.report;
      s->summary = o.summary;
      s->elapsed_ms = o.elapsed_ms;
      *exit_code = o.exit_code;
    } catch (const Error& e) {
      *exit_code = driver::exit_code_for(e.kind());
      throw;
    } catch (...) {
      *exit_code = driver::kExitNumerical;
      throw;
    }
    return SS_OK;
  });
}

const char* ss_session_report(const ss_session* s) { return s ? s->report.c_str() : ""; }
const char* ss_session_summary(const ss_session* s) { return s ? s->summary.c_str() : ""; }
double ss_session_elapsed_ms(const ss_session* s) { return s ? s->elapsed_ms : 0.0; }

}  // extern "C"
