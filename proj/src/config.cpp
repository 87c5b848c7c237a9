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

#include "config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "error.hpp"

namespace solitonscope::config {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Config, path + ": " + what);
}

const char* type_name(const Json& j) { return j.type_name(); }

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, std::string("expected a string, got ") + type_name(j));
  return j.get<std::string>();
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, std::string("expected a number, got ") + type_name(j));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

long long get_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == std::floor(v) && std::fabs(v) < 9e15) return static_cast<long long>(v);
  }
  fail(path, std::string("expected an integer, got ") + (j.is_number() ? "a non-integral number" : type_name(j)));
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, std::string("expected an array of strings, got ") + type_name(j));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void check_keys(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, std::string("expected an object, got ") + type_name(j));
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

bool is_chart_variable(const std::string& s) {
  if (s.size() < 2 || s[0] != 'u') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return s[1] != '0';
}

tensor::HessianConvention parse_hessian(const std::string& s, const std::string& path) {
  if (s == "levi_civita") return tensor::HessianConvention::LeviCivita;
  if (s == "flat") return tensor::HessianConvention::Flat;
  fail(path, "expected 'levi_civita' or 'flat', got '" + s + "'");
}

const char* hessian_name(tensor::HessianConvention c) {
  return c == tensor::HessianConvention::Flat ? "flat" : "levi_civita";
}

std::vector<hypersurface::Interval> parse_domain(const Json& j) {
  if (!j.is_array()) fail("domain", "expected an array of {min, max, samples}");
  std::vector<hypersurface::Interval> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = "domain[" + std::to_string(i) + "]";
    check_keys(j[i], p, {"min", "max", "samples"});
    for (const char* key : {"min", "max", "samples"})
      if (!j[i].contains(key)) fail(p + "." + key, "missing");
    hypersurface::Interval iv;
    iv.min = get_number(j[i]["min"], p + ".min");
    iv.max = get_number(j[i]["max"], p + ".max");
    const long long s = get_integer(j[i]["samples"], p + ".samples");
    if (s < 2) fail(p + ".samples", "must be >= 2, got " + std::to_string(s));
    if (s > static_cast<long long>(kMaxSamples)) fail(p + ".samples", "too many samples");
    iv.samples = static_cast<int>(s);
    if (!(iv.min < iv.max)) fail(p, "min must be less than max");
    out.push_back(iv);
  }
  return out;
}

void parse_tolerances(const Json& j, RunConfig& cfg) {
  check_keys(j, "tolerances",
             {"soliton", "minimal", "s3", "potential", "ensays", "f1", "concurrent", "minimal_phi1", "lambda",
              "alpha", "umbilic", "consistency"});
  auto& t = cfg.tol;
  auto& c = cfg.classify;
  const std::map<std::string, double*> slots = {
      {"soliton", &t.soliton},       {"minimal", &t.minimal},         {"s3", &t.s3},
      {"potential", &t.potential},   {"ensays", &t.ensays},           {"f1", &t.f1},
      {"concurrent", &t.concurrent}, {"minimal_phi1", &t.minimal_phi1}, {"lambda", &c.tol_lambda},
      {"alpha", &c.tol_alpha},       {"umbilic", &c.tol_umbilic},     {"consistency", &c.tol_consistency}};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const double v = get_number(it.value(), "tolerances." + it.key());
    if (!(v > 0)) fail("tolerances." + it.key(), "must be positive");
    *slots.at(it.key()) = v;
  }
  c.tol_soliton = t.soliton;
}

void parse_common(const Json& j, RunConfig& cfg) {
  if (j.contains("domain")) {
    cfg.domain = parse_domain(j["domain"]);
    cfg.domain_overridden = true;
  }
  if (j.contains("tolerances")) parse_tolerances(j["tolerances"], cfg);
  if (j.contains("seed")) {
    const long long s = get_integer(j["seed"], "seed");
    if (s < 0) fail("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("sampling")) {
    const Json& s = j["sampling"];
    if (s.is_string()) {
      cfg.sampling.kind = s.get<std::string>();
      if (cfg.sampling.kind != "grid") fail("sampling", "string form must be 'grid'; use {\"kind\": \"random\", \"count\": N}");
    } else {
      check_keys(s, "sampling", {"kind", "count"});
      cfg.sampling.kind = s.contains("kind") ? get_string(s["kind"], "sampling.kind") : "grid";
      if (cfg.sampling.kind != "grid" && cfg.sampling.kind != "random") {
        fail("sampling.kind", "expected 'grid' or 'random'");
      }
      if (cfg.sampling.kind == "random") {
        if (!s.contains("count")) fail("sampling.count", "required for random sampling");
        const long long c = get_integer(s["count"], "sampling.count");
        if (c < 1 || c > static_cast<long long>(kMaxSamples)) fail("sampling.count", "must be in [1, 1000000]");
        cfg.sampling.count = static_cast<int>(c);
      } else if (s.contains("count")) {
        fail("sampling.count", "only valid with kind 'random'");
      }
    }
  }
  if (j.contains("output")) {
    check_keys(j["output"], "output", {"format", "path"});
    if (j["output"].contains("format")) {
      cfg.output.format = get_string(j["output"]["format"], "output.format");
      if (cfg.output.format != "text" && cfg.output.format != "json" && cfg.output.format != "csv") {
        fail("output.format", "expected text, json or csv");
      }
    }
    if (j["output"].contains("path")) cfg.output.path = get_string(j["output"]["path"], "output.path");
  }
  if (j.contains("sweep")) {
    const Json& s = j["sweep"];
    if (!s.is_array() || s.empty()) fail("sweep", "expected a non-empty array of {name, min, max, steps}");
    std::size_t cells = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string p = "sweep[" + std::to_string(i) + "]";
      check_keys(s[i], p, {"name", "min", "max", "steps"});
      for (const char* key : {"name", "min", "max", "steps"})
        if (!s[i].contains(key)) fail(p + "." + key, "missing");
      SweepAxis a;
      a.name = get_string(s[i]["name"], p + ".name");
      a.min = get_number(s[i]["min"], p + ".min");
      a.max = get_number(s[i]["max"], p + ".max");
      const long long steps = get_integer(s[i]["steps"], p + ".steps");
      if (steps < 1 || steps > static_cast<long long>(kMaxSweepCells)) fail(p + ".steps", "must be in [1, 10000]");
      if (steps > 1 && !(a.min < a.max)) fail(p, "min must be less than max");
      a.steps = static_cast<int>(steps);
      for (const auto& other : cfg.sweep)
        if (other.name == a.name) fail(p + ".name", "duplicate sweep parameter '" + a.name + "'");
      cells *= static_cast<std::size_t>(a.steps);
      if (cells > kMaxSweepCells) fail("sweep", "more than 10000 cells");
      cfg.sweep.push_back(a);
    }
  }
}

void check_sample_budget(const RunConfig& cfg) {
  if (cfg.sampling.kind == "random") return;
  double total = 1.0;
  for (const auto& iv : cfg.domain) total *= iv.samples;
  if (total > static_cast<double>(kMaxSamples)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "total sample count %.0f exceeds 1000000", total);
    fail("domain", buf);
  }
}

void check_sweep_names(const RunConfig& cfg) {
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    const auto& name = cfg.sweep[i].name;
    const bool known = cfg.gallery ? gallery::instantiate(cfg.gallery->id, cfg.gallery->params).params.count(name) > 0
                                   : cfg.parameters.count(name) > 0;
    if (!known) {
      fail("sweep[" + std::to_string(i) + "].name",
           "'" + name + "' is not a " + (cfg.gallery ? "parameter of the gallery entry" : "key of parameters"));
    }
  }
}

/// Parse and bind parameters; checks every name is a chart variable or parameter.
expr::Expr compile_text(const std::string& text, const std::string& path, const RunConfig& cfg) {
  expr::Expr e;
  try {
    e = expr::parse(text);
  } catch (const SyntaxError& s) {
    throw Error(ErrorKind::Syntax, path + ": " + s.what() + " in '" + text + "'");
  }
  for (const auto& v : expr::free_vars(e)) {
    if (cfg.parameters.count(v)) continue;
    bool chart = false;
    for (int i = 1; i <= cfg.dimension; ++i) chart |= v == "u" + std::to_string(i);
    if (!chart) {
      throw Error(ErrorKind::Unbound, path + ": unknown variable '" + v + "' (chart variables are u1..u" +
                                          std::to_string(cfg.dimension) + "; bind other names under parameters)");
    }
  }
  return cfg.parameters.empty() ? e : expr::substitute(e, cfg.parameters);
}

void validate_expressions(const RunConfig& cfg) {
  auto each = [&](const std::vector<std::string>& v, const char* field) {
    for (std::size_t i = 0; i < v.size(); ++i) compile_text(v[i], std::string(field) + "[" + std::to_string(i) + "]", cfg);
  };
  each(cfg.immersion, "immersion");
  each(cfg.metric, "metric");
  each(cfg.vector_field, "vector_field");
  if (cfg.potential) compile_text(*cfg.potential, "potential", cfg);
  if (cfg.h_function) compile_text(*cfg.h_function, "h_function", cfg);
  if (cfg.exclude) compile_text(*cfg.exclude, "exclude", cfg);
}

void validate_flavor(const RunConfig& cfg) {
  const auto flavor = soliton::parse_flavor(cfg.flavor);
  if (flavor == soliton::Flavor::KYamabe) {
    if (cfg.dimension < 3) fail("soliton.flavor", "k_yamabe needs dimension >= 3");
    if (cfg.k < 1 || cfg.k > cfg.dimension) fail("soliton.k", "must be in [1, dimension]");
  }
  if (flavor == soliton::Flavor::HAlmost && !cfg.h_function) fail("h_function", "required by flavor h_almost");
  const bool gradient = flavor == soliton::Flavor::KYamabe || flavor == soliton::Flavor::GradientConformal;
  if (cfg.mode == "intrinsic") {
    if (gradient && !cfg.potential) fail("potential", std::string("required by flavor ") + cfg.flavor);
    if (!cfg.potential && cfg.vector_field.empty()) fail("vector_field", "intrinsic mode needs a vector_field or a potential");
  }
}

std::vector<std::string> parse_metric(const Json& j, int n) {
  if (!j.is_array()) fail("metric", "expected an array");
  const std::size_t tri = static_cast<std::size_t>(n * (n + 1) / 2);
  if (!j.empty() && j[0].is_array()) {
    if (j.size() != static_cast<std::size_t>(n)) fail("metric", "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(get_strings(j[i], "metric[" + std::to_string(i) + "]"));
    std::vector<std::string> lower;
    for (int i = 0; i < n; ++i) {
      const std::string p = "metric[" + std::to_string(i) + "]";
      const std::size_t len = rows[i].size();
      if (len != static_cast<std::size_t>(i + 1) && len != static_cast<std::size_t>(n)) {
        fail(p, "row must hold " + std::to_string(i + 1) + " (lower triangle) or " + std::to_string(n) + " entries");
      }
      for (int c = 0; c <= i; ++c) lower.push_back(rows[i][c]);
    }
    for (int i = 0; i < n; ++i)
      for (int c = i + 1; c < n; ++c) {
        if (rows[i].size() != static_cast<std::size_t>(n)) continue;
        const auto a = expr::parse(rows[i][c]);
        const auto b = expr::parse(rows[c][i]);
        if (!expr::structurally_equal(a, b)) {
          fail("metric[" + std::to_string(i) + "][" + std::to_string(c) + "]", "full-matrix form must be symmetric");
        }
      }
    return lower;
  }
  auto flat = get_strings(j, "metric");
  if (flat.size() != tri) {
    fail("metric", "expected " + std::to_string(tri) + " lower-triangular entries for dimension " + std::to_string(n) +
                       ", got " + std::to_string(flat.size()));
  }
  return flat;
}

void forbid_with_gallery(const Json& j) {
  for (const char* key : {"mode", "dimension", "immersion", "metric", "potential", "vector_field", "h_function",
                          "soliton", "exclude", "parameters"}) {
    if (j.contains(key)) fail(key, "cannot be combined with gallery (the entry defines it)");
  }
}

Json interval_json(const hypersurface::Interval& iv) {
  return Json{{"min", iv.min}, {"max", iv.max}, {"samples", iv.samples}};
}

void write_json(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump(-1, ' ', false, Json::error_handler_t::replace) + ": ";
        write_json(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write_json(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

}  // namespace

RunConfig from_instance(const gallery::Instance& in) {
  RunConfig cfg;
  cfg.mode = in.kind == gallery::Kind::Immersion ? "hypersurface" : "intrinsic";
  cfg.dimension = in.dimension;
  cfg.immersion = in.immersion;
  cfg.metric = in.metric;
  cfg.potential = in.potential;
  cfg.vector_field = in.vector_field;
  cfg.h_function = in.h_function;
  cfg.flavor = in.flavor;
  cfg.k = in.k;
  cfg.hessian = in.hessian;
  cfg.domain = in.domain;
  cfg.exclude = in.exclude;
  cfg.gallery = gallery::Reference{in.id, in.params};
  cfg.expected = in.expected;
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, "", {"mode", "dimension", "immersion", "metric", "potential", "vector_field", "h_function", "soliton",
                     "domain", "exclude", "parameters", "tolerances", "seed", "sampling", "output", "sweep",
                     "gallery"});

  RunConfig cfg;
  if (j.contains("gallery")) {
    forbid_with_gallery(j);
    const auto ref = gallery::parse_reference(get_string(j["gallery"], "gallery"));
    cfg = from_instance(gallery::instantiate(ref.id, ref.params));
    parse_common(j, cfg);
    if (cfg.domain_overridden && cfg.domain.size() != static_cast<std::size_t>(cfg.dimension)) {
      fail("domain", "expected " + std::to_string(cfg.dimension) + " intervals");
    }
    check_sample_budget(cfg);
    check_sweep_names(cfg);
    return cfg;
  }

  if (!j.contains("mode")) fail("mode", "missing (expected 'hypersurface' or 'intrinsic')");
  cfg.mode = get_string(j["mode"], "mode");
  if (cfg.mode != "hypersurface" && cfg.mode != "intrinsic") {
    fail("mode", "expected 'hypersurface' or 'intrinsic', got '" + cfg.mode + "'");
  }
  const bool hyper = cfg.mode == "hypersurface";
  const char* own = hyper ? "immersion" : "metric";
  const char* other = hyper ? "metric" : "immersion";
  if (j.contains(other)) {
    fail(other, std::string("not allowed when mode is '") + cfg.mode + "' (mode expects '" + own + "')");
  }
  if (hyper && j.contains("vector_field")) {
    fail("vector_field", "not allowed when mode is 'hypersurface' (the field is the tangential position vector)");
  }
  if (!j.contains(own)) fail(own, std::string("required when mode is '") + cfg.mode + "'");

  if (j.contains("dimension")) {
    const long long n = get_integer(j["dimension"], "dimension");
    if (n < 2 || n > 8) fail("dimension", "must be in [2, 8]");
    cfg.dimension = static_cast<int>(n);
  }
  if (hyper) {
    cfg.immersion = get_strings(j["immersion"], "immersion");
    const int inferred = static_cast<int>(cfg.immersion.size()) - 1;
    if (cfg.dimension == 0) cfg.dimension = inferred;
    if (inferred != cfg.dimension) {
      fail("immersion", "expected dimension + 1 = " + std::to_string(cfg.dimension + 1) + " components, got " +
                            std::to_string(cfg.immersion.size()));
    }
    if (cfg.dimension < 2 || cfg.dimension > 8) fail("immersion", "needs 3 to 9 components");
  } else {
    if (cfg.dimension == 0) fail("dimension", "required when mode is 'intrinsic'");
    cfg.metric = parse_metric(j["metric"], cfg.dimension);
  }
  if (j.contains("potential")) cfg.potential = get_string(j["potential"], "potential");
  if (j.contains("h_function")) cfg.h_function = get_string(j["h_function"], "h_function");
  if (j.contains("exclude")) cfg.exclude = get_string(j["exclude"], "exclude");
  if (j.contains("vector_field")) {
    cfg.vector_field = get_strings(j["vector_field"], "vector_field");
    if (cfg.vector_field.size() != static_cast<std::size_t>(cfg.dimension)) {
      fail("vector_field", "expected " + std::to_string(cfg.dimension) + " components");
    }
  }
  if (j.contains("soliton")) {
    const Json& s = j["soliton"];
    check_keys(s, "soliton", {"flavor", "k", "hessian"});
    if (s.contains("flavor")) {
      cfg.flavor = get_string(s["flavor"], "soliton.flavor");
      try {
        soliton::parse_flavor(cfg.flavor);
      } catch (const Error& e) {
        fail("soliton.flavor", e.what());
      }
    }
    if (s.contains("k")) cfg.k = static_cast<int>(get_integer(s["k"], "soliton.k"));
    if (s.contains("hessian")) cfg.hessian = parse_hessian(get_string(s["hessian"], "soliton.hessian"), "soliton.hessian");
  }
  if (j.contains("parameters")) {
    const Json& p = j["parameters"];
    if (!p.is_object()) fail("parameters", "expected an object of name: number");
    for (auto it = p.begin(); it != p.end(); ++it) {
      const std::string path = "parameters." + it.key();
      if (!is_identifier(it.key())) fail(path, "not a valid identifier");
      if (is_chart_variable(it.key())) fail(path, "clashes with a chart variable name");
      cfg.parameters[it.key()] = get_number(it.value(), path);
    }
  }
  if (!j.contains("domain")) fail("domain", "required");
  parse_common(j, cfg);
  cfg.domain_overridden = false;
  if (cfg.domain.size() != static_cast<std::size_t>(cfg.dimension)) {
    fail("domain", "expected " + std::to_string(cfg.dimension) + " intervals, got " + std::to_string(cfg.domain.size()));
  }
  check_sample_budget(cfg);
  validate_flavor(cfg);
  validate_expressions(cfg);
  check_sweep_names(cfg);
  return cfg;
}

RunConfig load_config(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw Error(ErrorKind::Config, "empty config");
  if (text.compare(start, 8, "gallery:") == 0) {
    const auto ref = gallery::parse_reference(text.substr(start, text.find_last_not_of(" \t\r\n") - start + 1));
    return from_instance(gallery::instantiate(ref.id, ref.params));
  }
  return parse_config(text);
}

Json canonical(const RunConfig& cfg) {
  Json j;
  j["mode"] = cfg.mode;
  j["dimension"] = cfg.dimension;
  if (!cfg.immersion.empty()) j["immersion"] = cfg.immersion;
  if (!cfg.metric.empty()) j["metric"] = cfg.metric;
  if (cfg.potential) j["potential"] = *cfg.potential;
  if (!cfg.vector_field.empty()) j["vector_field"] = cfg.vector_field;
  if (cfg.h_function) j["h_function"] = *cfg.h_function;
  j["soliton"] = Json{{"flavor", cfg.flavor}, {"k", cfg.k}, {"hessian", hessian_name(cfg.hessian)}};
  j["domain"] = Json::array();
  for (const auto& iv : cfg.domain) j["domain"].push_back(interval_json(iv));
  if (cfg.exclude) j["exclude"] = *cfg.exclude;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : cfg.parameters) j["parameters"][k] = v;
  const auto& t = cfg.tol;
  const auto& c = cfg.classify;
  j["tolerances"] = Json{{"soliton", t.soliton},         {"minimal", t.minimal},
                         {"s3", t.s3},                   {"potential", t.potential},
                         {"ensays", t.ensays},           {"f1", t.f1},
                         {"concurrent", t.concurrent},   {"minimal_phi1", t.minimal_phi1},
                         {"lambda", c.tol_lambda},       {"alpha", c.tol_alpha},
                         {"umbilic", c.tol_umbilic},     {"consistency", c.tol_consistency}};
  j["seed"] = cfg.seed;
  j["sampling"] = cfg.sampling.kind == "random" ? Json{{"kind", "random"}, {"count", cfg.sampling.count}}
                                                : Json{{"kind", "grid"}};
  if (!cfg.sweep.empty()) {
    j["sweep"] = Json::array();
    for (const auto& a : cfg.sweep)
      j["sweep"].push_back(Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}});
  }
  if (cfg.gallery) {
    Json params = Json::object();
    for (const auto& [k, v] : cfg.gallery->params) params[k] = v;
    j["gallery"] = Json{{"id", cfg.gallery->id}, {"params", params}};
  }
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = serialize(canonical(cfg));
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value) {
  if (cfg.gallery) {
    auto params = cfg.gallery->params;
    params[name] = value;
    RunConfig out = from_instance(gallery::instantiate(cfg.gallery->id, params));
    out.tol = cfg.tol;
    out.classify = cfg.classify;
    out.seed = cfg.seed;
    out.sampling = cfg.sampling;
    out.output = cfg.output;
    out.sweep = cfg.sweep;
    if (cfg.domain_overridden && out.dimension == cfg.dimension) {
      out.domain = cfg.domain;
      out.domain_overridden = true;
    }
    return out;
  }
  if (!cfg.parameters.count(name)) throw Error(ErrorKind::Config, "unknown parameter '" + name + "'");
  RunConfig out = cfg;
  out.parameters[name] = value;
  return out;
}

Built build(const RunConfig& cfg, int max_jet_order) {
  if (max_jet_order < 2 || max_jet_order > 8) {
    throw Error(ErrorKind::Config, "jet order must be in [2, 8], got " + std::to_string(max_jet_order));
  }
  const int n = cfg.dimension;
  auto exprs = [&](const std::vector<std::string>& v, const char* field) {
    std::vector<expr::Expr> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(compile_text(v[i], std::string(field) + "[" + std::to_string(i) + "]", cfg));
    return out;
  };
  std::optional<expr::Expr> exclude;
  if (cfg.exclude) exclude = compile_text(*cfg.exclude, "exclude", cfg);

  Built b;
  const auto flavor = soliton::parse_flavor(cfg.flavor);
  std::function<bool(const Vec&)> keep;
  if (cfg.mode == "hypersurface") {
    b.immersion.emplace(n, exprs(cfg.immersion, "immersion"), cfg.domain, exclude, max_jet_order);
    b.problem.emplace(soliton::SolitonProblem::on_immersion(*b.immersion, flavor));
    const auto& imm = *b.immersion;
    keep = [&imm](const Vec& p) { return imm.admissible(p); };
  } else {
    b.problem.emplace(soliton::SolitonProblem::intrinsic(
        tensor::MetricField(n, exprs(cfg.metric, "metric"), max_jet_order), flavor));
    if (!cfg.vector_field.empty()) b.problem->with_field(tensor::VectorField(exprs(cfg.vector_field, "vector_field"), n, max_jet_order));
    std::shared_ptr<expr::CompiledExpr> ex;
    if (exclude) ex = std::make_shared<expr::CompiledExpr>(*exclude, tensor::chart_variables(n));
    keep = [ex](const Vec& p) { return !ex || ex->value(p) > 0.0; };
  }
  auto& prob = *b.problem;
  if (cfg.potential) prob.with_potential(tensor::ScalarField(compile_text(*cfg.potential, "potential", cfg), n, max_jet_order));
  if (cfg.h_function) prob.with_h(tensor::ScalarField(compile_text(*cfg.h_function, "h_function", cfg), n, max_jet_order));
  prob.with_k(cfg.k).with_hessian(cfg.hessian);

  auto safe_keep = [&](const Vec& p) {
    try {
      return keep(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::Numerical) return false;
      throw;
    }
  };
  std::size_t total = 0;
  if (cfg.sampling.kind == "random") {
    std::mt19937_64 rng(cfg.seed);
    for (int s = 0; s < cfg.sampling.count; ++s) {
      Vec p(n);
      for (int i = 0; i < n; ++i) {
        std::uniform_real_distribution<double> dist(cfg.domain[i].min, cfg.domain[i].max);
        p[i] = dist(rng);
      }
      ++total;
      if (safe_keep(p)) b.points.push_back(std::move(p));
    }
  } else {
    b.points = soliton::regular_grid(cfg.domain, [&](const Vec& p) {
      ++total;
      return safe_keep(p);
    });
  }
  b.excluded = total - b.points.size();
  if (b.points.empty()) throw Error(ErrorKind::Config, "domain: no admissible sample points");
  return b;
}

std::string serialize(const Json& j) {
  std::string out;
  write_json(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace solitonscope::config
