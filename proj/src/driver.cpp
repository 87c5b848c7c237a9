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

#include "driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"

#ifndef SOLITONSCOPE_VERSION_STRING
#define SOLITONSCOPE_VERSION_STRING "0.0.0"
#endif

namespace solitonscope::driver {

namespace {

using config::Json;
using config::RunConfig;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + short_num(v[i]);
  return s + ")";
}

Json dropped_json(const std::vector<soliton::DroppedPoint>& d) {
  Json a = Json::array();
  for (const auto& p : d) a.push_back(Json{{"u", vec_json(p.u)}, {"reason", p.reason}});
  return a;
}

std::string csv_header_u(int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += "u" + std::to_string(i) + ",";
  return s;
}

std::string csv_u(const Vec& u) {
  std::string s;
  for (double x : u) s += num(x) + ",";
  return s;
}

std::string csv_dropped(const std::vector<soliton::DroppedPoint>& d) {
  std::string s;
  for (const auto& p : d) {
    std::string reason = p.reason;
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    s += "# dropped " + vec_text(p.u) + ": " + reason + "\n";
  }
  return s;
}

struct Report {
  Json json = Json::object();
  std::string text;
  std::string csv;
  std::string summary;
  int exit_code = kExitOk;
};

Json header(Command c, const RunConfig* cfg) {
  Json j;
  j["tool"] = "solitonscope";
  j["version"] = SOLITONSCOPE_VERSION_STRING;
  j["command"] = to_string(c);
  if (cfg) {
    j["config_hash"] = config::config_hash(*cfg);
    if (cfg->gallery) {
      Json params = Json::object();
      for (const auto& [k, v] : cfg->gallery->params) params[k] = v;
      j["source"] = Json{{"gallery", cfg->gallery->id}, {"params", params}};
    }
  }
  return j;
}

std::string text_header(Command c, const RunConfig* cfg) {
  std::string s = std::string("solitonscope ") + SOLITONSCOPE_VERSION_STRING + " " + to_string(c) + "\n";
  if (cfg) {
    s += "config " + config::config_hash(*cfg);
    if (cfg->gallery) s += "  gallery:" + cfg->gallery->id;
    s += "\n";
  }
  return s;
}

Json samples_json(const config::Built& b, std::size_t evaluated, std::size_t dropped) {
  return Json{{"planned", b.points.size() + b.excluded},
              {"excluded", b.excluded},
              {"evaluated", evaluated},
              {"dropped", dropped}};
}

void apply_expect(Report& r, const std::optional<std::string>& expect, bool met) {
  if (!expect) return;
  r.json["expect"] = Json{{"value", *expect}, {"met", met}};
  r.text += "expect " + *expect + ": " + (met ? "met" : "NOT met") + "\n";
  r.exit_code = met ? kExitOk : kExitUnmet;
}

void check_expect(Command c, const std::optional<std::string>& expect) {
  if (!expect) return;
  static const std::vector<std::string> allowed = {"soliton", "not-soliton", "hyperplane", "cone", "hypersphere"};
  if (std::find(allowed.begin(), allowed.end(), *expect) == allowed.end()) {
    throw Error(ErrorKind::Config, "--expect: unknown value '" + *expect + "'");
  }
  if (c == Command::Verify && *expect != "soliton" && *expect != "not-soliton") {
    throw Error(ErrorKind::Config, "--expect " + *expect + " needs the classify command");
  }
  if (c != Command::Verify && c != Command::Classify) {
    throw Error(ErrorKind::Config, std::string("--expect applies to verify and classify, not ") + to_string(c));
  }
}

soliton::RunOptions run_options(const RunConfig& cfg, const Options& opt) {
  soliton::RunOptions ro;
  ro.tol = cfg.tol;
  ro.threads = opt.threads;
  return ro;
}

// ---------------------------------------------------------------------------

Report do_verify(const RunConfig& cfg, const Options& opt) {
  const auto built = config::build(cfg, opt.jet_order);
  const auto rep = soliton::check_flavored(*built.problem, built.points, run_options(cfg, opt));
  const int n = cfg.dimension;
  const bool hyper = built.immersion.has_value();

  Report r;
  r.json = header(Command::Verify, &cfg);
  r.json["samples"] = samples_json(built, rep.points.size(), rep.dropped.size());
  Json res;
  res["flavor"] = soliton::to_string(rep.flavor);
  if (rep.flavor == soliton::Flavor::KYamabe) res["k"] = rep.k;
  res["verdict"] = rep.soliton ? "soliton" : "not_soliton";
  res["sup_residual"] = rep.sup_residual;
  res["tolerance"] = rep.tolerance;
  if (rep.rho) res["rho"] = *rep.rho;
  double phi_min = INFINITY, phi_max = -INFINITY;
  for (const auto& p : rep.points) {
    phi_min = std::min(phi_min, p.phi);
    phi_max = std::max(phi_max, p.phi);
  }
  res["phi_min"] = phi_min;
  res["phi_max"] = phi_max;
  r.json["result"] = res;
  Json pts = Json::array();
  for (const auto& p : rep.points) {
    Json q;
    q["u"] = vec_json(p.u);
    q["phi"] = p.phi;
    q["residual"] = p.residual;
    if (p.rho_local) q["rho_local"] = *p.rho_local;
    if (p.frame) {
      q["lambda"] = p.frame->lambda;
      q["alpha"] = p.frame->alpha;
      q["kappa_min"] = p.frame->kappa_min;
      q["kappa_max"] = p.frame->kappa_max;
    }
    pts.push_back(q);
  }
  r.json["points"] = pts;
  r.json["dropped"] = dropped_json(rep.dropped);

  r.text = text_header(Command::Verify, &cfg);
  r.text += "flavor " + std::string(soliton::to_string(rep.flavor));
  if (rep.flavor == soliton::Flavor::KYamabe) r.text += " k=" + std::to_string(rep.k);
  r.text += "\nsamples " + std::to_string(rep.points.size()) + " evaluated, " + std::to_string(rep.dropped.size()) +
            " dropped, " + std::to_string(built.excluded) + " excluded\n";
  r.text += "phi range [" + short_num(phi_min) + ", " + short_num(phi_max) + "]\n";
  if (rep.rho) r.text += "rho " + short_num(*rep.rho) + "\n";
  r.text += "sup residual " + short_num(rep.sup_residual) + " (tolerance " + short_num(rep.tolerance) + ")\n";
  r.text += std::string("verdict ") + (rep.soliton ? "SOLITON" : "NOT A SOLITON") + "\n";
  for (const auto& d : rep.dropped) r.text += "dropped " + vec_text(d.u) + ": " + d.reason + "\n";

  r.csv = csv_header_u(n) + (hyper ? "lambda,alpha,kappa_min,kappa_max," : "") + "phi,residual" +
          (rep.points.empty() || !rep.points.front().rho_local ? "" : ",rho_local") + "\n";
  for (const auto& p : rep.points) {
    r.csv += csv_u(p.u);
    if (p.frame) {
      r.csv += num(p.frame->lambda) + "," + num(p.frame->alpha) + "," + num(p.frame->kappa_min) + "," +
               num(p.frame->kappa_max) + ",";
    }
    r.csv += num(p.phi) + "," + num(p.residual);
    if (p.rho_local) r.csv += "," + num(*p.rho_local);
    r.csv += "\n";
  }
  r.csv += csv_dropped(rep.dropped);

  r.summary = std::string(soliton::to_string(rep.flavor)) + ": " + (rep.soliton ? "soliton" : "not a soliton") +
              " (sup residual " + short_num(rep.sup_residual) + ")";
  r.exit_code = rep.soliton ? kExitOk : kExitUnmet;
  if (opt.expect) apply_expect(r, opt.expect, rep.soliton == (*opt.expect == "soliton"));
  return r;
}

Report do_identities(const RunConfig& cfg, const Options& opt) {
  const auto built = config::build(cfg, opt.jet_order);
  const auto reps = soliton::all_identities(*built.problem, built.points, run_options(cfg, opt));
  Report r;
  r.json = header(Command::Identities, &cfg);
  r.text = text_header(Command::Identities, &cfg);
  r.text += "samples " + std::to_string(built.points.size()) + " (" + std::to_string(built.excluded) + " excluded)\n";
  r.csv = "identity," + csv_header_u(cfg.dimension) + "defect\n";
  Json list = Json::array();
  bool universal_ok = true;
  std::size_t passed = 0, applicable = 0;
  for (const auto& id : reps) {
    Json j;
    j["id"] = id.id;
    j["applicable"] = id.applicable;
    j["universal"] = id.universal;
    if (!id.note.empty()) j["note"] = id.note;
    if (id.applicable) {
      ++applicable;
      passed += id.pass;
      if (id.universal && !id.pass) universal_ok = false;
      j["pass"] = id.pass;
      j["sup_defect"] = id.sup_defect;
      j["tolerance"] = id.tolerance;
      Json extras = Json::object();
      for (const auto& [k, v] : id.extras) extras[k] = v;
      j["extras"] = extras;
      Json pts = Json::array();
      for (std::size_t i = 0; i < id.points.size(); ++i)
        pts.push_back(Json{{"u", vec_json(id.points[i])}, {"defect", id.defect[i]}});
      j["points"] = pts;
      j["dropped"] = dropped_json(id.dropped);
      char line[200];
      std::snprintf(line, sizeof line, "%-13s %-4s sup defect %-12s tolerance %-8s%s\n", id.id.c_str(),
                    id.pass ? "pass" : "FAIL", short_num(id.sup_defect).c_str(), short_num(id.tolerance).c_str(),
                    id.universal ? "" : "  (conditional)");
      r.text += line;
      for (const auto& [k, v] : id.extras) r.text += "    " + k + " " + short_num(v) + "\n";
      for (std::size_t i = 0; i < id.points.size(); ++i) r.csv += id.id + "," + csv_u(id.points[i]) + num(id.defect[i]) + "\n";
      r.csv += csv_dropped(id.dropped);
    } else {
      r.text += id.id + std::string(13 - std::min<std::size_t>(13, id.id.size()), ' ') + " n/a  " + id.note + "\n";
      r.csv += "# " + id.id + " not applicable: " + id.note + "\n";
    }
    list.push_back(j);
  }
  r.json["samples"] = Json{{"planned", built.points.size() + built.excluded}, {"excluded", built.excluded},
                           {"evaluated", built.points.size()}};
  r.json["result"] = Json{{"identities", list}, {"universal_ok", universal_ok}};
  r.summary = std::to_string(passed) + " of " + std::to_string(applicable) + " applicable identities pass" +
              (universal_ok ? "" : "; a universal identity failed");
  r.exit_code = universal_ok ? kExitOk : kExitUnmet;
  return r;
}

Report do_classify(const RunConfig& cfg, const Options& opt) {
  if (cfg.mode != "hypersurface") throw Error(ErrorKind::Config, "mode: classify needs mode 'hypersurface'");
  const auto built = config::build(cfg, opt.jet_order);
  classifier::ClassifyConfig cc = cfg.classify;
  cc.tol_soliton = cfg.tol.soliton;
  cc.threads = opt.threads;
  const auto v = classifier::classify(*built.immersion, built.points, cc);
  using classifier::Tag;

  Report r;
  r.json = header(Command::Classify, &cfg);
  r.json["samples"] = samples_json(built, v.diag.samples, v.diag.dropped);
  Json res;
  res["tag"] = classifier::to_string(v.tag);
  res["reason"] = v.reason;
  if (v.tag == Tag::Hyperplane) {
    res["normal"] = vec_json(v.normal);
    res["offset"] = v.offset;
  }
  if (v.tag == Tag::Hypersphere) {
    res["center"] = vec_json(v.center);
    res["radius"] = v.radius;
  }
  const auto& d = v.diag;
  Json notes = Json::array();
  for (const auto& n : d.notes) notes.push_back(n);
  res["diagnostics"] = Json{{"scale", d.scale},
                            {"soliton_residual", d.soliton_residual},
                            {"max_abs_lambda", d.max_abs_lambda},
                            {"min_abs_lambda", d.min_abs_lambda},
                            {"small_lambda_samples", d.small_lambda},
                            {"umbilic_spread", d.umbilic_spread},
                            {"alpha_mean", d.alpha_mean},
                            {"alpha_stddev", d.alpha_stddev},
                            {"center_stddev", d.center_stddev},
                            {"normal_stddev", d.normal_stddev},
                            {"offset_stddev", d.offset_stddev},
                            {"notes", notes}};
  r.json["result"] = res;
  Json pts = Json::array();
  for (const auto& s : v.samples) {
    pts.push_back(Json{{"u", vec_json(s.u)},
                       {"lambda", s.lambda},
                       {"alpha", s.alpha},
                       {"kappa_min", s.kappa_min},
                       {"kappa_max", s.kappa_max},
                       {"residual", s.residual}});
  }
  r.json["points"] = pts;
  r.json["dropped"] = dropped_json(v.dropped);

  r.text = text_header(Command::Classify, &cfg);
  r.text += "samples " + std::to_string(d.samples) + " evaluated, " + std::to_string(d.dropped) + " dropped\n";
  r.text += std::string("verdict ") + classifier::to_string(v.tag) + "\n";
  if (v.tag == Tag::Hyperplane) r.text += "normal " + vec_text(v.normal) + "  offset " + short_num(v.offset) + "\n";
  if (v.tag == Tag::Hypersphere) r.text += "center " + vec_text(v.center) + "  radius " + short_num(v.radius) + "\n";
  r.text += "reason " + v.reason + "\n";
  r.text += "soliton residual " + short_num(d.soliton_residual) + ", |lambda| in [" + short_num(d.min_abs_lambda) +
            ", " + short_num(d.max_abs_lambda) + "], umbilic spread " + short_num(d.umbilic_spread) + "\n";
  for (const auto& n : d.notes) r.text += "note " + n + "\n";

  r.csv = csv_header_u(cfg.dimension) + "lambda,alpha,kappa_min,kappa_max,residual\n";
  for (const auto& s : v.samples) {
    r.csv += csv_u(s.u) + num(s.lambda) + "," + num(s.alpha) + "," + num(s.kappa_min) + "," + num(s.kappa_max) + "," +
             num(s.residual) + "\n";
  }
  r.csv += "# verdict " + std::string(classifier::to_string(v.tag)) + "\n";
  r.csv += csv_dropped(v.dropped);

  r.summary = std::string("classified as ") + classifier::to_string(v.tag);
  if (opt.expect) {
    const std::string& e = *opt.expect;
    bool met = false;
    if (e == "soliton") met = v.tag == Tag::Hyperplane || v.tag == Tag::Cone || v.tag == Tag::Hypersphere;
    else if (e == "not-soliton") met = v.tag == Tag::NotSoliton;
    else met = e == classifier::to_string(v.tag);
    apply_expect(r, opt.expect, met);
  }
  return r;
}

Report do_sweep(const RunConfig& cfg, const Options& opt) {
  if (cfg.sweep.empty()) throw Error(ErrorKind::Config, "sweep: the sweep command needs a sweep array in the config");
  // cell values, first axis fastest
  std::vector<std::vector<double>> cells;
  std::vector<hypersurface::Interval> axes;
  for (const auto& a : cfg.sweep) axes.push_back({a.min, a.max, a.steps});
  for (auto& p : soliton::regular_grid(axes)) cells.push_back(p);

  struct Row {
    std::vector<double> values;
    std::optional<soliton::SolitonReport> report;
    std::string error;
    std::string error_kind;
  };
  std::vector<Row> rows(cells.size());
  Options inner = opt;
  inner.threads = 1;
  parallel_for(cells.size(), opt.threads, [&](std::size_t i) {
    rows[i].values = cells[i];
    try {
      RunConfig c = cfg;
      for (std::size_t a = 0; a < cfg.sweep.size(); ++a) c = config::with_parameter(c, cfg.sweep[a].name, cells[i][a]);
      const auto built = config::build(c, inner.jet_order);
      rows[i].report = soliton::check_flavored(*built.problem, built.points, run_options(c, inner));
    } catch (const Error& e) {
      rows[i].error = e.what();
      rows[i].error_kind = solitonscope::to_string(e.kind());
    }
  });
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.report.has_value() != b.report.has_value()) return a.report.has_value();
    if (!a.report) return false;
    return a.report->sup_residual < b.report->sup_residual;
  });

  Report r;
  r.json = header(Command::Sweep, &cfg);
  Json names = Json::array();
  for (const auto& a : cfg.sweep) names.push_back(a.name);
  Json out = Json::array();
  std::size_t solitons = 0, failed = 0;
  r.text = text_header(Command::Sweep, &cfg);
  std::string head;
  for (const auto& a : cfg.sweep) head += a.name + " ";
  r.text += "rows sorted by sup residual (" + std::string(cfg.flavor) + ")\n" + head + "| sup_residual verdict\n";
  r.csv.clear();
  for (const auto& a : cfg.sweep) r.csv += a.name + ",";
  r.csv += "sup_residual,verdict,rho,dropped\n";
  for (const auto& row : rows) {
    Json j;
    Json values = Json::object();
    for (std::size_t a = 0; a < cfg.sweep.size(); ++a) values[cfg.sweep[a].name] = row.values[a];
    j["values"] = values;
    std::string line;
    for (double v : row.values) line += short_num(v) + " ";
    std::string csv;
    for (double v : row.values) csv += num(v) + ",";
    if (row.report) {
      const auto& rep = *row.report;
      solitons += rep.soliton;
      j["sup_residual"] = rep.sup_residual;
      j["verdict"] = rep.soliton ? "soliton" : "not_soliton";
      if (rep.rho) j["rho"] = *rep.rho;
      j["dropped"] = rep.dropped.size();
      line += "| " + short_num(rep.sup_residual) + " " + (rep.soliton ? "soliton" : "not_soliton");
      csv += num(rep.sup_residual) + "," + (rep.soliton ? "soliton" : "not_soliton") + "," +
             (rep.rho ? num(*rep.rho) : "") + "," + std::to_string(rep.dropped.size());
    } else {
      ++failed;
      j["error"] = Json{{"kind", row.error_kind}, {"message", row.error}};
      line += "| error (" + row.error_kind + "): " + row.error;
      csv += ",error,," ;
    }
    out.push_back(j);
    r.text += line + "\n";
    r.csv += csv + "\n";
  }
  r.json["result"] = Json{{"flavor", cfg.flavor}, {"parameters", names}, {"cells", rows.size()},
                          {"solitons", solitons}, {"failed", failed}, {"rows", out}};
  r.summary = std::to_string(rows.size()) + " cells, " + std::to_string(solitons) + " solitons, " +
              std::to_string(failed) + " failed";
  return r;
}

Json entry_json(const gallery::Entry& e) {
  Json params = Json::array();
  for (const auto& p : e.params)
    params.push_back(Json{{"name", p.name}, {"default", p.default_value}, {"constraint", p.constraint}});
  Json ids = Json::array();
  for (const auto& id : e.expected.identities) ids.push_back(id);
  Json ex = Json{{"command", e.expected.command}, {"outcome", e.expected.outcome}, {"identities", ids},
                 {"basis", e.expected.basis}};
  if (!e.expected.note.empty()) ex["note"] = e.expected.note;
  return Json{{"id", e.id}, {"kind", gallery::to_string(e.kind)}, {"summary", e.summary}, {"params", params},
              {"expected", ex}};
}

Report do_gallery(const std::optional<RunConfig>& cfg) {
  Report r;
  if (!cfg) {
    r.json = header(Command::Gallery, nullptr);
    Json list = Json::array();
    r.text = text_header(Command::Gallery, nullptr);
    r.csv = "id,kind,command,outcome,params\n";
    for (const auto& e : gallery::entries()) {
      list.push_back(entry_json(e));
      std::string params;
      for (const auto& p : e.params) params += (params.empty() ? "" : " ") + p.name + "=" + short_num(p.default_value);
      char line[256];
      std::snprintf(line, sizeof line, "%-24s %-10s %-9s %-12s %s\n", e.id.c_str(), gallery::to_string(e.kind),
                    e.expected.command.c_str(), e.expected.outcome.c_str(), params.c_str());
      r.text += line;
      r.csv += e.id + "," + gallery::to_string(e.kind) + "," + e.expected.command + "," + e.expected.outcome + "," +
               params + "\n";
    }
    r.json["result"] = Json{{"entries", list}};
    r.summary = std::to_string(gallery::entries().size()) + " gallery entries";
    return r;
  }
  if (!cfg->gallery) throw Error(ErrorKind::Config, "gallery: the gallery command takes a gallery reference");
  r.json = header(Command::Gallery, &*cfg);
  Json inst = config::canonical(*cfg);
  r.json["result"] = Json{{"entry", entry_json(gallery::find(cfg->gallery->id))}, {"config", inst}};
  const auto& ex = *cfg->expected;
  if (true) {
    Json ids = Json::array();
    for (const auto& id : ex.identities) ids.push_back(id);
    r.json["result"]["expected"] = Json{{"command", ex.command}, {"outcome", ex.outcome}, {"identities", ids}};
  }
  r.text = text_header(Command::Gallery, &*cfg) + "expected: " + ex.command + " -> " + ex.outcome + "\n" +
           config::serialize(inst);
  r.csv = "key,value\nid," + cfg->gallery->id + "\ncommand," + ex.command + "\noutcome," + ex.outcome + "\n";
  r.summary = "gallery:" + cfg->gallery->id + " expects " + ex.outcome;
  return r;
}

}  // namespace

Command parse_command(const std::string& name) {
  for (Command c : {Command::Verify, Command::Identities, Command::Classify, Command::Sweep, Command::Gallery})
    if (name == to_string(c)) return c;
  throw Error(ErrorKind::Config, "unknown command '" + name + "' (expected verify, identities, classify, sweep or gallery)");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Identities: return "identities";
    case Command::Classify: return "classify";
    case Command::Sweep: return "sweep";
    case Command::Gallery: return "gallery";
  }
  return "verify";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Numerical: return kExitNumerical;
    default: return kExitInput;
  }
}

Outcome run(Command command, const std::optional<RunConfig>& cfg, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  check_expect(command, opt.expect);
  if (opt.threads < 1) throw Error(ErrorKind::Config, "threads must be >= 1");
  if (command != Command::Gallery && !cfg) throw Error(ErrorKind::Config, "a config is required");
  Outcome o;
  o.format = opt.format ? *opt.format : (cfg ? cfg->output.format : "text");
  if (o.format != "text" && o.format != "json" && o.format != "csv") {
    throw Error(ErrorKind::Config, "format must be text, json or csv");
  }
  Report r;
  switch (command) {
    case Command::Verify: r = do_verify(*cfg, opt); break;
    case Command::Identities: r = do_identities(*cfg, opt); break;
    case Command::Classify: r = do_classify(*cfg, opt); break;
    case Command::Sweep: r = do_sweep(*cfg, opt); break;
    case Command::Gallery: r = do_gallery(cfg); break;
  }
  o.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  o.exit_code = r.exit_code;
  o.summary = r.summary;
  if (o.format == "json") {
    o.report = config::serialize(r.json);
  } else if (o.format == "csv") {
    o.report = r.csv;
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "elapsed %.1f ms\n", o.elapsed_ms);
    o.report = r.text + buf;
  }
  return o;
}

}  // namespace solitonscope::driver
