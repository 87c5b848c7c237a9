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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "solitonscope/solitonscope.h"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int report_failure(ss_status st) {
  std::cerr << "solitonscope: ";
  const std::string kind = ss_last_error_kind();
  if (!kind.empty()) std::cerr << kind << " error: ";
  std::cerr << ss_last_error() << "\n";
  return st == SS_ERR_NUMERICAL || st == SS_ERR_INTERNAL ? kExitNumerical : kExitInput;
}

std::optional<std::string> read_source(const std::string& source) {
  if (source.rfind("gallery:", 0) == 0) return source;
  if (source == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Session {
  ss_session* s = nullptr;
  ~Session() { ss_session_destroy(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of conformal and Yamabe-type solitons"};
  app.set_version_flag("--version", std::string(ss_version()));

  std::string config_source;
  std::string command = "verify";
  std::string expect;
  std::string format;
  std::string out_path;
  int jet_order = 4;
  std::optional<int> threads;

  app.add_option("--config", config_source, "Config JSON path, '-' for stdin, or gallery:<id>(k=v,...)");
  app.add_option("--command", command, "verify, identities, classify, sweep or gallery")
      ->check(CLI::IsMember({"verify", "identities", "classify", "sweep", "gallery"}));
  app.add_option("--expect", expect, "Expected outcome")
      ->check(CLI::IsMember({"soliton", "not-soliton", "hyperplane", "cone", "hypersphere"}));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write the report to PATH instead of stdout");
  app.add_option("--jet-order", jet_order, "Maximum jet order")->check(CLI::Range(2, 8));
  app.add_option("--threads", threads, "Worker threads (default: SOLITONSCOPE_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (!threads) {
    if (const char* env = std::getenv("SOLITONSCOPE_THREADS"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 1 || v > 1024) {
        std::cerr << "solitonscope: config error: SOLITONSCOPE_THREADS must be a positive integer\n";
        return kExitInput;
      }
      threads = static_cast<int>(v);
    }
  }

  Session session;
  if (ss_status st = ss_session_create(&session.s); st != SS_OK) return report_failure(st);

  if (!config_source.empty()) {
    const auto text = read_source(config_source);
    if (!text) {
      std::cerr << "solitonscope: config error: cannot read '" << config_source << "'\n";
      return kExitInput;
    }
    if (ss_status st = ss_session_load_config(session.s, text->c_str()); st != SS_OK) return report_failure(st);
  } else if (command != "gallery") {
    std::cerr << "solitonscope: config error: --config is required for " << command << "\n";
    return kExitInput;
  }

  ss_status st = SS_OK;
  if (!format.empty()) st = ss_session_set_format(session.s, format.c_str());
  if (st == SS_OK) st = ss_session_set_jet_order(session.s, jet_order);
  if (st == SS_OK && threads) st = ss_session_set_threads(session.s, *threads);
  if (st == SS_OK && !expect.empty()) st = ss_session_set_expect(session.s, expect.c_str());
  if (st != SS_OK) return report_failure(st);

  int exit_code = kExitInput;
  if (st = ss_session_run(session.s, command.c_str(), &exit_code); st != SS_OK) {
    report_failure(st);
    return exit_code;
  }

  std::string target = out_path;
  if (target.empty()) {
    if (const char* p = ss_session_output_path(session.s)) target = p;
  }
  const char* report = ss_session_report(session.s);
  if (target.empty() || target == "-") {
    std::fputs(report, stdout);
    std::fflush(stdout);
  } else {
    std::ofstream out(target, std::ios::binary);
    out << report;
    if (!out) {
      std::cerr << "solitonscope: config error: cannot write '" << target << "'\n";
      return kExitInput;
    }
    std::cerr << ss_session_summary(session.s) << "\n";
  }
  return exit_code;
}
