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

#include <cmath>
#include <set>
#include <string>

#include "config.hpp"
#include "doctest.h"
#include "driver.hpp"
#include "error.hpp"
#include "gallery.hpp"
#include "hypersurface.hpp"
#include "jet.hpp"

using namespace solitonscope;
using config::Json;

namespace {

Json run_json(driver::Command c, const config::RunConfig& cfg, std::optional<std::string> expect = std::nullopt,
              int* exit_code = nullptr) {
  driver::Options opt;
  opt.format = "json";
  opt.expect = std::move(expect);
  const auto o = driver::run(c, cfg, opt);
  if (exit_code) *exit_code = o.exit_code;
  return Json::parse(o.report);
}

}  // namespace

TEST_CASE("registry order is fixed and includes the required families") {
  const auto& es = gallery::entries();
  std::vector<std::string> ids;
  for (const auto& e : es) ids.push_back(e.id);
  for (const char* id : {"hyperplane", "sphere", "circular_cone", "torus", "catenoid", "helicoid", "graph",
                         "warped_cosh_cylinder", "rn_log_potential", "hessian_r2_flat", "hessian_r2_levi_civita",
                         "polar_flat"}) {
    CHECK_MESSAGE(std::find(ids.begin(), ids.end(), id) != ids.end(), id);
  }
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  CHECK(ids.front() == "hyperplane");
  CHECK(gallery::find("sphere").expected.outcome == "hypersphere");
  CHECK(gallery::find("torus").expected.outcome == "not-soliton");
  const auto& warped = gallery::find("warped_cosh_cylinder");
  CHECK(warped.kind == gallery::Kind::Intrinsic);
  CHECK(std::find(warped.expected.identities.begin(), warped.expected.identities.end(), "f1") !=
        warped.expected.identities.end());
}

TEST_CASE("every entry meets its expected outcome at defaults") {
  for (const auto& e : gallery::entries()) {
    CAPTURE(e.id);
    const auto cfg = config::load_config("gallery:" + e.id);
    const auto cmd = driver::parse_command(e.expected.command);
    int code = -1;
    const Json rep = run_json(cmd, cfg, e.expected.outcome, &code);
    CHECK(code == driver::kExitOk);
    CHECK(rep["expect"]["met"] == true);
    if (cmd == driver::Command::Classify) {
      CHECK(rep["samples"]["dropped"] == 0);
    }
    if (e.expected.identities.empty()) continue;
    const Json ids = run_json(driver::Command::Identities, cfg)["result"]["identities"];
    for (const auto& want : e.expected.identities) {
      CAPTURE(want);
      bool found = false;
      for (const auto& r : ids) {
        if (r["id"] != want) continue;
        found = true;
        CHECK(r["applicable"] == true);
        CHECK(r["pass"] == true);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("instantiate binds parameters into expressions") {
  const auto s = gallery::instantiate("sphere", {{"r", 2}, {"cx", 1}});
  REQUIRE(s.immersion.size() == 3);
  CHECK(s.domain.at(0).min == doctest::Approx(0.2));
  CHECK(s.domain.at(0).max == doctest::Approx(M_PI - 0.2));
  const auto built = config::build(config::from_instance(s));
  const Vec u{0.7, 1.1};
  const auto F = hypersurface::frame_at(*built.immersion, u).position;
  CHECK(F[0] == doctest::Approx(1 + 2 * std::sin(0.7) * std::cos(1.1)).epsilon(1e-14));
  CHECK(F[1] == doctest::Approx(2 * std::sin(0.7) * std::sin(1.1)).epsilon(1e-14));
  CHECK(F[2] == doctest::Approx(2 * std::cos(0.7)).epsilon(1e-14));

  const auto cone = gallery::instantiate("circular_cone", {{"c", 2}});
  CHECK(cone.domain.at(0).min == doctest::Approx(0.5));
  CHECK(cone.domain.at(0).max == doctest::Approx(2.0));

  const auto rn = gallery::instantiate("rn_log_potential", {{"m", 1}, {"beta", 1}, {"n", 3}});
  CHECK(rn.dimension == 3);
  CHECK(rn.flavor == "h_almost");
  REQUIRE(rn.potential);
  REQUIRE(rn.h_function);
  const std::map<std::string, double> at{{"u1", 0.3}, {"u2", -0.4}, {"u3", 0.5}};
  CHECK(expr::evaluate(expr::parse(*rn.potential), at) == doctest::Approx(-std::log(0.5 + 1)).epsilon(1e-14));
  CHECK(expr::evaluate(expr::parse(*rn.h_function), at) == doctest::Approx(-1 / (0.5 + 1)).epsilon(1e-14));
}

TEST_CASE("instantiate rejects unknown ids, unknown parameters and violated constraints") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Syntax;
  };
  CHECK(kind_of([] { gallery::instantiate("klein_bottle"); }) == ErrorKind::Config);
  CHECK(kind_of([] { gallery::instantiate("sphere", {{"radius", 2}}); }) == ErrorKind::Config);
  CHECK(kind_of([] { gallery::instantiate("torus", {{"R", 1}, {"r", 2}}); }) == ErrorKind::Config);
  CHECK(kind_of([] { gallery::instantiate("sphere", {{"r", -1}}); }) == ErrorKind::Config);
  CHECK(kind_of([] { gallery::instantiate("warped_cosh_cylinder", {{"n", 2.5}}); }) == ErrorKind::Config);
  CHECK_THROWS_WITH_AS(gallery::instantiate("torus", {{"R", 1}, {"r", 2}}),
                       doctest::Contains("constraint"), Error);
}

TEST_CASE("references parse with and without prefix") {
  auto r = gallery::parse_reference("gallery:sphere(r=2, cx=1)");
  CHECK(r.id == "sphere");
  CHECK(r.params.at("r") == 2);
  CHECK(r.params.at("cx") == 1);
  r = gallery::parse_reference("torus");
  CHECK(r.id == "torus");
  CHECK(r.params.empty());
  r = gallery::parse_reference("graph(a=-1.5e-1)");
  CHECK(r.params.at("a") == doctest::Approx(-0.15));
  CHECK_THROWS_AS(gallery::parse_reference("sphere(r=2"), Error);
  CHECK_THROWS_AS(gallery::parse_reference("sphere(r)"), Error);
  CHECK_THROWS_AS(gallery::parse_reference("sphere(r=2,r=3)"), Error);
  CHECK_THROWS_AS(gallery::parse_reference("sphere(r=x)"), Error);
  CHECK_THROWS_AS(gallery::parse_reference("gallery:"), Error);
}

TEST_CASE("literals round-trip through the parser") {
  for (double v : {0.0, 1.0, -2.5, 1e-300, 3.141592653589793, -7e22}) {
    CAPTURE(v);
    CHECK(expr::evaluate(expr::parse(gallery::literal(v) + "*1"), {}) == v);
  }
}

TEST_CASE("non-default parameters change expected outcomes where documented") {
  int code = -1;
  run_json(driver::Command::Classify, config::load_config("gallery:hyperplane(d=0)"), "cone", &code);
  CHECK(code == 0);
  run_json(driver::Command::Classify, config::load_config("gallery:sphere(r=0.5,cx=-1,cy=2,cz=0.25)"),
           "hypersphere", &code);
  CHECK(code == 0);
  const Json v = run_json(driver::Command::Classify, config::load_config("gallery:sphere(r=0.5,cx=-1,cy=2,cz=0.25)"));
  CHECK(v["result"]["radius"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(v["result"]["center"][1].get<double>() == doctest::Approx(2).epsilon(1e-9));
  run_json(driver::Command::Classify, config::load_config("gallery:circular_cone(c=0.5)"), "cone", &code);
  CHECK(code == 0);
}
