// Copyright 2026 The sqrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "sqrsim/harness.hpp"

using namespace sqrsim;
using evolve::Scheme;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

harness::SweepOptions small_sweep() {
  harness::SweepOptions o;
  o.gates = {"identity"};
  o.omega0 = {200.0, 250.0};
  o.run.integrator.output_points = 50;
  return o;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "sqrsim_test_harness";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("gate presets") {
  CHECK(harness::preset_names() == std::vector<std::string>{"identity", "pauli-x", "hadamard"});
  const auto id = harness::preset("identity");
  CHECK(id.cfg.omega0 == 250.0);
  CHECK(id.cfg.delta_cap == 2500.0);
  CHECK(id.gate.chi == doctest::Approx(kPi / 8));
  CHECK(id.gate.delta == 0.0);
  const auto x = harness::preset("pauli-x");
  CHECK(x.cfg.omega0 == 750.0);
  CHECK(x.gate.chi == doctest::Approx(kPi / 4));
  CHECK(x.gate.delta == doctest::Approx(kPi));
  const auto h = harness::preset("hadamard");
  CHECK(h.cfg.omega0 == 350.0);
  CHECK(h.gate.eta == doctest::Approx(kPi));
  for (const auto& name : harness::preset_names()) {
    const auto p = harness::preset(name);
    CHECK(p.cfg.period == 20.0);
    CHECK(p.cfg.offset == 1.6);
    CHECK(p.cfg.sigma == 2.0);
    CHECK(p.cfg.t_min == -40.0);
    CHECK(p.cfg.t_max == 0.0);
    const auto s = harness::preset(name, Scheme::sc2);
    CHECK(s.cfg.omega0 == 500.0);
    CHECK(s.cfg.delta_cap == 50000.0);
  }
}

TEST_CASE("unknown preset names list the valid ones") {
  try {
    harness::preset("cnot");
    FAIL("expected an error");
  } catch (const harness::UnknownPresetError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cnot") != std::string::npos);
    CHECK(msg.find("identity") != std::string::npos);
    CHECK(msg.find("pauli-x") != std::string::npos);
    CHECK(msg.find("hadamard") != std::string::npos);
  }
}

TEST_CASE("config files") {
  std::istringstream in(
      "# comment\n"
      "gate = pauli-x\n"
      "omega0 = 600   # trailing comment\n"
      "delta-rule = 20*omega0\n"
      "\n"
      "t_min=-41\n"
      "direct = true\n"
      "alpha = (0.6,0)\n"
      "beta = (0,0.8)\n");
  const auto s = harness::settings_from_config(harness::parse_config(in));
  CHECK(*s.gate == "pauli-x");
  CHECK(*s.omega0 == 600.0);
  CHECK(*s.delta_ratio == 20.0);
  CHECK(*s.t_min == -41.0);
  CHECK(*s.direct);
  const auto r = harness::resolve(s);
  CHECK(r.preset.cfg.omega0 == 600.0);
  CHECK(r.preset.cfg.delta_cap == 12000.0);
  CHECK(r.preset.cfg.t_min == -41.0);
  CHECK(r.options.direct);
  CHECK(r.psi0.beta == Complex(0.0, 0.8));

  SUBCASE("errors carry the line") {
    std::istringstream dup("gate = identity\ngate = hadamard\n");
    CHECK_THROWS_WITH_AS(harness::parse_config(dup), doctest::Contains("line 2"), harness::SettingsError);
    std::istringstream noeq("gate identity\n");
    CHECK_THROWS_WITH_AS(harness::parse_config(noeq), doctest::Contains("line 1"), harness::SettingsError);
  }
  SUBCASE("bad values") {
    CHECK_THROWS_AS(harness::settings_from_config({{"omega0", "big"}}), harness::SettingsError);
    CHECK_THROWS_AS(harness::settings_from_config({{"colour", "red"}}), harness::SettingsError);
    CHECK_THROWS_AS(harness::settings_from_config({{"points", "2.5"}}), harness::SettingsError);
    CHECK_THROWS_AS(harness::settings_from_config({{"delta_rule", "10*delta"}}), harness::SettingsError);
    CHECK_THROWS_AS(harness::settings_from_config({{"direct", "maybe"}}), harness::SettingsError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(harness::load_config(scratch("does-not-exist.conf")), harness::IoError);
  }
}

TEST_CASE("settings merge and resolve") {
  harness::Settings file;
  file.gate = "identity";
  file.omega0 = 300.0;
  file.rtol = 1e-7;
  harness::Settings cli;
  cli.omega0 = 400.0;
  const auto m = harness::merge(file, cli);
  CHECK(*m.gate == "identity");
  CHECK(*m.omega0 == 400.0);
  CHECK(*m.rtol == 1e-7);

  auto s = m;
  s.delta_cap = 1234.0;
  s.delta_ratio = 50.0;
  CHECK(harness::resolve(s).preset.cfg.delta_cap == 1234.0);
  s.delta_cap.reset();
  CHECK(harness::resolve(s).preset.cfg.delta_cap == 20000.0);
  s.scheme = "sc2";
  s.delta_ratio.reset();
  CHECK(harness::resolve(s).preset.cfg.delta_cap == 40000.0);

  harness::Settings bad = m;
  bad.alpha = "1";
  bad.beta = "1";
  CHECK_THROWS_AS(harness::resolve(bad), sqr::ConfigError);
  bad = m;
  bad.eps_deg = -1.0;
  CHECK_THROWS_AS(harness::resolve(bad), harness::SettingsError);
  bad = m;
  bad.gate.reset();
  CHECK_THROWS_AS(harness::resolve(bad), harness::SettingsError);
  bad = m;
  bad.scheme = "fast";
  CHECK_THROWS_AS(harness::resolve(bad), std::invalid_argument);
}

TEST_CASE("small parsers") {
  CHECK(harness::parse_complex("0.5") == Complex(0.5, 0.0));
  CHECK(harness::parse_complex(" (0.6, -0.8) ") == Complex(0.6, -0.8));
  CHECK_THROWS_AS(harness::parse_complex("(1)"), harness::SettingsError);
  CHECK_THROWS_AS(harness::parse_complex("i"), harness::SettingsError);
  CHECK(harness::split_list("identity, pauli-x,,hadamard ") ==
        std::vector<std::string>{"identity", "pauli-x", "hadamard"});
  CHECK(harness::parse_format("json") == harness::Format::json);
  CHECK_THROWS_AS(harness::parse_format("xml"), std::invalid_argument);
  CHECK(harness::format_from_path("a/b.csv") == harness::Format::csv);
  CHECK(harness::format_from_path("b.JSON") == harness::Format::json);
  CHECK(!harness::format_from_path("b.txt"));
  CHECK(harness::linspace(20.0, 200.0, 10).size() == 10);
  CHECK(harness::linspace(20.0, 200.0, 10)[1] == 40.0);
  CHECK(harness::linspace(20.0, 200.0, 10).back() == 200.0);
  CHECK(harness::linspace(3.0, 9.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 0.9999999876543, 1e-300, -2.5e17, 750.0}) {
    CHECK(std::stod(harness::format_double(v)) == v);
  }
}

TEST_CASE("sweep input validation") {
  auto o = small_sweep();
  o.omega0 = {};
  CHECK_THROWS_AS(harness::sweep(o), std::invalid_argument);
  o.omega0 = {100.0, 100.0};
  CHECK_THROWS_AS(harness::sweep(o), std::invalid_argument);
  o.omega0 = {-1.0, 100.0};
  CHECK_THROWS_AS(harness::sweep(o), std::invalid_argument);
  o = small_sweep();
  o.scheme = Scheme::bare;
  CHECK_THROWS_AS(harness::sweep(o), std::invalid_argument);
  o = small_sweep();
  o.gates = {"cnot"};
  CHECK_THROWS_AS(harness::sweep(o), harness::UnknownPresetError);
}

TEST_CASE("sweep rows match single runs, threads do not change results") {
  auto o = small_sweep();
  o.gates = {"identity", "hadamard"};
  const auto res = harness::sweep(o);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.delta_ratio == 10.0);
  CHECK(res.rows[0].gate == "identity");
  CHECK(res.rows[1].omega0 == 250.0);
  CHECK(res.rows[2].gate == "hadamard");

  // identity at omega0 = 250 is the preset itself.
  const auto p = harness::preset("identity");
  CHECK(*res.rows[1].fidelity_bare == evolve::run(Scheme::bare, p.gate, p.cfg, {}, o.run).fidelity);
  CHECK(*res.rows[1].fidelity_shortcut == evolve::run(Scheme::sc1, p.gate, p.cfg, {}, o.run).fidelity);
  for (const auto& r : res.rows) {
    CHECK(r.error.empty());
    CHECK(r.norm_drift > 0.0);
    CHECK(r.norm_drift <= 1e-6);
  }

  o.threads = 3;
  CHECK(harness::sweep(o) == res);
}

TEST_CASE("sweep per-point failures become row errors") {
  auto o = small_sweep();
  o.omega0 = {250.0};
  o.run.integrator.max_steps = 10;
  const auto res = harness::sweep(o);
  REQUIRE(res.rows.size() == 1);
  CHECK(!res.rows[0].fidelity_bare);
  CHECK(!res.rows[0].fidelity_shortcut);
  CHECK(res.rows[0].error.find("bare") != std::string::npos);
}

TEST_CASE("sweep export and import") {
  harness::SweepResult res;
  res.scheme = Scheme::sc2;
  res.delta_ratio = 100.0;
  res.timing.sigma = 1.5;
  res.rows = {{20.0, "identity", Scheme::sc2, 0.4681234567890123, 0.9999991234567, ""},
              {40.0, "identity", Scheme::sc2, 1.0 / 3.0, std::nullopt, "sc2 evolution failed at t = -3: boom"}};

  std::stringstream js;
  harness::write_sweep_json(js, res);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["tool"] == "sqrsim");
  CHECK(j["kind"] == "sweep");
  CHECK(j["delta_rule"] == "k*omega0");
  CHECK(j["rows"][1]["fidelity_shortcut"].is_null());
  js.seekg(0);
  CHECK(harness::read_sweep_json(js) == res);

  std::stringstream cs;
  harness::write_sweep_csv(cs, res);
  CHECK(first_line(cs.str()) == "omega0,gate,scheme,fidelity_bare,fidelity_shortcut");
  const auto back = harness::read_sweep_csv(cs);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].fidelity_bare == res.rows[0].fidelity_bare);
  CHECK(back.rows[0].fidelity_shortcut == res.rows[0].fidelity_shortcut);
  CHECK(back.rows[1].fidelity_bare == res.rows[1].fidelity_bare);
  CHECK(!back.rows[1].fidelity_shortcut);
  CHECK(back.scheme == Scheme::sc2);

  std::istringstream broken("omega0,gate\n1,identity\n");
  CHECK_THROWS_AS(harness::read_sweep_csv(broken), harness::SettingsError);
  std::istringstream not_sweep("{\"kind\": \"trace\"}");
  CHECK_THROWS_AS(harness::read_sweep_json(not_sweep), harness::SettingsError);
}

TEST_CASE("trace, schedule and feasibility exports") {
  const auto p = harness::preset("hadamard");
  evolve::RunOptions o;
  o.integrator.output_points = 30;
  const auto tr = evolve::run(Scheme::bare, p.gate, p.cfg, {}, o);

  std::stringstream cs;
  harness::write_trace_csv(cs, tr);
  CHECK(first_line(cs.str()).rfind("t,p1,p2,p3,p4,re_psi1,im_psi1", 0) == 0);
  const auto table = harness::read_csv(cs);
  REQUIRE(table.rows.size() == 30);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    REQUIRE(table.number(k, "t") == tr.times[k]);
    REQUIRE(table.number(k, "p2") == tr.populations[k](1));
    REQUIRE(table.number(k, "im_psi4") == tr.states[k](3).imag());
  }

  std::stringstream js;
  harness::write_trace_json(js, tr, {p.gate, p.cfg, {}, o});
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["kind"] == "trace");
  CHECK(j["config"]["omega0"] == 350.0);
  CHECK(j["data"]["p1"].size() == 30);

  const auto sched = schedule::sample(Scheme::sc2, harness::preset("hadamard", Scheme::sc2).gate,
                                      harness::preset("hadamard", Scheme::sc2).cfg, {}, 40);
  std::stringstream ss;
  harness::write_schedule_csv(ss, sched);
  const auto st = harness::read_csv(ss);
  CHECK(st.rows.size() == 40);
  for (const char* col : {"t", "mag_O1", "ph_O3", "mag_Ot5", "d1", "d2", "d3"}) CHECK(st.column(col) >= 0);

  const auto prof = harness::feasibility_profile(p.gate, harness::preset("hadamard", Scheme::sc2).cfg, {}, 25);
  std::stringstream fs_;
  harness::write_feasibility_csv(fs_, prof);
  CHECK(first_line(fs_.str()) == "t,residual,r12,r13,r23,phi12,phi13,phi23");
  CHECK(harness::read_csv(fs_).rows.size() == 25);
}

TEST_CASE("write_file replaces the target atomically and reports failures") {
  const auto path = scratch("out.csv");
  harness::write_file(path, [](std::ostream& os) { os << "a\n"; });
  harness::write_file(path, [](std::ostream& os) { os << "b\n"; });
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "b");
  CHECK(!fs::exists(path.string() + ".tmp"));
  CHECK_THROWS_AS(harness::write_file(scratch("missing-dir") / "x" / "y.csv", [](std::ostream&) {}), harness::IoError);
}
