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

// Writes the preset fidelity fixture from tightened-tolerance runs.
// Usage: gen_preset_fixture <out.json>

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "sqrsim/harness.hpp"

int main(int argc, char** argv) {
  using namespace sqrsim;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <out.json>\n", argv[0]);
    return 2;
  }
  evolve::RunOptions o;
  o.integrator.rtol = 1e-12;
  o.integrator.atol = 1e-14;
  o.integrator.output_points = 2;
  nlohmann::json rows = nlohmann::json::array();
  for (evolve::Scheme s : {evolve::Scheme::bare, evolve::Scheme::sc1, evolve::Scheme::sc2}) {
    for (const auto& name : harness::preset_names()) {
      const auto p = harness::preset(name, s);
      const auto tr = evolve::run(s, p.gate, p.cfg, {}, o);
      std::fprintf(stderr, "%s %s F=%.12f steps=%ld\n", name.c_str(), std::string(evolve::to_string(s)).c_str(),
                   tr.fidelity, tr.steps);
      rows.push_back({{"gate", name},
                      {"scheme", evolve::to_string(s)},
                      {"omega0", p.cfg.omega0},
                      {"delta_cap", p.cfg.delta_cap},
                      {"fidelity", tr.fidelity}});
    }
  }
  std::ofstream(argv[1]) << nlohmann::json{{"rtol", o.integrator.rtol}, {"atol", o.integrator.atol}, {"rows", rows}}
                                .dump(1)
                         << '\n';
  return 0;
}
