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

// sqrsim command line: simulate, sweep, pulses, feasibility.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
// Failures print one line "error: <message>" on stderr.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sqrsim/harness.hpp"

namespace {

using namespace sqrsim;
using harness::Settings;

constexpr int kUsageError = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--omega0", s.omega0, "Peak pulse amplitude");
  cmd->add_option("--delta-cap", s.delta_cap, "Single-photon detuning (overrides the ratio rule)");
  cmd->add_option("--delta-ratio", s.delta_ratio, "Delta = ratio * omega0");
  cmd->add_option("--period", s.period, "Sequence spacing T");
  cmd->add_option("--offset", s.offset, "Lobe offset t0");
  cmd->add_option("--sigma", s.sigma, "Lobe width");
  cmd->add_option("--t-min", s.t_min, "Start time");
  cmd->add_option("--t-max", s.t_max, "End time");
  cmd->add_option("--rtol", s.rtol, "Integrator relative tolerance");
  cmd->add_option("--atol", s.atol, "Integrator absolute tolerance");
  cmd->add_option("--output-points", s.output_points, "Samples in traces and schedules");
  cmd->add_option("--samples-per-sigma", s.samples_per_sigma, "Schedule interpolation density");
  cmd->add_option("--direct", s.direct, "Evaluate shortcut terms at every step (true/false)");
  cmd->add_option("--eps-deg", s.eps_deg, "Relative degeneracy threshold");
  cmd->add_option("--out", s.out, "Output file");
  cmd->add_option("--format", s.format, "csv or json (default from --out extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
}

harness::Format output_format(const Settings& s) {
  if (s.format) return harness::parse_format(*s.format);
  if (s.out) {
    if (auto f = harness::format_from_path(*s.out)) return *f;
  }
  return harness::Format::csv;
}

// Writes to --out when given, else to stdout.
void emit(const Settings& s, const std::function<void(std::ostream&)>& fill) {
  if (s.out) {
    harness::write_file(*s.out, fill);
  } else {
    fill(std::cout);
  }
}

harness::RunInfo run_info(const harness::Resolved& r) {
  return {r.preset.gate, r.preset.cfg, r.psi0, r.options};
}

int simulate(const Settings& s) {
  const auto r = harness::resolve(s);
  const auto trace = evolve::run(r.scheme, r.preset.gate, r.preset.cfg, r.psi0, r.options);
  std::printf("gate=%s scheme=%s omega0=%s delta_cap=%s\n", r.preset.name.c_str(),
              std::string(evolve::to_string(r.scheme)).c_str(), harness::format_double(r.preset.cfg.omega0).c_str(),
              harness::format_double(r.preset.cfg.delta_cap).c_str());
  std::printf("fidelity=%s\n", harness::format_double(trace.fidelity).c_str());
  std::printf("norm_drift=%.3e error_estimate=%.3e steps=%ld\n", trace.norm_drift, trace.error_estimate, trace.steps);
  const auto summary = evolve::population_summary(trace);
  for (std::size_t i = 0; i < summary.size(); ++i) {
    std::printf("level=%zu max_population=%.6e final_population=%.6e\n", i + 1, summary[i].max_population,
                summary[i].final_population);
  }
  if (s.out) {
    const auto fmt = output_format(s);
    harness::write_file(*s.out, [&](std::ostream& os) {
      if (fmt == harness::Format::csv) {
        harness::write_trace_csv(os, trace);
      } else {
        harness::write_trace_json(os, trace, run_info(r));
      }
    });
  }
  return 0;
}

int sweep(const Settings& s) {
  harness::SweepOptions opts;
  if (s.gates) opts.gates = harness::split_list(*s.gates);
  opts.scheme = evolve::parse_scheme(s.scheme.value_or("sc1"));
  if (opts.scheme == evolve::Scheme::bare) throw UsageError("sweep --scheme must be sc1 or sc2");
  if (!s.omega0_min || !s.omega0_max) throw UsageError("sweep needs --omega0-min and --omega0-max");
  const int points = s.points.value_or(10);
  if (points < 1) throw UsageError("--points must be at least 1");
  if (!(*s.omega0_min > 0.0) || (points > 1 && !(*s.omega0_max > *s.omega0_min)))
    throw UsageError("need 0 < omega0-min < omega0-max");
  opts.omega0 = harness::linspace(*s.omega0_min, *s.omega0_max, points);
  opts.delta_ratio = s.delta_ratio;
  opts.threads = s.threads.value_or(1);

  // Timing and run options come from the first gate's preset plus overrides.
  Settings one = s;
  one.gate = opts.gates.empty() ? std::string("identity") : opts.gates.front();
  one.scheme = std::string(evolve::to_string(opts.scheme));
  one.omega0.reset();
  one.delta_cap.reset();
  const auto r = harness::resolve(one);
  opts.timing = r.preset.cfg;
  opts.psi0 = r.psi0;
  opts.run = r.options;

  const auto result = harness::sweep(opts);
  const auto fmt = output_format(s);
  emit(s, [&](std::ostream& os) {
    if (fmt == harness::Format::csv) {
      harness::write_sweep_csv(os, result);
    } else {
      harness::write_sweep_json(os, result);
    }
  });
  int failed = 0;
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      std::fprintf(stderr, "warning: %s omega0=%s: %s\n", row.gate.c_str(),
                   harness::format_double(row.omega0).c_str(), row.error.c_str());
      ++failed;
    }
  }
  return failed ? 1 : 0;
}

int pulses(const Settings& s) {
  const auto r = harness::resolve(s);
  const int points = r.options.integrator.output_points;
  const auto sched = schedule::sample(r.scheme, r.preset.gate, r.preset.cfg, r.options, points);
  const auto fmt = output_format(s);
  emit(s, [&](std::ostream& os) {
    if (fmt == harness::Format::csv) {
      harness::write_schedule_csv(os, sched);
    } else {
      harness::write_schedule_json(os, sched, run_info(r));
    }
  });
  return 0;
}

int feasibility(const Settings& s) {
  Settings sc2 = s;
  sc2.scheme = "sc2";
  const auto r = harness::resolve(sc2);
  const auto profile = harness::feasibility_profile(r.preset.gate, r.preset.cfg, r.options.sc2,
                                                    r.options.integrator.output_points);
  std::fprintf(s.out ? stdout : stderr, "gate=%s max_residual=%s\n", r.preset.name.c_str(),
               harness::format_double(profile.max_residual()).c_str());
  const auto fmt = output_format(s);
  emit(s, [&](std::ostream& os) {
    if (fmt == harness::Format::csv) {
      harness::write_feasibility_csv(os, profile);
    } else {
      harness::write_feasibility_json(os, profile, run_info(r));
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit rotations by STIRAP with counterdiabatic shortcuts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(harness::kVersion));

  std::string config_path;
  Settings cli;
  app.add_option("--config", config_path, "key = value settings file; flags override it")->check(CLI::ExistingFile);
  app.fallthrough();

  auto* sim = app.add_subcommand("simulate", "Run one scheme and report the gate fidelity");
  sim->add_option("--gate", cli.gate, "identity, pauli-x or hadamard");
  sim->add_option("--scheme", cli.scheme, "bare, sc1 or sc2")->check(CLI::IsMember({"bare", "sc1", "sc2"}));
  sim->add_option("--alpha", cli.alpha, "Initial amplitude on |1>, x or (re,im)");
  sim->add_option("--beta", cli.beta, "Initial amplitude on |2>, x or (re,im)");
  add_common(sim, cli);

  auto* sw = app.add_subcommand("sweep", "Bare vs shortcut fidelity over an amplitude grid");
  sw->add_option("--gates", cli.gates, "Comma separated gate names");
  sw->add_option("--scheme", cli.scheme, "sc1 or sc2")->check(CLI::IsMember({"sc1", "sc2"}));
  sw->add_option("--omega0-min", cli.omega0_min, "Smallest amplitude");
  sw->add_option("--omega0-max", cli.omega0_max, "Largest amplitude");
  sw->add_option("--points", cli.points, "Grid points (default 10)");
  sw->add_option("--threads", cli.threads, "Worker threads");
  sw->add_option("--alpha", cli.alpha, "Initial amplitude on |1>");
  sw->add_option("--beta", cli.beta, "Initial amplitude on |2>");
  add_common(sw, cli);

  auto* pu = app.add_subcommand("pulses", "Export the drive schedule of a scheme");
  pu->add_option("--gate", cli.gate, "identity, pauli-x or hadamard");
  pu->add_option("--scheme", cli.scheme, "bare, sc1 or sc2")->check(CLI::IsMember({"bare", "sc1", "sc2"}));
  add_common(pu, cli);

  auto* fe = app.add_subcommand("feasibility", "Phase residual of the three-pulse synthesis over time");
  fe->add_option("--gate", cli.gate, "identity, pauli-x or hadamard");
  add_common(fe, cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    Settings file;
    if (!config_path.empty()) file = harness::settings_from_config(harness::load_config(config_path));
    const Settings s = harness::merge(file, cli);
    if (sim->parsed()) return simulate(s);
    if (sw->parsed()) return sweep(s);
    if (pu->parsed()) return pulses(s);
    return feasibility(s);
  } catch (const std::invalid_argument& e) {
    // Unknown gates, bad settings and other configuration problems.
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
