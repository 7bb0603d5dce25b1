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

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqrsim/evolve.hpp"
#include "sqrsim/schedule.hpp"

namespace sqrsim::harness {

inline constexpr std::string_view kToolName = "sqrsim";
inline constexpr std::string_view kVersion = "0.1.0";

class UnknownPresetError : public std::invalid_argument {
 public:
  explicit UnknownPresetError(std::string_view name);
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Bad config file contents or settings values.
class SettingsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- presets

struct Preset {
  std::string name;
  sqr::GateSpec gate;
  sqr::PulseConfig cfg;
};

std::vector<std::string> preset_names();

/// Delta / omega0 used when the caller does not say: 100 for sc2, 10 otherwise.
double default_delta_ratio(evolve::Scheme scheme);

/// Gate and pulse parameters of a named preset. For sc2 the amplitude is 500
/// and Delta = 100 omega0; otherwise the preset amplitude with Delta = 10 omega0.
Preset preset(std::string_view name, evolve::Scheme scheme = evolve::Scheme::bare);

// ----------------------------------------------------------------- sweeps

struct SweepRow {
  double omega0 = 0.0;
  std::string gate;
  evolve::Scheme scheme = evolve::Scheme::sc1;  // the shortcut scheme
  std::optional<double> fidelity_bare;
  std::optional<double> fidelity_shortcut;
  std::string error;  // empty unless a run failed
  double norm_drift = 0.0;  // larger of the two runs

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  evolve::Scheme scheme = evolve::Scheme::sc1;
  double delta_ratio = 10.0;
  /// Timing shared by every row; omega0 and delta_cap are per row.
  sqr::PulseConfig timing;
  std::vector<SweepRow> rows;  // gate-major, omega0 increasing within a gate

  bool operator==(const SweepResult& o) const;
};

struct SweepOptions {
  std::vector<std::string> gates{"identity", "pauli-x", "hadamard"};
  evolve::Scheme scheme = evolve::Scheme::sc1;
  std::vector<double> omega0;
  /// Delta = delta_ratio * omega0; default_delta_ratio(scheme) when empty.
  std::optional<double> delta_ratio;
  /// Timing fields (period, offset, sigma, t_min, t_max) used for every row.
  std::optional<sqr::PulseConfig> timing;
  sqr::QubitState psi0;
  evolve::RunOptions run;
  unsigned threads = 1;
};

/// `n` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

/// Runs bare and the shortcut scheme for each (gate, omega0). Each run is
/// independent; a failed run leaves its fidelity empty and fills `error`.
SweepResult sweep(const SweepOptions& opts);

// ------------------------------------------------------------ feasibility

struct FeasibilityProfile {
  std::vector<double> times;
  std::vector<double> residual;
  std::vector<sc2::EffectiveTargets> targets;

  double max_residual() const;
};

FeasibilityProfile feasibility_profile(const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                                       const sc2::Sc2Options& opts, int points);

// ----------------------------------------------------------------- export

enum class Format { csv, json };

Format parse_format(std::string_view name);
/// Format implied by a file extension (.csv or .json).
std::optional<Format> format_from_path(const std::filesystem::path& path);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// What produced a trace; written as JSON metadata.
struct RunInfo {
  sqr::GateSpec gate;
  sqr::PulseConfig cfg;
  sqr::QubitState psi0;
  evolve::RunOptions options;
};

void write_trace_csv(std::ostream& os, const evolve::EvolutionTrace& trace);
void write_trace_json(std::ostream& os, const evolve::EvolutionTrace& trace, const RunInfo& info);
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_sweep_json(std::ostream& os, const SweepResult& sweep);
void write_schedule_csv(std::ostream& os, const schedule::ControlSchedule& s);
void write_schedule_json(std::ostream& os, const schedule::ControlSchedule& s, const RunInfo& info);
void write_feasibility_csv(std::ostream& os, const FeasibilityProfile& p);
void write_feasibility_json(std::ostream& os, const FeasibilityProfile& p, const RunInfo& info);

SweepResult read_sweep_json(std::istream& is);
SweepResult read_sweep_csv(std::istream& is);

/// A parsed CSV file: header plus raw cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const;  // -1 when missing
  double number(std::size_t row, std::string_view col) const;
};

CsvTable read_csv(std::istream& is);

/// Writes via `fill` to `path`, replacing the file only once writing succeeded.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill);

// --------------------------------------------------------------- settings

/// `key = value` lines; '#' starts a comment. Duplicate keys are an error.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(std::istream& is);
ConfigMap load_config(const std::filesystem::path& path);

/// Every knob the CLI understands. Empty fields fall back to preset or
/// library defaults.
struct Settings {
  std::optional<std::string> gate;
  std::optional<std::string> gates;  // comma separated
  std::optional<std::string> scheme;
  std::optional<double> omega0;
  std::optional<double> delta_cap;
  std::optional<double> delta_ratio;
  std::optional<double> period;
  std::optional<double> offset;
  std::optional<double> sigma;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::string> alpha;  // complex, e.g. "0.6" or "(0.6,0.8)"
  std::optional<std::string> beta;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<int> output_points;
  std::optional<double> samples_per_sigma;
  std::optional<bool> direct;
  std::optional<double> eps_deg;
  std::optional<double> omega0_min;
  std::optional<double> omega0_max;
  std::optional<int> points;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

/// Settings named by a config map. Keys use underscores or dashes
/// interchangeably; unknown keys and unparsable values throw SettingsError.
Settings settings_from_config(const ConfigMap& config);

/// Fields set in `over` replace those in `base`.
Settings merge(const Settings& base, const Settings& over);

/// Parses "x" or "(re,im)".
Complex parse_complex(std::string_view text);

/// Resolves gate, pulse config, initial state and run options for one
/// scheme. The scheme and gate must be present.
struct Resolved {
  Preset preset;
  evolve::Scheme scheme = evolve::Scheme::bare;
  sqr::QubitState psi0;
  evolve::RunOptions options;
};

Resolved resolve(const Settings& s);

std::vector<std::string> split_list(std::string_view text);

}  // namespace sqrsim::harness
