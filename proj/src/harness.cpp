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

#include "sqrsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace sqrsim::harness {

using json = nlohmann::json;
using evolve::Scheme;

namespace {

constexpr double kPi = std::numbers::pi;

struct PresetEntry {
  const char* name;
  double omega0;
  double chi;
  double eta;
  double delta;
};

constexpr PresetEntry kPresets[] = {
    {"identity", 250.0, kPi / 8, kPi, 0.0},
    {"pauli-x", 750.0, kPi / 4, kPi, kPi},
    {"hadamard", 350.0, kPi / 8, kPi, kPi},
};

constexpr double kSc2Omega0 = 500.0;

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json gate_json(const sqr::GateSpec& g) {
  return {{"label", g.label}, {"chi", g.chi}, {"eta", g.eta}, {"delta", g.delta}, {"axis", g.axis}};
}

json timing_json(const sqr::PulseConfig& c) {
  return {{"period", c.period}, {"offset", c.offset}, {"sigma", c.sigma}, {"t_min", c.t_min}, {"t_max", c.t_max}};
}

json config_json(const sqr::PulseConfig& c) {
  json j = timing_json(c);
  j["omega0"] = c.omega0;
  j["delta_cap"] = c.delta_cap;
  return j;
}

json info_json(const RunInfo& info) {
  const auto& o = info.options;
  return {{"tool", kToolName},
          {"version", kVersion},
          {"gate", gate_json(info.gate)},
          {"config", config_json(info.cfg)},
          {"psi0",
           {{"alpha", {info.psi0.alpha.real(), info.psi0.alpha.imag()}},
            {"beta", {info.psi0.beta.real(), info.psi0.beta.imag()}}}},
          {"options",
           {{"rtol", o.integrator.rtol},
            {"atol", o.integrator.atol},
            {"output_points", o.integrator.output_points},
            {"direct", o.direct},
            {"samples_per_sigma", o.samples_per_sigma},
            {"max_step_per_sigma", o.max_step_per_sigma},
            {"eps_deg", o.sc2.cd.eps_deg},
            {"r_floor", o.sc2.r_floor},
            {"apply_envelope", o.sc2.apply_envelope}}}};
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  os << join(cells, ",") << '\n';
}

void write_columns_csv(std::ostream& os, const std::vector<std::string>& names,
                       const std::vector<const std::vector<double>*>& cols) {
  write_row(os, names);
  const std::size_t n = cols.empty() ? 0 : cols.front()->size();
  std::vector<std::string> cells(cols.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < cols.size(); ++c) cells[c] = format_double((*cols[c])[k]);
    write_row(os, cells);
  }
}

json columns_json(const std::vector<std::string>& names, const std::vector<const std::vector<double>*>& cols) {
  json data = json::object();
  for (std::size_t c = 0; c < names.size(); ++c) data[names[c]] = *cols[c];
  return data;
}

struct Columns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;

  void add(std::string name, std::vector<double> v) {
    names.push_back(std::move(name));
    values.push_back(std::move(v));
  }
  std::vector<const std::vector<double>*> ptrs() const {
    std::vector<const std::vector<double>*> out;
    for (const auto& v : values) out.push_back(&v);
    return out;
  }
};

Columns trace_columns(const evolve::EvolutionTrace& tr) {
  Columns c;
  const int n = tr.levels();
  c.add("t", tr.times);
  for (int i = 0; i < n; ++i) {
    std::vector<double> p;
    p.reserve(tr.populations.size());
    for (const auto& row : tr.populations) p.push_back(row(i));
    c.add("p" + std::to_string(i + 1), std::move(p));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> re, im;
    for (const auto& s : tr.states) {
      re.push_back(s(i).real());
      im.push_back(s(i).imag());
    }
    c.add("re_psi" + std::to_string(i + 1), std::move(re));
    c.add("im_psi" + std::to_string(i + 1), std::move(im));
  }
  return c;
}

Columns schedule_columns(const schedule::ControlSchedule& s) {
  Columns c;
  c.add("t", s.times);
  for (std::size_t k = 0; k < s.complex_names.size(); ++k) {
    std::vector<double> mag, ph;
    for (const Complex& z : s.complex_channels[k]) {
      mag.push_back(std::abs(z));
      ph.push_back(std::arg(z));
    }
    c.add("mag_" + s.complex_names[k], std::move(mag));
    c.add("ph_" + s.complex_names[k], std::move(ph));
  }
  for (std::size_t k = 0; k < s.real_names.size(); ++k) c.add(s.real_names[k], s.real_channels[k]);
  return c;
}

Columns feasibility_columns(const FeasibilityProfile& p) {
  Columns c;
  c.add("t", p.times);
  c.add("residual", p.residual);
  std::vector<double> v[6];
  for (const auto& tg : p.targets) {
    v[0].push_back(tg.r12);
    v[1].push_back(tg.r13);
    v[2].push_back(tg.r23);
    v[3].push_back(tg.phi12);
    v[4].push_back(tg.phi13);
    v[5].push_back(tg.phi23);
  }
  const char* names[] = {"r12", "r13", "r23", "phi12", "phi13", "phi23"};
  for (int i = 0; i < 6; ++i) c.add(names[i], std::move(v[i]));
  return c;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

}  // namespace

UnknownPresetError::UnknownPresetError(std::string_view name)
    : std::invalid_argument("unknown gate '" + std::string(name) + "' (valid: " + join(preset_names(), ", ") + ")") {}

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

double default_delta_ratio(Scheme scheme) { return scheme == Scheme::sc2 ? 100.0 : 10.0; }

Preset preset(std::string_view name, Scheme scheme) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    Preset out;
    out.name = p.name;
    out.gate = sqr::make_gate(p.chi, p.eta, p.delta, p.name);
    out.cfg.omega0 = scheme == Scheme::sc2 ? kSc2Omega0 : p.omega0;
    out.cfg.delta_cap = default_delta_ratio(scheme) * out.cfg.omega0;
    out.cfg.period = 20.0;
    out.cfg.offset = 1.6;
    out.cfg.sigma = 2.0;
    out.cfg.t_min = -2.0 * out.cfg.period;
    out.cfg.t_max = 0.0;
    return out;
  }
  throw UnknownPresetError(name);
}

// ------------------------------------------------------------------ sweep

bool SweepResult::operator==(const SweepResult& o) const {
  const auto timing_tuple = [](const sqr::PulseConfig& c) {
    return std::tie(c.period, c.offset, c.sigma, c.t_min, c.t_max);
  };
  return scheme == o.scheme && delta_ratio == o.delta_ratio && timing_tuple(timing) == timing_tuple(o.timing) &&
         rows == o.rows;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
  out.back() = hi;
  return out;
}

SweepResult sweep(const SweepOptions& opts) {
  if (opts.gates.empty()) throw std::invalid_argument("sweep needs at least one gate");
  if (opts.omega0.empty()) throw std::invalid_argument("sweep needs a nonempty omega0 grid");
  for (std::size_t k = 0; k < opts.omega0.size(); ++k) {
    if (!(opts.omega0[k] > 0.0) || !std::isfinite(opts.omega0[k]))
      throw std::invalid_argument("omega0 grid values must be positive and finite");
    if (k > 0 && !(opts.omega0[k] > opts.omega0[k - 1]))
      throw std::invalid_argument("omega0 grid must be strictly increasing");
  }
  if (opts.scheme == Scheme::bare) throw std::invalid_argument("sweep compares bare against sc1 or sc2");

  SweepResult res;
  res.scheme = opts.scheme;
  res.delta_ratio = opts.delta_ratio.value_or(default_delta_ratio(opts.scheme));
  if (!(res.delta_ratio > 0.0)) throw std::invalid_argument("delta_ratio must be positive");

  std::vector<Preset> presets;
  for (const auto& g : opts.gates) presets.push_back(preset(g, opts.scheme));
  res.timing = opts.timing.value_or(presets.front().cfg);

  const std::size_t n_omega = opts.omega0.size();
  res.rows.resize(presets.size() * n_omega);
  auto point = [&](std::size_t idx) {
    const Preset& p = presets[idx / n_omega];
    SweepRow& row = res.rows[idx];
    row.gate = p.name;
    row.scheme = opts.scheme;
    row.omega0 = opts.omega0[idx % n_omega];
    sqr::PulseConfig cfg = res.timing;
    cfg.omega0 = row.omega0;
    cfg.delta_cap = res.delta_ratio * row.omega0;
    std::vector<std::string> errors;
    try {
      const auto tr = evolve::run(Scheme::bare, p.gate, cfg, opts.psi0, opts.run);
      row.fidelity_bare = tr.fidelity;
      row.norm_drift = std::max(row.norm_drift, tr.norm_drift);
    } catch (const std::exception& e) {
      errors.emplace_back(e.what());
    }
    try {
      const auto tr = evolve::run(opts.scheme, p.gate, cfg, opts.psi0, opts.run);
      row.fidelity_shortcut = tr.fidelity;
      row.norm_drift = std::max(row.norm_drift, tr.norm_drift);
    } catch (const std::exception& e) {
      errors.emplace_back(e.what());
    }
    row.error = join(errors, "; ");
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(res.rows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < res.rows.size(); ++i) point(i);
    return res;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < res.rows.size(); i = next++) point(i);
    });
  }
  for (auto& t : pool) t.join();
  return res;
}

// ------------------------------------------------------------ feasibility

double FeasibilityProfile::max_residual() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, r);
  return m;
}

FeasibilityProfile feasibility_profile(const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                                       const sc2::Sc2Options& opts, int points) {
  cfg.validate();
  FeasibilityProfile p;
  p.times = schedule::uniform_grid(cfg.t_min, cfg.t_max, points);
  const double floor = opts.r_floor * cfg.omega0 * cfg.omega0;
  for (double t : p.times) {
    const auto tg = sc2::coupling_targets(t, cfg, gate, opts.cd);
    p.targets.push_back(tg);
    p.residual.push_back(sc2::feasibility_residual(tg, floor));
  }
  return p;
}

// ----------------------------------------------------------------- export

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::optional<Format> format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return Format::csv;
  if (ext == ".json") return Format::json;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void write_trace_csv(std::ostream& os, const evolve::EvolutionTrace& trace) {
  const Columns c = trace_columns(trace);
  write_columns_csv(os, c.names, c.ptrs());
}

void write_trace_json(std::ostream& os, const evolve::EvolutionTrace& trace, const RunInfo& info) {
  const Columns c = trace_columns(trace);
  json j = info_json(info);
  j["kind"] = "trace";
  j["scheme"] = evolve::to_string(trace.scheme);
  j["fidelity"] = trace.fidelity;
  j["norm_drift"] = trace.norm_drift;
  j["error_estimate"] = trace.error_estimate;
  j["steps"] = trace.steps;
  j["data"] = columns_json(c.names, c.ptrs());
  os << j.dump(1) << '\n';
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  write_row(os, {"omega0", "gate", "scheme", "fidelity_bare", "fidelity_shortcut"});
  for (const auto& r : sweep.rows) {
    write_row(os, {format_double(r.omega0), r.gate, std::string(evolve::to_string(r.scheme)),
                   r.fidelity_bare ? format_double(*r.fidelity_bare) : "",
                   r.fidelity_shortcut ? format_double(*r.fidelity_shortcut) : ""});
  }
}

void write_sweep_json(std::ostream& os, const SweepResult& sweep) {
  json rows = json::array();
  for (const auto& r : sweep.rows) {
    rows.push_back({{"omega0", r.omega0},
                    {"gate", r.gate},
                    {"scheme", evolve::to_string(r.scheme)},
                    {"fidelity_bare", optional_number(r.fidelity_bare)},
                    {"fidelity_shortcut", optional_number(r.fidelity_shortcut)},
                    {"error", r.error},
                    {"norm_drift", r.norm_drift}});
  }
  json j = {{"tool", kToolName},
            {"version", kVersion},
            {"kind", "sweep"},
            {"scheme", evolve::to_string(sweep.scheme)},
            {"delta_rule", "k*omega0"},
            {"delta_ratio", sweep.delta_ratio},
            {"timing", timing_json(sweep.timing)},
            {"rows", rows}};
  os << j.dump(1) << '\n';
}

void write_schedule_csv(std::ostream& os, const schedule::ControlSchedule& s) {
  const Columns c = schedule_columns(s);
  write_columns_csv(os, c.names, c.ptrs());
}

void write_schedule_json(std::ostream& os, const schedule::ControlSchedule& s, const RunInfo& info) {
  const Columns c = schedule_columns(s);
  json j = info_json(info);
  j["kind"] = "schedule";
  j["scheme"] = evolve::to_string(s.scheme);
  j["data"] = columns_json(c.names, c.ptrs());
  os << j.dump(1) << '\n';
}

void write_feasibility_csv(std::ostream& os, const FeasibilityProfile& p) {
  const Columns c = feasibility_columns(p);
  write_columns_csv(os, c.names, c.ptrs());
}

void write_feasibility_json(std::ostream& os, const FeasibilityProfile& p, const RunInfo& info) {
  const Columns c = feasibility_columns(p);
  json j = info_json(info);
  j["kind"] = "feasibility";
  j["max_residual"] = p.max_residual();
  j["data"] = columns_json(c.names, c.ptrs());
  os << j.dump(1) << '\n';
}

SweepResult read_sweep_json(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw SettingsError(std::string("sweep json: ") + e.what());
  }
  if (j.value("kind", "") != "sweep") throw SettingsError("sweep json: missing kind = sweep");
  try {
    SweepResult r;
    r.scheme = evolve::parse_scheme(j.at("scheme").get<std::string>());
    r.delta_ratio = j.at("delta_ratio").get<double>();
    const auto& t = j.at("timing");
    r.timing.period = t.at("period").get<double>();
    r.timing.offset = t.at("offset").get<double>();
    r.timing.sigma = t.at("sigma").get<double>();
    r.timing.t_min = t.at("t_min").get<double>();
    r.timing.t_max = t.at("t_max").get<double>();
    for (const auto& jr : j.at("rows")) {
      SweepRow row;
      row.omega0 = jr.at("omega0").get<double>();
      row.gate = jr.at("gate").get<std::string>();
      row.scheme = evolve::parse_scheme(jr.at("scheme").get<std::string>());
      if (!jr.at("fidelity_bare").is_null()) row.fidelity_bare = jr["fidelity_bare"].get<double>();
      if (!jr.at("fidelity_shortcut").is_null()) row.fidelity_shortcut = jr["fidelity_shortcut"].get<double>();
      row.error = jr.value("error", "");
      row.norm_drift = jr.value("norm_drift", 0.0);
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const json::exception& e) {
    throw SettingsError(std::string("sweep json: ") + e.what());
  }
}

SweepResult read_sweep_csv(std::istream& is) {
  const CsvTable t = read_csv(is);
  for (const char* col : {"omega0", "gate", "scheme", "fidelity_bare", "fidelity_shortcut"}) {
    if (t.column(col) < 0) throw SettingsError(std::string("sweep csv: missing column ") + col);
  }
  SweepResult r;
  const auto cell = [&](std::size_t k, std::string_view col) -> const std::string& { return t.rows[k][t.column(col)]; };
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    SweepRow row;
    row.omega0 = t.number(k, "omega0");
    row.gate = cell(k, "gate");
    row.scheme = evolve::parse_scheme(cell(k, "scheme"));
    if (!cell(k, "fidelity_bare").empty()) row.fidelity_bare = t.number(k, "fidelity_bare");
    if (!cell(k, "fidelity_shortcut").empty()) row.fidelity_shortcut = t.number(k, "fidelity_shortcut");
    r.rows.push_back(std::move(row));
  }
  if (!r.rows.empty()) {
    r.scheme = r.rows.front().scheme;
    r.delta_ratio = default_delta_ratio(r.scheme);
  }
  return r;
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double CsvTable::number(std::size_t row, std::string_view col) const {
  const int c = column(col);
  if (c < 0) throw SettingsError("csv: missing column " + std::string(col));
  const auto v = parse_double(rows.at(row).at(c));
  if (!v) throw SettingsError("csv: row " + std::to_string(row + 1) + ", column " + std::string(col) + ": not a number");
  return *v;
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw SettingsError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_csv_line(line);
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size()) {
      throw SettingsError("csv: line " + std::to_string(n) + " has " + std::to_string(cells.size()) +
                          " fields, expected " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(path, "cannot open for writing");
    fill(os);
    os.flush();
    if (!os) throw IoError(path, "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(path, "cannot replace file");
  }
}

// --------------------------------------------------------------- settings

ConfigMap parse_config(std::istream& is) {
  ConfigMap out;
  std::string raw;
  int n = 0;
  while (std::getline(is, raw)) {
    ++n;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SettingsError("config line " + std::to_string(n) + ": expected key = value");
    const std::string key = normalize_key(line.substr(0, eq));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw SettingsError("config line " + std::to_string(n) + ": empty key");
    if (!out.emplace(key, value).second) throw SettingsError("config line " + std::to_string(n) + ": duplicate key " + key);
  }
  return out;
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError(path, "cannot open config file");
  try {
    return parse_config(is);
  } catch (const SettingsError& e) {
    throw SettingsError(path.string() + ": " + e.what());
  }
}

Settings settings_from_config(const ConfigMap& config) {
  Settings s;
  for (const auto& [raw_key, value] : config) {
    const std::string key = normalize_key(raw_key);
    const auto number = [&]() {
      const auto v = parse_double(value);
      if (!v) throw SettingsError("config key " + key + ": '" + value + "' is not a number");
      return *v;
    };
    const auto integer = [&]() {
      const double v = number();
      if (v != std::floor(v) || std::abs(v) > 1e9) throw SettingsError("config key " + key + ": expected an integer");
      return static_cast<int>(v);
    };
    if (key == "gate") s.gate = value;
    else if (key == "gates") s.gates = value;
    else if (key == "scheme") s.scheme = value;
    else if (key == "omega0") s.omega0 = number();
    else if (key == "delta_cap") s.delta_cap = number();
    else if (key == "delta_ratio") s.delta_ratio = number();
    else if (key == "delta_rule") {
      // "k*omega0"
      const auto star = value.find('*');
      const auto k = star == std::string::npos ? std::nullopt : parse_double(std::string_view(value).substr(0, star));
      if (!k || trim(std::string_view(value).substr(star + 1)) != "omega0")
        throw SettingsError("config key delta_rule: expected k*omega0");
      s.delta_ratio = *k;
    } else if (key == "period") s.period = number();
    else if (key == "offset") s.offset = number();
    else if (key == "sigma") s.sigma = number();
    else if (key == "t_min") s.t_min = number();
    else if (key == "t_max") s.t_max = number();
    else if (key == "alpha") s.alpha = value;
    else if (key == "beta") s.beta = value;
    else if (key == "rtol") s.rtol = number();
    else if (key == "atol") s.atol = number();
    else if (key == "output_points") s.output_points = integer();
    else if (key == "samples_per_sigma") s.samples_per_sigma = number();
    else if (key == "direct") {
      if (value == "true" || value == "1" || value == "yes") s.direct = true;
      else if (value == "false" || value == "0" || value == "no") s.direct = false;
      else throw SettingsError("config key direct: expected true or false");
    } else if (key == "eps_deg") s.eps_deg = number();
    else if (key == "omega0_min") s.omega0_min = number();
    else if (key == "omega0_max") s.omega0_max = number();
    else if (key == "points") s.points = integer();
    else if (key == "threads") {
      const int t = integer();
      if (t < 1) throw SettingsError("config key threads: must be at least 1");
      s.threads = static_cast<unsigned>(t);
    } else if (key == "out") s.out = value;
    else if (key == "format") s.format = value;
    else throw SettingsError("unknown config key '" + key + "'");
  }
  return s;
}

Settings merge(const Settings& base, const Settings& over) {
  Settings s = base;
  const auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(s.gate, over.gate);
  take(s.gates, over.gates);
  take(s.scheme, over.scheme);
  take(s.omega0, over.omega0);
  take(s.delta_cap, over.delta_cap);
  take(s.delta_ratio, over.delta_ratio);
  take(s.period, over.period);
  take(s.offset, over.offset);
  take(s.sigma, over.sigma);
  take(s.t_min, over.t_min);
  take(s.t_max, over.t_max);
  take(s.alpha, over.alpha);
  take(s.beta, over.beta);
  take(s.rtol, over.rtol);
  take(s.atol, over.atol);
  take(s.output_points, over.output_points);
  take(s.samples_per_sigma, over.samples_per_sigma);
  take(s.direct, over.direct);
  take(s.eps_deg, over.eps_deg);
  take(s.omega0_min, over.omega0_min);
  take(s.omega0_max, over.omega0_max);
  take(s.points, over.points);
  take(s.threads, over.threads);
  take(s.out, over.out);
  take(s.format, over.format);
  return s;
}

Complex parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) throw SettingsError("complex value '" + std::string(text) + "': expected (re,im)");
    const auto re = parse_double(s.substr(0, comma));
    const auto im = parse_double(s.substr(comma + 1));
    if (!re || !im) throw SettingsError("complex value '" + std::string(text) + "': not a number");
    return {*re, *im};
  }
  const auto re = parse_double(s);
  if (!re) throw SettingsError("complex value '" + std::string(text) + "': not a number");
  return {*re, 0.0};
}

Resolved resolve(const Settings& s) {
  Resolved r;
  r.scheme = evolve::parse_scheme(s.scheme.value_or("bare"));
  if (!s.gate) throw SettingsError("no gate given");
  r.preset = preset(*s.gate, r.scheme);
  auto& cfg = r.preset.cfg;
  if (s.omega0) cfg.omega0 = *s.omega0;
  if (s.delta_cap) {
    cfg.delta_cap = *s.delta_cap;
  } else {
    cfg.delta_cap = s.delta_ratio.value_or(default_delta_ratio(r.scheme)) * cfg.omega0;
  }
  if (s.period) cfg.period = *s.period;
  if (s.offset) cfg.offset = *s.offset;
  if (s.sigma) cfg.sigma = *s.sigma;
  if (s.t_min) cfg.t_min = *s.t_min;
  if (s.t_max) cfg.t_max = *s.t_max;
  cfg.validate();

  if (s.alpha || s.beta) {
    const Complex a = s.alpha ? parse_complex(*s.alpha) : Complex{0.0, 0.0};
    const Complex b = s.beta ? parse_complex(*s.beta) : Complex{0.0, 0.0};
    r.psi0 = sqr::QubitState::make(a, b);
  }

  auto& o = r.options;
  if (s.rtol) o.integrator.rtol = *s.rtol;
  if (s.atol) o.integrator.atol = *s.atol;
  if (s.output_points) o.integrator.output_points = *s.output_points;
  if (s.samples_per_sigma) o.samples_per_sigma = *s.samples_per_sigma;
  if (s.direct) o.direct = *s.direct;
  if (s.eps_deg) o.sc2.cd.eps_deg = *s.eps_deg;
  try {
    o.sc2.cd.validate();
  } catch (const cd::CdError& e) {
    throw SettingsError(e.what());
  }
  return r;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& part : split_csv_line(text)) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace sqrsim::harness
