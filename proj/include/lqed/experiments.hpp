// Copyright 2026 The lqed Authors
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

// Experiment runner behind the lqed command line: presets, schema checks,
// and CSV-producing runners for each subcommand.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqed/config.hpp"
#include "lqed/csv.hpp"
#include "lqed/dynamics.hpp"
#include "lqed/model.hpp"
#include "lqed/spectra.hpp"

namespace lqed {

enum class Command { spectrum_scan, lz, rabi, interference, derived };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::spectrum_scan:
      return "spectrum-scan";
    case Command::lz:
      return "lz";
    case Command::rabi:
      return "rabi";
    case Command::interference:
      return "interference";
    case Command::derived:
      return "derived";
  }
  return "?";
}

inline Command parse_command(std::string_view s) {
  for (Command c : {Command::spectrum_scan, Command::lz, Command::rabi,
                    Command::interference, Command::derived}) {
    if (s == to_string(c)) return c;
  }
  throw ConfigError("unknown subcommand '" + std::string(s) + "'");
}

/// Thrown when a Rabi run fails the Fock-truncation convergence rule.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive start:stop:step grid.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n + 1));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

/// 0, dt, 2 dt, ..., t_end (t_end appended when it is off the lattice).
inline std::vector<double> time_grid(double t_end, double dt) {
  std::vector<double> t{0.0};
  if (t_end <= 0.0) return t;
  const long n = static_cast<long>(std::floor(t_end / dt + 1e-9));
  for (long i = 1; i <= n; ++i) t.push_back(static_cast<double>(i) * dt);
  if (t.back() < t_end - 1e-9 * std::max(1.0, t_end)) t.push_back(t_end);
  return t;
}

struct ExperimentConfig {
  Command command = Command::derived;
  ModelParams model;
  std::optional<DrivePulse> pulse;
  std::optional<SweepSpec> sweep;
  int sweep_samples = 0;
  std::optional<GridSpec> delta1_grid;
  std::vector<AblationVariant> variants;
  int k = 6;
  std::optional<GridSpec> ratio_grid;
  std::pair<double, double> bracket{3.8, 4.2};
  double t_end = 0.0;
  double dt = 1.0;
  std::string init_state;
  IntegratorOptions integrator;
  bool fock_check = false;
  std::string output_path;
  Config effective;
};

namespace detail {

struct ModelKey {
  const char* key;
  double ModelParams::*field;
};

inline constexpr ModelKey kModelKeys[] = {
    {"model.omega_ghz", &ModelParams::omega},
    {"model.delta1_ghz", &ModelParams::delta1},
    {"model.delta2_ghz", &ModelParams::delta2},
    {"model.g1_ghz", &ModelParams::g1},
    {"model.g2_ghz", &ModelParams::g2},
    {"model.j_ghz", &ModelParams::J},
    {"model.chi3_ghz", &ModelParams::chi3},
    {"model.kappa_ghz", &ModelParams::kappa},
    {"model.gamma1_ghz", &ModelParams::gamma1},
    {"model.gamma2_ghz", &ModelParams::gamma2},
};

struct Schema {
  std::set<std::string> required;
  std::set<std::string> optional;
};

inline Schema schema_for(Command c) {
  const std::set<std::string> integ = {"integrator.rtol", "integrator.atol",
                                       "integrator.max_steps"};
  Schema s;
  s.optional.insert("output.path");
  switch (c) {
    case Command::spectrum_scan:
      s.required = {"model.omega_ghz", "model.delta2_ghz", "model.g1_ghz",
                    "model.g2_ghz",    "model.j_ghz",      "model.n_max",
                    "scan.delta1_start_ghz", "scan.delta1_stop_ghz",
                    "scan.delta1_step_ghz"};
      s.optional.insert({"model.chi3_ghz", "scan.k", "scan.variants"});
      break;
    case Command::lz:
      s.required = {"model.omega_ghz",   "model.delta2_ghz", "model.g1_ghz",
                    "model.g2_ghz",      "model.j_ghz",      "model.n_max",
                    "sweep.delta1_0_ghz", "sweep.v_ghz2",    "sweep.samples"};
      s.optional.insert({"model.chi3_ghz", "sweep.t_end_ns",
                         "sweep.delta1_end_ghz", "init.state"});
      s.optional.insert(integ.begin(), integ.end());
      break;
    case Command::rabi:
      s.required = {"model.omega_ghz", "model.delta1_ghz", "model.delta2_ghz",
                    "model.g1_ghz",    "model.g2_ghz",     "model.j_ghz",
                    "model.n_max",     "pulse.enabled",    "time.t_end_ns",
                    "time.dt_ns"};
      s.optional.insert({"model.chi3_ghz", "model.kappa_ghz",
                         "model.gamma1_ghz", "model.gamma2_ghz",
                         "pulse.peak_ghz", "pulse.area", "pulse.t0_ns",
                         "pulse.tau_ns", "pulse.omega_d_ghz", "init.state",
                         "convergence.fock_check"});
      s.optional.insert(integ.begin(), integ.end());
      break;
    case Command::interference:
      s.required = {"model.omega_ghz",  "model.delta2_ghz", "model.g1_ghz",
                    "model.j_ghz",      "model.n_max",      "scan.ratio_start",
                    "scan.ratio_stop",  "scan.ratio_step"};
      s.optional.insert({"model.chi3_ghz", "scan.delta1_lo_ghz",
                         "scan.delta1_hi_ghz"});
      break;
    case Command::derived:
      s.required = {"model.omega_ghz", "model.g1_ghz", "model.g2_ghz",
                    "model.j_ghz"};
      for (const auto& mk : kModelKeys) s.optional.insert(mk.key);
      s.optional.insert({"model.n_max", "sweep.v_ghz2"});
      break;
  }
  return s;
}

inline void check_schema(Command c, const Config& cfg) {
  const Schema s = schema_for(c);
  for (const auto& [k, v] : cfg.entries()) {
    if (!s.required.count(k) && !s.optional.count(k)) {
      throw ConfigError("field '" + k + "' is not accepted by subcommand '" +
                        std::string(to_string(c)) + "'");
    }
  }
  for (const auto& k : s.required) {
    if (!cfg.has(k)) {
      throw ConfigError("missing required field '" + k + "' for subcommand '" +
                        std::string(to_string(c)) + "'");
    }
  }
}

inline ModelParams read_model(const Config& cfg) {
  ModelParams p;
  // Fields absent from the config are inert for the chosen subcommand; zero
  // the loss and Kerr defaults so nothing leaks in unseen.
  p.chi3 = p.kappa = p.gamma1 = p.gamma2 = 0.0;
  for (const auto& mk : kModelKeys) {
    if (cfg.has(mk.key)) p.*(mk.field) = cfg.get_double(mk.key);
  }
  if (cfg.has("model.n_max")) {
    const long n = cfg.get_int("model.n_max");
    if (n < 1 || n > 9) {
      throw ConfigError("field 'model.n_max' must be in [1, 9], got " +
                        std::to_string(n));
    }
    p.n_max = static_cast<int>(n);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

inline GridSpec read_grid(const Config& cfg, const std::string& start,
                          const std::string& stop, const std::string& step) {
  GridSpec g{cfg.get_double(start), cfg.get_double(stop), cfg.get_double(step)};
  if (!(g.step > 0.0)) throw ConfigError("field '" + step + "' must be > 0");
  if (g.stop < g.start) {
    throw ConfigError("field '" + stop + "' must be >= '" + start + "'");
  }
  return g;
}

inline IntegratorOptions read_integrator(const Config& cfg) {
  IntegratorOptions o;
  o.rtol = cfg.get_double("integrator.rtol", o.rtol);
  o.atol = cfg.get_double("integrator.atol", o.atol);
  if (cfg.has("integrator.max_steps")) o.max_steps = cfg.get_int("integrator.max_steps");
  if (!(o.rtol > 0.0) || !(o.atol >= 0.0)) {
    throw ConfigError("integrator tolerances must be positive");
  }
  return o;
}

inline std::vector<AblationVariant> read_variants(const std::string& list) {
  std::vector<AblationVariant> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto name = std::string(trim(item));
    try {
      out.push_back(parse_variant(name));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("field 'scan.variants': " + std::string(e.what()));
    }
  }
  if (out.empty()) throw ConfigError("field 'scan.variants' is empty");
  return out;
}

inline const std::set<std::string>& initial_state_names() {
  static const std::set<std::string> names = {"ground", "bare_0gg", "bare_1gg",
                                              "bare_0ee"};
  return names;
}

}  // namespace detail

/// "ground" is the lowest eigenstate of build_static(p); the bare_* labels
/// are Fock/qubit product states.
inline StateVector initial_state(const ModelParams& p, const std::string& name) {
  const HilbertSpace s = p.space();
  if (name == "ground") return dressed_ground_state(p);
  if (name == "bare_0gg") return basis_state(s, 0, Level::g, Level::g);
  if (name == "bare_1gg") return basis_state(s, 1, Level::g, Level::g);
  if (name == "bare_0ee") return basis_state(s, 0, Level::e, Level::e);
  throw ConfigError("field 'init.state': unknown state '" + name +
                    "' (ground, bare_0gg, bare_1gg, bare_0ee)");
}

/// Validates `cfg` against the subcommand's schema and parses it.
inline ExperimentConfig resolve(Command c, const Config& cfg) {
  detail::check_schema(c, cfg);
  ExperimentConfig x;
  x.command = c;
  x.effective = cfg;
  x.model = detail::read_model(cfg);
  if (cfg.has("output.path")) x.output_path = cfg.get("output.path");

  switch (c) {
    case Command::spectrum_scan: {
      x.delta1_grid = detail::read_grid(cfg, "scan.delta1_start_ghz",
                                        "scan.delta1_stop_ghz",
                                        "scan.delta1_step_ghz");
      if (!(x.delta1_grid->start > 0.0)) {
        throw ConfigError("field 'scan.delta1_start_ghz' must be > 0");
      }
      x.k = cfg.has("scan.k") ? static_cast<int>(cfg.get_int("scan.k")) : 6;
      if (x.k < 1 || x.k > x.model.space().dim()) {
        throw ConfigError("field 'scan.k' = " + std::to_string(x.k) +
                          " outside [1, dim = " +
                          std::to_string(x.model.space().dim()) + "]");
      }
      x.variants = detail::read_variants(
          cfg.has("scan.variants") ? cfg.get("scan.variants") : "full");
      break;
    }
    case Command::lz: {
      SweepSpec sw;
      sw.delta1_0 = cfg.get_double("sweep.delta1_0_ghz");
      sw.v = cfg.get_double("sweep.v_ghz2");
      if (!(sw.v > 0.0)) throw ConfigError("field 'sweep.v_ghz2' must be > 0");
      const bool by_time = cfg.has("sweep.t_end_ns");
      const bool by_end = cfg.has("sweep.delta1_end_ghz");
      if (by_time == by_end) {
        throw ConfigError(
            "exactly one of 'sweep.t_end_ns' and 'sweep.delta1_end_ghz' is "
            "required");
      }
      sw.t_end = by_time ? cfg.get_double("sweep.t_end_ns")
                         : (cfg.get_double("sweep.delta1_end_ghz") - sw.delta1_0) / sw.v;
      try {
        sw.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      x.sweep = sw;
      const long n = cfg.get_int("sweep.samples");
      if (n < 1) throw ConfigError("field 'sweep.samples' must be >= 1");
      x.sweep_samples = static_cast<int>(n);
      x.init_state = cfg.has("init.state") ? cfg.get("init.state") : "bare_1gg";
      x.integrator = detail::read_integrator(cfg);
      break;
    }
    case Command::rabi: {
      if (cfg.get_bool("pulse.enabled")) {
        const bool has_peak = cfg.has("pulse.peak_ghz");
        if (has_peak == cfg.has("pulse.area")) {
          throw ConfigError(
              "exactly one of 'pulse.peak_ghz' and 'pulse.area' is required");
        }
        const double t0 = cfg.get_double("pulse.t0_ns");
        const double tau = cfg.get_double("pulse.tau_ns");
        if (!(tau > 0.0)) throw ConfigError("field 'pulse.tau_ns' must be > 0");
        const double wd = cfg.get_double("pulse.omega_d_ghz", x.model.omega);
        x.pulse = has_peak ? DrivePulse::from_peak(cfg.get_double("pulse.peak_ghz"),
                                                   t0, tau, wd)
                           : DrivePulse{cfg.get_double("pulse.area"), t0, tau, wd};
      }
      x.t_end = cfg.get_double("time.t_end_ns");
      x.dt = cfg.get_double("time.dt_ns");
      if (x.t_end < 0.0) throw ConfigError("field 'time.t_end_ns' must be >= 0");
      if (!(x.dt > 0.0)) throw ConfigError("field 'time.dt_ns' must be > 0");
      x.init_state = cfg.has("init.state") ? cfg.get("init.state") : "ground";
      x.integrator = detail::read_integrator(cfg);
      x.fock_check = cfg.get_bool("convergence.fock_check", false);
      break;
    }
    case Command::interference: {
      x.ratio_grid = detail::read_grid(cfg, "scan.ratio_start", "scan.ratio_stop",
                                       "scan.ratio_step");
      if (x.model.g1 == 0.0) {
        throw ConfigError("field 'model.g1_ghz' must be nonzero for interference");
      }
      x.bracket = {cfg.get_double("scan.delta1_lo_ghz", 3.8),
                   cfg.get_double("scan.delta1_hi_ghz", 4.2)};
      if (!(x.bracket.first > 0.0) || !(x.bracket.first < x.bracket.second)) {
        throw ConfigError("fields 'scan.delta1_lo_ghz' < 'scan.delta1_hi_ghz' "
                          "must bracket a positive range");
      }
      break;
    }
    case Command::derived:
      if (cfg.has("sweep.v_ghz2")) {
        SweepSpec sw;
        sw.v = cfg.get_double("sweep.v_ghz2");
        if (!(sw.v > 0.0)) throw ConfigError("field 'sweep.v_ghz2' must be > 0");
        x.sweep = sw;
      }
      break;
  }
  if (!x.init_state.empty() && !detail::initial_state_names().count(x.init_state)) {
    initial_state(x.model, x.init_state);  // throws with the list of names
  }
  return x;
}

struct Preset {
  Command command;
  Config config;
};

inline std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "fig5", "fig6a", "fig6b", "derived"};
}

inline Preset preset(std::string_view name) {
  auto model = [](bool with_delta1) {
    std::string s =
        "model.omega_ghz = 8\n"
        "model.delta2_ghz = 4\n"
        "model.g1_ghz = 0.2\n"
        "model.g2_ghz = 0.2\n"
        "model.j_ghz = 0.1\n"
        "model.n_max = 5\n";
    if (with_delta1) s += "model.delta1_ghz = 4\n";
    return s;
  };
  const std::string rabi =
      model(true) +
      "model.chi3_ghz = 0.12\n"
      "model.kappa_ghz = 0.0004\n"
      "model.gamma1_ghz = 0.0002\n"
      "model.gamma2_ghz = 0.0002\n"
      "pulse.enabled = true\n"
      "pulse.peak_ghz = 0.05\n"
      "pulse.t0_ns = 0\n"
      "pulse.tau_ns = 20\n"
      "pulse.omega_d_ghz = 8\n"
      "time.t_end_ns = 500\n"
      "time.dt_ns = 1\n"
      "init.state = ground\n"
      "integrator.rtol = 1e-8\n"
      "integrator.atol = 1e-10\n"
      "convergence.fock_check = true\n";

  if (name == "fig2") {
    return {Command::spectrum_scan,
            Config::parse(model(false) +
                              "scan.delta1_start_ghz = 3.8\n"
                              "scan.delta1_stop_ghz = 4.2\n"
                              "scan.delta1_step_ghz = 0.002\n"
                              "scan.k = 6\n"
                              "scan.variants = full,drop_HCR,drop_HR\n",
                          "preset fig2")};
  }
  if (name == "fig4") {
    return {Command::lz, Config::parse(model(false) +
                                           "sweep.delta1_0_ghz = 3.84\n"
                                           "sweep.delta1_end_ghz = 4.16\n"
                                           "sweep.v_ghz2 = 6e-5\n"
                                           "sweep.samples = 400\n"
                                           "init.state = bare_1gg\n"
                                           "integrator.rtol = 1e-8\n"
                                           "integrator.atol = 1e-10\n",
                                       "preset fig4")};
  }
  if (name == "fig5") return {Command::rabi, Config::parse(rabi, "preset fig5")};
  if (name == "fig6b") {
    Config c = Config::parse(rabi, "preset fig6b");
    c.set("model.g2_ghz", "-0.2");
    return {Command::rabi, c};
  }
  if (name == "fig6a") {
    std::string m = model(false);
    m.erase(m.find("model.g2_ghz"), std::string("model.g2_ghz = 0.2\n").size());
    return {Command::interference, Config::parse(m +
                                                     "scan.ratio_start = -1.5\n"
                                                     "scan.ratio_stop = 1.5\n"
                                                     "scan.ratio_step = 0.05\n"
                                                     "scan.delta1_lo_ghz = 3.8\n"
                                                     "scan.delta1_hi_ghz = 4.2\n",
                                                 "preset fig6a")};
  }
  if (name == "derived") {
    return {Command::derived,
            Config::parse(model(true) + "sweep.v_ghz2 = 6e-5\n", "preset derived")};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

namespace detail {

inline void stamp(CsvTable& t, const ExperimentConfig& x, const std::string& units) {
  t.add_comment("lqed " + std::string(to_string(x.command)));
  t.add_comment("units: " + units);
  t.add_comment("config_hash: fnv1a64:" + x.effective.hash_hex());
}

}  // namespace detail

inline std::vector<CsvTable> run_spectrum_scan(const ExperimentConfig& x) {
  if (!x.delta1_grid) throw ConfigError("missing required field 'scan.delta1_start_ghz'");
  const std::vector<double> grid = x.delta1_grid->values();
  std::vector<CsvTable> tables;
  for (AblationVariant v : x.variants) {
    std::vector<std::string> header{"delta1_GHz"};
    for (int i = 0; i < x.k; ++i) header.push_back("E" + std::to_string(i) + "_GHz");
    for (const char* h : {"gap_GHz", "P1", "P2", "P1_primed", "P2_primed",
                          "Ps_plus", "Ps_minus", "variant"})
      header.emplace_back(h);
    CsvTable t(std::move(header));
    detail::stamp(t, x,
                  "delta1_GHz, E*_GHz, gap_GHz in GHz (angular, hbar = 1); "
                  "P* dimensionless; eigenstates indexed from 0 (ground)");
    for (const SpectrumScanPoint& pt : scan_delta1(x.model, grid, v, x.k)) {
      std::vector<CsvTable::Cell> row{pt.delta1};
      for (double e : pt.energies) row.emplace_back(e);
      for (double d : {pt.gap, pt.probs.P1, pt.probs.P2, pt.probs.P1_primed,
                       pt.probs.P2_primed, pt.probs.Ps_plus, pt.probs.Ps_minus})
        row.emplace_back(d);
      row.emplace_back(std::string(to_string(v)));
      t.add_row(row);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

inline CsvTable run_lz(const ExperimentConfig& x) {
  if (!x.sweep) throw ConfigError("missing required field 'sweep.v_ghz2'");
  const SweepSpec& sw = *x.sweep;
  std::vector<double> times{0.0};
  if (sw.t_end > 0.0) {
    for (int i = 1; i <= x.sweep_samples; ++i)
      times.push_back(sw.t_end * static_cast<double>(i) / x.sweep_samples);
  }
  const LzTrace tr = lz_sweep(x.model, sw, initial_state(x.model, x.init_state),
                              times, x.integrator);
  CsvTable t({"t_ns", "P_1gg", "P_0ee", "delta1_GHz"});
  detail::stamp(t, x, "t_ns in ns; delta1_GHz in GHz; P_* bare-state populations");
  for (size_t i = 0; i < tr.times.size(); ++i)
    t.add_row({tr.times[i], tr.P_1gg[i], tr.P_0ee[i], tr.delta1[i]});
  return t;
}

struct TruncationCheck {
  double d_gq2;
  double d_photon;
};

inline double series_max(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}

/// Repeats a Lindblad run at n_max + extra and reports the change in the
/// maxima of gq2 and photon number.
inline TruncationCheck truncation_check(const ModelParams& p,
                                        const std::optional<DrivePulse>& pulse,
                                        const std::string& init,
                                        const std::vector<double>& times,
                                        const IntegratorOptions& opt,
                                        const ObservableTrace& base,
                                        int extra = 2) {
  ModelParams big = p;
  big.n_max += extra;
  const ObservableTrace tr = lindblad_evolve(
      big, pulse, DensityMatrix::pure(initial_state(big, init)), times, opt);
  return {std::abs(series_max(tr.gq2) - series_max(base.gq2)),
          std::abs(series_max(tr.photon_number) - series_max(base.photon_number))};
}

inline CsvTable run_rabi(const ExperimentConfig& x) {
  const std::vector<double> times = time_grid(x.t_end, x.dt);
  const DensityMatrix rho0 = DensityMatrix::pure(initial_state(x.model, x.init_state));
  const ObservableTrace tr = lindblad_evolve(x.model, x.pulse, rho0, times, x.integrator);

  CsvTable t({"t_ns", "photon_number", "gq2", "flux", "P_0gg", "P_1gg", "P_0ee",
              "trace_error"});
  detail::stamp(t, x,
                "t_ns in ns; flux = kappa*<X-X+> in 1/ns; photon_number, gq2, "
                "P_* and trace_error dimensionless");
  if (x.fock_check) {
    const TruncationCheck c =
        truncation_check(x.model, x.pulse, x.init_state, times, x.integrator, tr);
    std::ostringstream os;
    os << "fock_check: n_max " << x.model.n_max << " -> " << x.model.n_max + 2
       << ", |d max gq2| = " << format_number(c.d_gq2)
       << ", |d max photon_number| = " << format_number(c.d_photon);
    if (!(c.d_gq2 < 1e-4) || !(c.d_photon < 1e-4)) {
      throw ConvergenceError(os.str() + " (limit 1e-4)");
    }
    t.add_comment(os.str());
  }
  for (size_t i = 0; i < tr.times.size(); ++i) {
    t.add_row({tr.times[i], tr.photon_number[i], tr.gq2[i], tr.flux[i], tr.P_0gg[i],
               tr.P_1gg[i], tr.P_0ee[i], tr.trace_error[i]});
  }
  return t;
}

inline CsvTable run_interference(const ExperimentConfig& x) {
  if (!x.ratio_grid) throw ConfigError("missing required field 'scan.ratio_start'");
  const auto pts = interference_scan(x.model, x.ratio_grid->values(), x.bracket);
  CsvTable t({"ratio", "delta1_star_GHz", "gap_GHz"});
  detail::stamp(t, x, "ratio = g2/g1 dimensionless; delta1_star_GHz, gap_GHz in GHz");
  for (const auto& p : pts) t.add_row({p.ratio, p.delta1_star, p.gap});
  return t;
}

inline CsvTable run_derived(const ExperimentConfig& x) {
  const DerivedQuantities d = derived(x.model);
  std::vector<std::string> header{"beta1", "beta2", "chi_GHz", "Gs_GHz",
                                  "half_rabi_time_ns"};
  std::vector<CsvTable::Cell> row{d.beta1, d.beta2, d.chi, d.Gs,
                                  std::numbers::pi / (2.0 * d.Gs)};
  if (x.sweep) {
    header.emplace_back("adiabaticity");
    row.emplace_back(2.0 * std::numbers::pi * d.Gs * d.Gs / x.sweep->v);
  }
  CsvTable t(std::move(header));
  detail::stamp(t, x,
                "beta*, adiabaticity dimensionless; chi_GHz, Gs_GHz in GHz; "
                "half_rabi_time_ns = pi/(2 Gs) in ns");
  t.add_row(row);
  return t;
}

inline std::vector<CsvTable> run_experiment(const ExperimentConfig& x) {
  switch (x.command) {
    case Command::spectrum_scan:
      return run_spectrum_scan(x);
    case Command::lz:
      return {run_lz(x)};
    case Command::rabi:
      return {run_rabi(x)};
    case Command::interference:
      return {run_interference(x)};
    case Command::derived:
      return {run_derived(x)};
  }
  return {};
}

}  // namespace lqed
