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

// lqed: spectra, Landau-Zener sweeps and driven-dissipative runs from a
// key/value config.
//
//   lqed rabi --preset fig5 --set model.kappa_ghz=1e-3 --out rabi.csv
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lqed/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
  std::string out;
};

lqed::Config effective_config(lqed::Command cmd, const Options& o) {
  lqed::Config cfg;
  if (!o.preset.empty()) {
    const lqed::Preset p = lqed::preset(o.preset);
    if (p.command != cmd) {
      throw lqed::ConfigError("preset '" + o.preset + "' belongs to subcommand '" +
                              std::string(lqed::to_string(p.command)) + "'");
    }
    cfg = p.config;
  }
  if (!o.config_path.empty()) cfg.merge(lqed::Config::from_file(o.config_path));
  for (const auto& kv : o.overrides) cfg.apply_override(kv);
  return cfg;
}

std::string variant_path(const std::string& out, const std::string& variant) {
  const std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + "_" + variant + p.extension().string()))
      .string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

int run(lqed::Command cmd, const Options& o) {
  lqed::ExperimentConfig x;
  try {
    x = lqed::resolve(cmd, effective_config(cmd, o));
  } catch (const lqed::ConfigError& e) {
    std::cerr << "lqed: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "lqed: config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string out = !o.out.empty() ? o.out : x.output_path;

  std::vector<lqed::CsvTable> tables;
  try {
    tables = lqed::run_experiment(x);
  } catch (const lqed::ConfigError& e) {
    std::cerr << "lqed: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "lqed: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lqed::IntegrationError& e) {
    std::cerr << "lqed: integration failed: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const lqed::NonFiniteError& e) {
    std::cerr << "lqed: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const lqed::ConvergenceError& e) {
    std::cerr << "lqed: truncation not converged: " << e.what() << "\n";
    return kExitNumeric;
  }

  const bool multi = tables.size() > 1;
  if (out.empty() || out == "-") {
    for (const auto& t : tables) {
      if (multi) std::cout << "# table: " << t.text(0, t.column("variant")) << "\n";
      t.write(std::cout);
    }
    return 0;
  }
  if (multi) {
    for (const auto& t : tables)
      write_file(variant_path(out, t.text(0, t.column("variant"))), t.str());
  } else {
    write_file(out, tables.front().str());
  }
  write_file(out + ".cfg", x.effective.serialize());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lqed: two-qubit ultrastrong-coupling simulations"};
  app.require_subcommand(1);

  Options opts;
  std::string presets;
  for (const auto& n : lqed::preset_names()) presets += (presets.empty() ? "" : ", ") + n;

  const lqed::Command commands[] = {lqed::Command::spectrum_scan, lqed::Command::lz,
                                    lqed::Command::rabi, lqed::Command::interference,
                                    lqed::Command::derived};
  std::vector<std::pair<CLI::App*, lqed::Command>> subs;
  for (lqed::Command c : commands) {
    CLI::App* sub = app.add_subcommand(std::string(lqed::to_string(c)));
    sub->add_option("--config", opts.config_path, "key = value config file");
    sub->add_option("--set", opts.overrides, "override, key=value (repeatable)");
    sub->add_option("--out", opts.out, "output CSV path (default: stdout)");
    sub->add_option("--preset", opts.preset, "built-in config: " + presets);
    subs.emplace_back(sub, c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) {
      try {
        return run(cmd, opts);
      } catch (const std::exception& e) {
        std::cerr << "lqed: " << e.what() << "\n";
        return kExitNumeric;
      }
    }
  }
  return kExitConfig;
}
