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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Lines tagged INFO are diagnostics and never fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "lqed/experiments.hpp"

using namespace lqed;

namespace {

int g_failures = 0;

void report(const char* id, bool ok, const std::string& what) {
  std::printf("%s criterion %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void info(const std::string& what) {
  std::printf("INFO %s\n", what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Physicality bookkeeping across every dynamical run (criterion 8).
struct Physicality {
  double trace = 0.0, herm = 0.0, min_eig = 0.0, norm_drift = 0.0;

  void add(const ObservableTrace& tr) {
    for (size_t i = 0; i < tr.times.size(); ++i) {
      trace = std::max(trace, tr.trace_error[i]);
      herm = std::max(herm, tr.hermiticity_error[i]);
      min_eig = std::min(min_eig, tr.min_eigenvalue[i]);
    }
  }
  void add(const LzTrace& tr) {
    for (double e : tr.norm_error) norm_drift = std::max(norm_drift, e);
  }
  void add(const std::vector<StateVector>& kets) {
    for (const auto& k : kets) norm_drift = std::max(norm_drift, std::abs(k.norm() - 1.0));
  }
} g_phys;

// Paper parameters: omega = 2 Delta2 = 8, g1 = g2 = 0.2, J = 0.1 (GHz).
constexpr double kOmega = 8.0, kG = 0.2, kJ = 0.1;
// Independent arithmetic for the effective pair coupling 2 J (g1 + g2) / omega.
constexpr double kGsOracle = 2.0 * kJ * (kG + kG) / kOmega;

size_t argmax(const std::vector<double>& v, size_t lo, size_t hi) {
  return static_cast<size_t>(std::max_element(v.begin() + lo, v.begin() + hi) - v.begin());
}
size_t argmin(const std::vector<double>& v, size_t lo, size_t hi) {
  return static_cast<size_t>(std::min_element(v.begin() + lo, v.begin() + hi) - v.begin());
}

void criterion1_2() {
  const ModelParams p;
  const std::vector<double> grid = GridSpec{3.8, 4.2, 0.002}.values();
  Stopwatch sw;
  const auto full = scan_delta1(p, grid, AblationVariant::full);
  const double t_scan = sw.seconds();
  const auto best = std::min_element(full.begin(), full.end(),
                                     [](auto& a, auto& b) { return a.gap < b.gap; });
  const double want_gap = 2.0 * kGsOracle;
  report("1", std::abs(best->delta1 - 4.0) <= 0.01 &&
                  std::abs(best->gap - want_gap) <= 0.1 * want_gap && t_scan < 10.0,
         fmt("full-H scan (%zu points) min gap %.5f GHz at delta1 = %.3f GHz "
             "(want 4.00 +- 0.01, gap %.3f +- 10%%); %.2f s (< 10 s)",
             grid.size(), best->gap, best->delta1, want_gap, t_scan));

  ModelParams res = p;
  res.delta1 = 4.0;
  const double hcr_gap = pair_gap(res, AblationVariant::drop_hcr);
  const auto no_hr = scan_delta1(p, grid, AblationVariant::drop_hr);
  double worst = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 3.9 - 1e-9 || grid[i] > 4.1 + 1e-9) continue;
    worst = std::max(worst, std::abs(no_hr[i].gap / full[i].gap - 1.0));
  }
  report("2", hcr_gap <= 0.002 && worst <= 0.05,
         fmt("drop_HCR gap at delta1 = 4 GHz is %.3g GHz (<= 0.002); drop_HR vs full "
             "max relative gap deviation on [3.9, 4.1] is %.3g (<= 0.05)",
             hcr_gap, worst));
}

void criterion3() {
  auto probs_at = [](double d1) {
    ModelParams q;
    q.delta1 = d1;
    return overlap_probabilities(eigh(build_static(q)), q.space());
  };
  const OverlapProbabilities lo = probs_at(3.9);
  const OverlapProbabilities hi = probs_at(4.1);
  const OverlapProbabilities mid = probs_at(4.0);
  report("3a", lo.P1_primed >= 0.9,
         fmt("|<1,g,g|psi_3>|^2 at delta1 = 3.9 GHz is %.4f (>= 0.9)", lo.P1_primed));
  info(fmt("criterion 3a mirror: |<0,e,e|psi_3>|^2 at 3.9 GHz = %.4f, "
           "|<1,g,g|psi_4>|^2 = %.4f",
           lo.P2_primed, lo.P2));
  report("3b", hi.P1 >= 0.9,
         fmt("P1 = |<0,e,e|psi_4>|^2 at delta1 = 4.1 GHz is %.4f (>= 0.9)", hi.P1));
  report("3c", mid.Ps_plus >= 0.9 && mid.Ps_minus >= 0.9,
         fmt("at delta1 = 4.0 GHz Ps+ = %.4f, Ps- = %.4f (both >= 0.9)", mid.Ps_plus,
             mid.Ps_minus));
}

void criterion4() {
  const ModelParams p;
  const HilbertSpace s = p.space();
  std::vector<double> times;
  for (int i = 0; i <= 400; ++i) times.push_back(i);
  const StateVector psi0 = basis_state(s, 1, Level::g, Level::g);
  const auto kets = schrodinger_evolve(build_static(p), psi0, times);
  g_phys.add(kets);
  const int iee = s.index(0, Level::e, Level::e);
  std::vector<double> pee;
  for (const auto& k : kets) pee.push_back(std::norm(k[iee]));
  // First Rabi maximum: the running peak once the signal has dropped 0.1 below
  // it. Small fast wiggles from the counter-rotating terms do not qualify.
  size_t k = 0;
  for (size_t i = 1; i < pee.size() && pee[i] > pee[k] - 0.1; ++i)
    if (pee[i] > pee[k]) k = i;
  // Two-level model H = Gs (|0ee><1gg| + h.c.): P_0ee = sin^2(Gs t), first
  // maximum at pi / (2 Gs).
  const double t_oracle = std::numbers::pi / (2.0 * kGsOracle);
  report("4", pee[k] >= 0.9 && std::abs(times[k] - t_oracle) <= 0.15 * t_oracle,
         fmt("first P_0ee maximum %.4f (>= 0.9) at t = %.0f ns (two-level oracle "
             "%.1f ns +- 15%%)",
             pee[k], times[k], t_oracle));
}

// Sweep centred on the crossing at 4.0 GHz. The half-width never drops below
// the 0.16 GHz preset window and grows as 10 sqrt(v) so fast sweeps start and
// end far enough from the crossing for the asymptotic formula to apply.
LzTrace lz_centred(const ModelParams& p, double v) {
  const double w = std::max(0.16, 10.0 * std::sqrt(v));
  SweepSpec sw;
  sw.delta1_0 = 4.0 - w;
  sw.v = v;
  sw.t_end = 2.0 * w / v;
  const std::vector<double> times{0.0, sw.t_end};
  LzTrace tr = lz_sweep(p, sw, basis_state(p.space(), 1, Level::g, Level::g), times);
  g_phys.add(tr);
  return tr;
}

void criterion5() {
  const ModelParams p;
  Stopwatch sw;
  double p0ee = -1.0;
  double worst = 0.0;
  std::string detail;
  for (double v : {6e-6, 6e-5, 6e-4, 6e-3}) {
    const LzTrace tr = lz_centred(p, v);
    // At v = 6e-5 the window is exactly 3.84 -> 4.16 GHz.
    if (v == 6e-5) p0ee = tr.P_0ee.back();
    const double numeric = tr.P_1gg.back();
    const double formula = std::exp(-2.0 * std::numbers::pi * kGsOracle * kGsOracle / v);
    worst = std::max(worst, std::abs(numeric - formula));
    detail += fmt(" v=%.0e: %.4f vs %.4f;", v, numeric, formula);
  }
  const double t = sw.seconds();
  report("5", p0ee >= 0.98 && worst <= 0.05 && t < 60.0,
         fmt("sweep 3.84 -> 4.16 GHz at v = 6e-5: final P_0ee = %.4f (>= 0.98); "
             "jump probability vs exp(-2 pi Gs^2 / v) over 4.0 +- max(0.16, 10 sqrt v) GHz, max |diff| = %.4f (<= 0.05):%s "
             "%.1f s (< 60 s)",
             p0ee, worst, detail.c_str(), t));
}

ObservableTrace rabi_run(const ModelParams& p, const std::vector<double>& times) {
  const DrivePulse pulse = DrivePulse::from_peak(0.05, 0.0, 20.0, p.omega);
  const ObservableTrace tr =
      lindblad_evolve(p, pulse, DensityMatrix::pure(dressed_ground_state(p)), times);
  g_phys.add(tr);
  return tr;
}

void criterion6_7_8() {
  const std::vector<double> times = time_grid(500.0, 1.0);
  ModelParams p = ModelParams::dissipative_defaults();

  Stopwatch sw;
  const ObservableTrace tr = rabi_run(p, times);
  const double t_run = sw.seconds();
  const size_t i_max = argmax(tr.gq2, 0, tr.gq2.size());
  const double t_max = tr.times[i_max];
  const bool in_window = t_max >= 120.0 && t_max <= 250.0;

  // First oscillation after the pulse (3 tau): from 60 ns over one population
  // Rabi period pi / Gs.
  const double rabi_period = std::numbers::pi / kGsOracle;
  const size_t lo = 60, hi = std::min(tr.times.size(), size_t(60 + rabi_period));
  const size_t j_gq2 = argmax(tr.gq2, lo, hi);
  const size_t j_n = argmin(tr.photon_number, lo, hi);
  const double offset = std::abs(tr.times[j_gq2] - tr.times[j_n]);
  report("6", tr.gq2[i_max] >= 0.9 && in_window && offset <= 0.1 * rabi_period &&
                  t_run < 180.0,
         fmt("max G_q2(0) = %.4f (>= 0.9) at t = %.0f ns (window [120, 250] ns); "
             "first gq2 max at %.0f ns vs photon-number min at %.0f ns, offset %.0f ns "
             "(<= %.1f ns); %.1f s (< 180 s)",
             tr.gq2[i_max], t_max, tr.times[j_gq2], tr.times[j_n], offset,
             0.1 * rabi_period, t_run));

  const auto inter = interference_scan(ModelParams{}, {-1.0, 1.0});
  ModelParams anti = p;
  anti.g2 = -anti.g1;
  const ObservableTrace tb = rabi_run(anti, times);
  const double gq2_anti = *std::max_element(tb.gq2.begin(), tb.gq2.end());
  report("7", inter[0].gap <= 0.05 * inter[1].gap && gq2_anti <= 0.01,
         fmt("gap at g2/g1 = -1 is %.3g GHz vs %.5f GHz at +1 (ratio %.3g <= 0.05); "
             "g2 = -g1 driven run max G_q2(0) = %.3g (<= 0.01)",
             inter[0].gap, inter[1].gap, inter[0].gap / inter[1].gap, gq2_anti));

  ModelParams big = p;
  big.n_max = 7;
  const ObservableTrace t7 = rabi_run(big, times);
  auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  const double d_gq2 = std::abs(mx(t7.gq2) - mx(tr.gq2));
  const double d_n = std::abs(mx(t7.photon_number) - mx(tr.photon_number));
  const bool phys = g_phys.trace < 1e-8 && g_phys.min_eig >= -1e-8 && g_phys.herm < 1e-9 &&
                    g_phys.norm_drift < 1e-8;
  report("8", phys && d_gq2 < 1e-4 && d_n < 1e-4,
         fmt("over all runs: max |tr rho - 1| = %.2g, min eig = %.2g, max |rho - rho^dag| "
             "= %.2g, closed-system norm drift = %.2g; n_max 5 -> 7 changes max gq2 by "
             "%.2g and max photon number by %.2g (< 1e-4)",
             g_phys.trace, g_phys.min_eig, g_phys.herm, g_phys.norm_drift, d_gq2, d_n));
}

void criterion9() {
  const ModelParams p;
  const double iso = (eigh(polaron_transform(p)).values - eigh(build_static(p)).values)
                         .cwiseAbs()
                         .maxCoeff();
  auto residual = [](double scale) {
    ModelParams q;
    q.g1 *= scale;
    q.g2 *= scale;
    return (polaron_transform(q) - build_first_order(q)).norm();
  };
  const double ratio = residual(1.0) / residual(0.5);
  report("9", iso <= 1e-8 && ratio >= 3.3 && ratio <= 4.7,
         fmt("polaron vs static spectra differ by %.2g (<= 1e-8); first-order residual "
             "ratio under beta halving %.3f (in [3.3, 4.7])",
             iso, ratio));
}

void criterion10() {
  const ModelParams p;
  const DerivedQuantities d = derived(p);
  const double beta = kG / kOmega;
  const double chi = 4.0 * kG * kG / kOmega;
  const double adiab = 2.0 * std::numbers::pi * d.Gs * d.Gs / 6e-5;
  const double plz = lz_probability(0.01, 6e-5);
  const bool ok = std::abs(d.Gs - 0.01) < 1e-15 && std::abs(d.Gs - kGsOracle) < 1e-15 &&
                  std::abs(d.beta1 - 0.025) < 1e-15 && d.beta1 == beta &&
                  d.beta2 == beta && std::abs(d.chi - 0.02) < 1e-15 && d.chi == chi &&
                  std::abs(adiab - 10.47) <= 0.01 && std::abs(plz - 2.83e-5) <= 1e-7;
  report("10", ok,
         fmt("Gs = %.6g GHz, beta = %.6g, chi = %.6g GHz, 2 pi Gs^2 / v = %.4f, "
             "lz_probability(0.01, 6e-5) = %.4g",
             d.Gs, d.beta1, d.chi, adiab, plz));
}

}  // namespace

int main() {
  try {
    criterion1_2();
    criterion3();
    criterion4();
    criterion5();
    criterion6_7_8();
    criterion9();
    criterion10();
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d criterion line(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
