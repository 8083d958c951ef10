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

// Eigenspectrum scans across the |1,g,g> <-> |0,e,e> anticrossing.
//
// Eigenstates are labelled by sorted index with psi_0 the ground state, so
// psi_1, psi_2 are the single-qubit-excitation doublet near zero energy and
// psi_3, psi_4 are the anticrossing pair near omega/2.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqed/model.hpp"
#include "lqed/qops.hpp"

namespace lqed {

inline constexpr int kLowerPair = 3;
inline constexpr int kUpperPair = 4;

enum class AblationVariant { full, drop_hcr, drop_hr };

inline std::string_view to_string(AblationVariant v) {
  switch (v) {
    case AblationVariant::full:
      return "full";
    case AblationVariant::drop_hcr:
      return "drop_HCR";
    case AblationVariant::drop_hr:
      return "drop_HR";
  }
  return "?";
}

inline AblationVariant parse_variant(std::string_view s) {
  if (s == "full") return AblationVariant::full;
  if (s == "drop_HCR" || s == "drop_hcr") return AblationVariant::drop_hcr;
  if (s == "drop_HR" || s == "drop_hr") return AblationVariant::drop_hr;
  throw std::invalid_argument("unknown ablation variant '" + std::string(s) +
                              "'");
}

struct OverlapProbabilities {
  double P1;         // |<0,e,e|psi_4>|^2
  double P2;         // |<1,g,g|psi_4>|^2
  double P1_primed;  // |<1,g,g|psi_3>|^2
  double P2_primed;  // |<0,e,e|psi_3>|^2
  double Ps_plus;    // |<S+|psi_3>|^2
  double Ps_minus;   // |<S-|psi_4>|^2
};

struct SpectrumScanPoint {
  double delta1;
  std::vector<double> energies;
  OverlapProbabilities probs;
  double gap;  // E_4 - E_3
};

struct GapMinimum {
  double delta1_star;
  double gap_star;
};

struct InterferencePoint {
  double ratio;
  double delta1_star;
  double gap;
};

inline Operator variant_hamiltonian(const ModelParams& p, AblationVariant v) {
  Operator h = build_static(p);
  switch (v) {
    case AblationVariant::full:
      break;
    case AblationVariant::drop_hcr:
      h -= build_counter_rotating(p);
      break;
    case AblationVariant::drop_hr:
      h -= build_rotating(p);
      break;
  }
  return h;
}

inline OverlapProbabilities overlap_probabilities(const Eigensystem& eig,
                                                  const HilbertSpace& s) {
  if (eig.size() <= kUpperPair) {
    throw std::invalid_argument(
        "overlap_probabilities: need at least 5 eigenpairs (psi_0..psi_4), "
        "got " + std::to_string(eig.size()));
  }
  if (!(eig.space == s)) {
    throw std::invalid_argument("overlap_probabilities: space mismatch");
  }
  const StateVector ee = basis_state(s, 0, Level::e, Level::e);
  const StateVector gg = basis_state(s, 1, Level::g, Level::g);
  const StateVector splus = pair_state(s, +1);
  const StateVector sminus = pair_state(s, -1);
  const StateVector lo = eig.state(kLowerPair);
  const StateVector hi = eig.state(kUpperPair);
  return {ee.overlap(hi), gg.overlap(hi),    gg.overlap(lo),
          ee.overlap(lo), splus.overlap(lo), sminus.overlap(hi)};
}

inline double pair_gap(const ModelParams& p,
                       AblationVariant v = AblationVariant::full) {
  const DenseEigen e = eigh(variant_hamiltonian(p, v).matrix());
  return e.values(kUpperPair) - e.values(kLowerPair);
}

inline std::vector<SpectrumScanPoint> scan_delta1(
    const ModelParams& p, const std::vector<double>& grid, AblationVariant v,
    int k = 6) {
  if (grid.empty()) throw std::invalid_argument("scan_delta1: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("scan_delta1: grid must be sorted");
  }
  const HilbertSpace s = p.space();
  if (k < 1 || k > s.dim()) {
    throw std::invalid_argument("scan_delta1: k = " + std::to_string(k) +
                                " outside [1, " + std::to_string(s.dim()) +
                                "]");
  }
  std::vector<SpectrumScanPoint> out;
  out.reserve(grid.size());
  for (double d1 : grid) {
    ModelParams q = p;
    q.delta1 = d1;
    const Eigensystem eig = eigh(variant_hamiltonian(q, v));
    SpectrumScanPoint pt{d1, {}, overlap_probabilities(eig, s),
                         eig.values(kUpperPair) - eig.values(kLowerPair)};
    pt.energies.assign(eig.values.data(), eig.values.data() + k);
    out.push_back(std::move(pt));
  }
  return out;
}

/// Golden-section search for the smallest E_4 - E_3 on [lo, hi]. The bracket
/// must hold a single local minimum.
inline GapMinimum min_gap(const ModelParams& p, double lo, double hi,
                          double tol = 1e-9,
                          AblationVariant v = AblationVariant::full) {
  if (!(lo < hi)) {
    throw std::invalid_argument("min_gap: inverted bracket");
  }
  auto gap_at = [&](double d1) {
    ModelParams q = p;
    q.delta1 = d1;
    return pair_gap(q, v);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = gap_at(c), fd = gap_at(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = gap_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = gap_at(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = gap_at(x);
  GapMinimum best{x, fx};
  if (fc < best.gap_star) best = {c, fc};
  if (fd < best.gap_star) best = {d, fd};
  return best;
}

/// Coarse scan on [lo, hi] with `step`, then golden-section refinement around
/// the best coarse point.
inline GapMinimum locate_anticrossing(const ModelParams& p, double lo,
                                      double hi, double step = 0.005) {
  if (!(lo < hi) || !(step > 0.0)) {
    throw std::invalid_argument("locate_anticrossing: bad bracket or step");
  }
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  double best_x = lo, best_f = INFINITY;
  for (int i = 0; i < n; ++i) {
    ModelParams q = p;
    q.delta1 = lo + i * step;
    const double f = pair_gap(q);
    if (f < best_f) {
      best_f = f;
      best_x = q.delta1;
    }
  }
  return min_gap(p, std::max(lo, best_x - step), std::min(hi, best_x + step));
}

inline std::vector<InterferencePoint> interference_scan(
    const ModelParams& p, const std::vector<double>& ratios,
    std::pair<double, double> bracket = {3.8, 4.2}) {
  if (p.g1 == 0.0) {
    throw std::invalid_argument("interference_scan: g1 must be nonzero");
  }
  if (ratios.empty()) {
    throw std::invalid_argument("interference_scan: empty ratio list");
  }
  std::vector<InterferencePoint> out;
  out.reserve(ratios.size());
  for (double r : ratios) {
    ModelParams q = p;
    q.g2 = r * p.g1;
    const GapMinimum m = locate_anticrossing(q, bracket.first, bracket.second);
    out.push_back({r, m.delta1_star, m.gap_star});
  }
  return out;
}

}  // namespace lqed
