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

// Dormand-Prince 5(4) with local extrapolation and FSAL, on any Eigen dense
// complex state (vectors for kets, matrices for density operators).
//
// The solver steps exactly onto every output time instead of interpolating.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lqed {

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t_reached)
      : std::runtime_error(what), t_reached_(t_reached) {}
  double t_reached() const { return t_reached_; }

 private:
  double t_reached_;
};

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  long max_steps = 20'000'000;
  double h_max = std::numeric_limits<double>::infinity();
  double h_init = 0.0;  // 0: pick from the initial derivative
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

namespace detail {

// Tableau (Hairer, Norsett & Wanner, Solving ODEs I, Table 5.2).
struct DP5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                          b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  // b - b_hat
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <class State>
double scaled_error(const State& err, const State& y0, const State& y1,
                    double rtol, double atol) {
  const auto scale =
      (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  const double n = static_cast<double>(err.size());
  return std::sqrt((err.cwiseAbs().array() / scale).square().sum() / n);
}

}  // namespace detail

/// Integrates dy/dt = f(t, y) across `times` (strictly increasing). `rhs` is
/// called as rhs(t, y, dydt) and must fully overwrite dydt. `observe(i, t, y)`
/// fires at every output time, including times[0] with the initial state.
template <class State, class Rhs, class Observer>
IntegratorStats integrate(Rhs&& rhs, State y, std::span<const double> times,
                          const IntegratorOptions& opt, Observer&& observe) {
  using T = detail::DP5;
  IntegratorStats stats;
  if (times.empty()) return stats;
  for (size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("integrate: output times must increase");
    }
  }
  if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0)) {
    throw std::invalid_argument("integrate: tolerances must be positive");
  }

  double t = times[0];
  observe(size_t{0}, t, y);
  if (times.size() == 1) return stats;

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y,
        ynew = y, err = y;
  rhs(t, y, k1);
  ++stats.rhs_evals;

  double h = opt.h_init;
  if (!(h > 0.0)) {
    // Hairer's starting-step heuristic, first stage only.
    const double d0 = detail::scaled_error(y, y, y, opt.rtol, opt.atol);
    const double d1 = detail::scaled_error(k1, y, y, opt.rtol, opt.atol);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min(h, opt.h_max);

  const double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
  size_t next = 1;
  while (next < times.size()) {
    const double target = times[next];
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      std::ostringstream os;
      os << "integrate: step budget of " << opt.max_steps
         << " exhausted at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    bool lands = false;
    double step = h;
    if (t + step >= target - 1e-12 * std::max(1.0, std::abs(target))) {
      step = target - t;
      lands = true;
    }
    if (!(step > 1e-14 * std::max(1.0, std::abs(t)))) {
      std::ostringstream os;
      os << "integrate: step size underflow at t = " << t;
      throw IntegrationError(os.str(), t);
    }

    ytmp = y + step * (T::a21 * k1);
    rhs(t + T::c2 * step, ytmp, k2);
    ytmp = y + step * (T::a31 * k1 + T::a32 * k2);
    rhs(t + T::c3 * step, ytmp, k3);
    ytmp = y + step * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3);
    rhs(t + T::c4 * step, ytmp, k4);
    ytmp = y + step * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4);
    rhs(t + T::c5 * step, ytmp, k5);
    ytmp = y + step * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 +
                       T::a64 * k4 + T::a65 * k5);
    rhs(t + step, ytmp, k6);
    ynew = y + step * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 +
                       T::b6 * k6);
    const double t_new = lands ? target : t + step;
    rhs(t_new, ynew, k7);
    stats.rhs_evals += 6;

    err = step * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 +
                  T::e6 * k6 + T::e7 * k7);
    const double en = detail::scaled_error(err, y, ynew, opt.rtol, opt.atol);
    if (!std::isfinite(en)) {
      std::ostringstream os;
      os << "integrate: non-finite error estimate at t = " << t;
      throw IntegrationError(os.str(), t);
    }

    const double fac =
        en == 0.0 ? fac_max
                  : std::clamp(safety * std::pow(en, -0.2), fac_min, fac_max);
    if (en <= 1.0) {
      ++stats.accepted;
      t = t_new;
      y.swap(ynew);
      k1.swap(k7);
      // A landing step is usually truncated; keep the free step size.
      if (!lands || step >= h) h = step * fac;
      h = std::min(h, opt.h_max);
      if (lands) {
        observe(next, t, y);
        ++next;
      }
    } else {
      ++stats.rejected;
      h = step * std::min(1.0, fac);
    }
  }
  return stats;
}

}  // namespace lqed
