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

// Hamiltonians for two qubits longitudinally coupled to one resonator mode
// and to each other through a sigma_x sigma_x dipole interaction.
//
// Units: hbar = 1, all rates are angular frequencies quoted in GHz (rad/ns),
// times in ns.

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lqed/qops.hpp"

namespace lqed {

struct ModelParams {
  double omega = 8.0;   // resonator frequency
  double delta1 = 4.0;  // qubit gaps
  double delta2 = 4.0;
  double g1 = 0.2;  // longitudinal couplings (signed)
  double g2 = 0.2;
  double J = 0.1;  // sigma_x sigma_x strength (signed)
  double chi3 = 0.0;  // Kerr a^dag^2 a^2
  double kappa = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  int n_max = 5;

  void validate() const {
    auto fail = [](const std::string& m) {
      throw std::invalid_argument("ModelParams: " + m);
    };
    if (!(omega > 0.0)) fail("omega must be > 0");
    if (!(delta1 > 0.0)) fail("delta1 must be > 0");
    if (!(delta2 > 0.0)) fail("delta2 must be > 0");
    if (n_max < 1) fail("n_max must be >= 1");
    if (kappa < 0.0) fail("kappa must be >= 0");
    if (gamma1 < 0.0) fail("gamma1 must be >= 0");
    if (gamma2 < 0.0) fail("gamma2 must be >= 0");
  }

  HilbertSpace space() const { return HilbertSpace(n_max); }

  /// omega = 2 Delta2 = 8, Delta1 = 4, g1 = g2 = 0.2, J = 0.1; no loss, no
  /// Kerr.
  static ModelParams defaults() { return {}; }

  /// defaults() plus the loss rates and Kerr strength of the driven runs.
  static ModelParams dissipative_defaults() {
    ModelParams p;
    p.chi3 = 0.12;
    p.kappa = 0.4e-3;
    p.gamma1 = 0.2e-3;
    p.gamma2 = 0.2e-3;
    return p;
  }
};

/// Gaussian drive  A exp(-(t-t0)^2 / 2 tau^2) / (sqrt(2 pi) tau)
/// times (a e^{i omega_d t} + a^dag e^{-i omega_d t}).
struct DrivePulse {
  double area = 0.0;  // A, GHz ns
  double t0 = 0.0;
  double tau = 20.0;
  double omega_d = 8.0;

  static DrivePulse from_peak(double peak, double t0, double tau,
                              double omega_d) {
    return {peak * std::sqrt(2.0 * std::numbers::pi) * tau, t0, tau, omega_d};
  }

  void validate() const {
    if (!(tau > 0.0)) {
      throw std::invalid_argument("DrivePulse: tau must be > 0");
    }
    if (!std::isfinite(area) || !std::isfinite(t0) || !std::isfinite(omega_d)) {
      throw std::invalid_argument("DrivePulse: non-finite field");
    }
  }

  double peak() const { return area / (std::sqrt(2.0 * std::numbers::pi) * tau); }

  double envelope(double t) const {
    const double x = (t - t0) / tau;
    return peak() * std::exp(-0.5 * x * x);
  }
};

struct DeviceParams {
  double R = 0.0;   // d Delta / d Phi_x
  double M = 0.0;   // mutual inductance to the resonator
  double L0 = 1.0;  // inductance per unit length
  double L = 1.0;   // resonator length
  double omega = 8.0;
};

struct DerivedQuantities {
  double beta1;
  double beta2;
  double chi;
  double Gs;
};

namespace detail {

inline void warn_truncation(const ModelParams& p) {
  const double g = std::max(std::abs(p.g1), std::abs(p.g2));
  const double ratio = g * p.n_max / p.omega;
  if (ratio > 0.2) {
    std::clog << "lqed: warning: g*n_max/omega = " << ratio
              << " > 0.2; Fock truncation may be too small\n";
  }
}

inline Operator dipole_part(const HilbertSpace& s, QubitOp a, QubitOp b) {
  return qubit_op(s, 1, a) * qubit_op(s, 2, b);
}

}  // namespace detail

inline DerivedQuantities derived(const ModelParams& p) {
  if (!(p.omega > 0.0)) {
    throw std::invalid_argument("derived: omega must be > 0");
  }
  const double b1 = p.g1 / p.omega;
  const double b2 = p.g2 / p.omega;
  return {b1, b2, 4.0 * p.g1 * p.g2 / p.omega, 2.0 * p.J * (b1 + b2)};
}

inline double coupling_from_device(const DeviceParams& d) {
  if (!(d.L0 * d.L > 0.0)) {
    throw std::invalid_argument("coupling_from_device: L0*L must be > 0");
  }
  if (!(d.omega > 0.0)) {
    throw std::invalid_argument("coupling_from_device: omega must be > 0");
  }
  return d.R * d.M * std::sqrt(d.omega / (2.0 * d.L0 * d.L));
}

/// omega a^dag a + 1/2 sum Delta_j sz_j + sum g_j sz_j (a + a^dag)
///   + J sx_1 sx_2 + chi3 a^dag^2 a^2
inline Operator build_static(const ModelParams& p) {
  p.validate();
  detail::warn_truncation(p);
  const HilbertSpace s = p.space();
  const Operator a = annihilation(s);
  const Operator ad = a.adjoint();
  const Operator x = a + ad;
  const Operator sz1 = qubit_op(s, 1, QubitOp::sz);
  const Operator sz2 = qubit_op(s, 2, QubitOp::sz);

  Operator h = p.omega * (ad * a);
  h += 0.5 * p.delta1 * sz1;
  h += 0.5 * p.delta2 * sz2;
  h += p.g1 * (sz1 * x);
  h += p.g2 * (sz2 * x);
  h += p.J * detail::dipole_part(s, QubitOp::sx, QubitOp::sx);
  if (p.chi3 != 0.0) h += p.chi3 * (ad * ad * a * a);
  return h;
}

/// J (s1^- s2^+ + h.c.)
inline Operator build_rotating(const ModelParams& p) {
  const HilbertSpace s = p.space();
  const Operator t = detail::dipole_part(s, QubitOp::s_minus, QubitOp::s_plus);
  return p.J * (t + t.adjoint());
}

/// J (s1^+ s2^+ + h.c.)
inline Operator build_counter_rotating(const ModelParams& p) {
  const HilbertSpace s = p.space();
  const Operator t = detail::dipole_part(s, QubitOp::s_plus, QubitOp::s_plus);
  return p.J * (t + t.adjoint());
}

inline Operator drive_at(double t, const DrivePulse& pulse,
                         const HilbertSpace& s) {
  pulse.validate();
  const double f = pulse.envelope(t);
  const cplx phase = std::exp(kI * (pulse.omega_d * t));
  const Operator a = annihilation(s);
  return (f * phase) * a + (f * std::conj(phase)) * a.adjoint();
}

namespace detail {

inline void require_no_kerr(const ModelParams& p, const char* who) {
  if (p.chi3 != 0.0) {
    throw std::invalid_argument(std::string(who) +
                                ": defined for chi3 = 0 only");
  }
}

// S = sum_j beta_j sz_j (a^dag - a)
inline Operator polaron_generator(const ModelParams& p) {
  const HilbertSpace s = p.space();
  const Operator a = annihilation(s);
  const Operator d = a.adjoint() - a;
  const DerivedQuantities q = derived(p);
  return q.beta1 * (qubit_op(s, 1, QubitOp::sz) * d) +
         q.beta2 * (qubit_op(s, 2, QubitOp::sz) * d);
}

}  // namespace detail

/// e^S H_T e^{-S}, evaluated by exact matrix exponentials on the truncated
/// space.
inline Operator polaron_transform(const ModelParams& p) {
  detail::require_no_kerr(p, "polaron_transform");
  const Operator gen = detail::polaron_generator(p);
  return expm(gen) * build_static(p) * expm(-1.0 * gen);
}

/// First-order expansion of the polaron frame Hamiltonian in beta_j:
///   omega a^dag a + 1/2 sum Delta_j sz_j - chi sz_1 sz_2
///   + J prod_j [ sx_j + 2 beta_j (s_j^+ - s_j^-)(a^dag - a) ]
inline Operator build_first_order(const ModelParams& p) {
  detail::require_no_kerr(p, "build_first_order");
  p.validate();
  const HilbertSpace s = p.space();
  const DerivedQuantities q = derived(p);
  const Operator a = annihilation(s);
  const Operator ad = a.adjoint();
  const Operator d = ad - a;

  auto factor = [&](int j, double beta) {
    const Operator sp = qubit_op(s, j, QubitOp::s_plus);
    const Operator sm = qubit_op(s, j, QubitOp::s_minus);
    return (sp + sm) + 2.0 * beta * ((sp - sm) * d);
  };

  const Operator sz1 = qubit_op(s, 1, QubitOp::sz);
  const Operator sz2 = qubit_op(s, 2, QubitOp::sz);
  Operator h = p.omega * (ad * a);
  h += 0.5 * p.delta1 * sz1;
  h += 0.5 * p.delta2 * sz2;
  h -= q.chi * (sz1 * sz2);
  h += p.J * (factor(1, q.beta1) * factor(2, q.beta2));
  return h;
}

/// Gn (a^n s1^+ s2^+ + (a^dag)^n s1^- s2^-); n = 1 with Gn = Gs is the
/// single-photon pair-excitation Hamiltonian.
inline Operator build_heff(const ModelParams& p, int n, double Gn) {
  const HilbertSpace s = p.space();
  if (n < 1 || n > s.n_max()) {
    throw std::invalid_argument("build_heff: photon order " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(s.n_max()) + "]");
  }
  const Operator a = annihilation(s);
  Operator an = Operator::identity(s);
  for (int k = 0; k < n; ++k) an = an * a;
  const Operator up = an * detail::dipole_part(s, QubitOp::s_plus, QubitOp::s_plus);
  return Gn * (up + up.adjoint());
}

inline Operator build_heff(const ModelParams& p) {
  return build_heff(p, 1, derived(p).Gs);
}

}  // namespace lqed
