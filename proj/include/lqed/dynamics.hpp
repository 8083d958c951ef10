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

// Time evolution: Schrodinger propagation, Landau-Zener sweeps and the
// Lindblad master equation with dressed (eigenbasis) jump operators.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lqed/integrator.hpp"
#include "lqed/model.hpp"
#include "lqed/qops.hpp"

namespace lqed {

/// Linear sweep Delta1(t) = delta1_0 + v t on [0, t_end].
struct SweepSpec {
  double delta1_0 = 3.84;
  double v = 6e-5;  // GHz^2
  double t_end = 0.32 / 6e-5;

  double delta1_at(double t) const { return delta1_0 + v * t; }

  void validate() const {
    if (!(t_end >= 0.0)) {
      throw std::invalid_argument("SweepSpec: t_end must be >= 0");
    }
    if (!(delta1_0 > 0.0) || !(delta1_at(t_end) > 0.0)) {
      throw std::invalid_argument(
          "SweepSpec: Delta1(t) must stay positive over the sweep");
    }
  }
};

/// O = plus + minus + diagonal_part, split in the eigenbasis of a reference
/// Hamiltonian. plus = sum_{k>j} O_jk |psi_j><psi_k| lowers the energy.
struct DressedOperatorPair {
  Operator plus;
  Operator minus;
  Operator diagonal_part;
};

inline DressedOperatorPair dressed_decomposition(const Eigensystem& eig,
                                                 const Operator& bare) {
  if (!(eig.space == bare.space()) || eig.size() != bare.dim() ||
      eig.vectors.cols() != bare.dim()) {
    std::ostringstream os;
    os << "dressed_decomposition: eigensystem has " << eig.size()
       << " pairs, operator dim is " << bare.dim();
    throw std::invalid_argument(os.str());
  }
  const Matrix& V = eig.vectors;
  const Matrix in_eig = V.adjoint() * bare.matrix() * V;
  const Matrix upper = in_eig.triangularView<Eigen::StrictlyUpper>();
  const Matrix diag = in_eig.diagonal().asDiagonal();
  const HilbertSpace& s = bare.space();
  Operator plus{s, V * upper * V.adjoint()};
  Operator minus = plus.adjoint();
  return {std::move(plus), std::move(minus),
          Operator{s, V * diag * V.adjoint()}};
}

/// H(t) = H0 + sum_k c_k(t) O_k. Hermiticity is the caller's contract: pair
/// every non-Hermitian term with its conjugate.
class TimeDependentHamiltonian {
 public:
  using Coefficient = std::function<cplx(double)>;

  explicit TimeDependentHamiltonian(Operator h0) : h0_(std::move(h0)) {}

  TimeDependentHamiltonian& add_term(Coefficient c, Operator op) {
    detail::require_same_space(h0_.space(), op.space(), "add_term");
    terms_.emplace_back(std::move(c), std::move(op));
    return *this;
  }

  const HilbertSpace& space() const { return h0_.space(); }
  const Operator& static_part() const { return h0_; }

  Operator at(double t) const {
    Operator h = h0_;
    for (const auto& [c, op] : terms_) h += c(t) * op;
    return h;
  }

  /// out = H(t) psi
  void apply(double t, const Vector& psi, Vector& out) const {
    out.noalias() = h0_.matrix() * psi;
    for (const auto& [c, op] : terms_) {
      const cplx ct = c(t);
      if (ct != cplx(0.0)) out.noalias() += ct * (op.matrix() * psi);
    }
  }

  /// Adds sum_k c_k(t) O_k to `h` in place.
  void add_time_dependent(double t, Matrix& h) const {
    for (const auto& [c, op] : terms_) {
      const cplx ct = c(t);
      if (ct != cplx(0.0)) h.noalias() += ct * op.matrix();
    }
  }

 private:
  Operator h0_;
  std::vector<std::pair<Coefficient, Operator>> terms_;
};

namespace detail {

// y <- exp(-i h H) y for Hermitian H, through its eigendecomposition. Real
// symmetric H (every undriven model Hamiltonian) takes the real solver.
class UnitaryStepper {
 public:
  explicit UnitaryStepper(int n) : real_(n), cplx_(n), c_(n) {}

  void apply(const Matrix& H, double h, Vector& y) {
    if (H.imag().cwiseAbs().maxCoeff() == 0.0) {
      real_.compute(H.real());
      const auto& V = real_.eigenvectors();
      c_.noalias() = V.transpose() * y;
      c_.array() *= (-kI * h * real_.eigenvalues().cast<cplx>()).array().exp();
      y.noalias() = V * c_;
    } else {
      cplx_.compute(H);
      const auto& V = cplx_.eigenvectors();
      c_.noalias() = V.adjoint() * y;
      c_.array() *= (-kI * h * cplx_.eigenvalues().cast<cplx>()).array().exp();
      y.noalias() = V * c_;
    }
  }

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_;
  Eigen::SelfAdjointEigenSolver<Matrix> cplx_;
  Vector c_;
};

}  // namespace detail

/// i d|psi>/dt = H(t)|psi>, sampled on `times`.
///
/// Fourth-order commutator-free Magnus steps (two exponentials at the Gauss
/// nodes), error-controlled by step doubling. Every step is an exact
/// unitary, so the norm only drifts by roundoff, and a static H is
/// propagated exactly in one step per output.
inline std::vector<StateVector> schrodinger_evolve(
    const TimeDependentHamiltonian& h, const StateVector& psi0,
    std::span<const double> times, const IntegratorOptions& opt = {}) {
  detail::require_same_space(h.space(), psi0.space(), "schrodinger_evolve");
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("schrodinger_evolve: initial state not normalized");
  }
  for (size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("schrodinger_evolve: output times must increase");
    }
  }
  if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0)) {
    throw std::invalid_argument("schrodinger_evolve: tolerances must be positive");
  }
  std::vector<StateVector> out;
  out.reserve(times.size());
  if (times.empty()) return out;

  const double r3 = std::sqrt(3.0);
  const double c1 = 0.5 - r3 / 6.0, c2 = 0.5 + r3 / 6.0;
  const double a1 = (3.0 - 2.0 * r3) / 12.0, a2 = (3.0 + 2.0 * r3) / 12.0;
  const int n = psi0.space().dim();
  Matrix h1(n, n), h2(n, n);
  detail::UnitaryStepper stepper(n);
  auto ham_at = [&](double t, Matrix& m) {
    m = h.static_part().matrix();
    h.add_time_dependent(t, m);
  };

  // y <- U_CF4(t0, t0 + dt) y
  auto cf4 = [&](double t0, double dt, Vector& y) {
    ham_at(t0 + c1 * dt, h1);
    ham_at(t0 + c2 * dt, h2);
    stepper.apply(a1 * h1 + a2 * h2, dt, y);
    stepper.apply(a2 * h1 + a1 * h2, dt, y);
  };

  Vector y = psi0.amplitudes(), y_full(n), y_half(n);
  double t = times[0];
  out.emplace_back(psi0.space(), y);
  double step = std::min(opt.h_max, opt.h_init > 0.0 ? opt.h_init
                                                      : times.back() - times[0]);
  long steps = 0;
  size_t next = 1;
  while (next < times.size()) {
    const double target = times[next];
    if (steps >= opt.max_steps) {
      std::ostringstream os;
      os << "schrodinger_evolve: step budget of " << opt.max_steps
         << " exhausted at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    ++steps;
    bool lands = false;
    double dt = step;
    if (t + dt >= target - 1e-12 * std::max(1.0, std::abs(target))) {
      dt = target - t;
      lands = true;
    }
    if (!(dt > 1e-14 * std::max(1.0, std::abs(t)))) {
      std::ostringstream os;
      os << "schrodinger_evolve: step size underflow at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    y_full = y;
    cf4(t, dt, y_full);
    y_half = y;
    cf4(t, 0.5 * dt, y_half);
    cf4(t + 0.5 * dt, 0.5 * dt, y_half);
    // Richardson: the two-half-step result carries error ~ (y_half - y_full) / 15.
    const double en = detail::scaled_error(Vector((y_half - y_full) / 15.0), y,
                                           y_half, opt.rtol, opt.atol);
    if (!std::isfinite(en)) {
      std::ostringstream os;
      os << "schrodinger_evolve: non-finite error estimate at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    const double fac =
        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    if (en <= 1.0) {
      t = lands ? target : t + dt;
      y.swap(y_half);
      if (!lands || dt >= step) step = std::min(opt.h_max, dt * fac);
      if (lands) {
        out.emplace_back(psi0.space(), y);
        ++next;
      }
    } else {
      step = dt * std::min(1.0, fac);
    }
  }
  return out;
}

inline std::vector<StateVector> schrodinger_evolve(
    const Operator& h, const StateVector& psi0, std::span<const double> times,
    const IntegratorOptions& opt = {}) {
  return schrodinger_evolve(TimeDependentHamiltonian(h), psi0, times, opt);
}

/// exp(-2 pi Gs^2 / v): probability of staying on the diabatic branch.
inline double lz_probability(double Gs, double v) {
  if (!(v > 0.0)) {
    throw std::invalid_argument("lz_probability: sweep rate must be > 0");
  }
  return std::exp(-2.0 * std::numbers::pi * Gs * Gs / v);
}

struct LzTrace {
  std::vector<double> times;
  std::vector<double> delta1;
  std::vector<double> P_1gg;
  std::vector<double> P_0ee;
  std::vector<double> norm_error;
};

inline TimeDependentHamiltonian sweep_hamiltonian(const ModelParams& p,
                                                  const SweepSpec& sweep) {
  ModelParams base = p;
  // build_static needs delta1 > 0; the Delta1 sz_1 / 2 part is re-added below.
  base.delta1 = sweep.delta1_0;
  const HilbertSpace s = p.space();
  Operator h0 = build_static(base) -
                (0.5 * sweep.delta1_0) * qubit_op(s, 1, QubitOp::sz);
  TimeDependentHamiltonian h(std::move(h0));
  h.add_term([sweep](double t) { return cplx(0.5 * sweep.delta1_at(t)); },
             qubit_op(s, 1, QubitOp::sz));
  return h;
}

inline LzTrace lz_sweep(const ModelParams& p, const SweepSpec& sweep,
                        const StateVector& psi0,
                        std::span<const double> times,
                        const IntegratorOptions& opt = {}) {
  sweep.validate();
  for (double t : times) {
    if (t < 0.0 || t > sweep.t_end * (1.0 + 1e-12)) {
      throw std::invalid_argument("lz_sweep: output time outside [0, t_end]");
    }
  }
  const HilbertSpace s = p.space();
  const auto states =
      schrodinger_evolve(sweep_hamiltonian(p, sweep), psi0, times, opt);
  const int i_gg = s.index(1, Level::g, Level::g);
  const int i_ee = s.index(0, Level::e, Level::e);
  LzTrace tr;
  for (size_t k = 0; k < states.size(); ++k) {
    tr.times.push_back(times[k]);
    tr.delta1.push_back(sweep.delta1_at(times[k]));
    tr.P_1gg.push_back(std::norm(states[k][i_gg]));
    tr.P_0ee.push_back(std::norm(states[k][i_ee]));
    tr.norm_error.push_back(std::abs(states[k].norm() - 1.0));
  }
  return tr;
}

class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, Matrix rho)
      : space_(space), rho_(std::move(rho)) {
    if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim()) {
      throw std::invalid_argument("DensityMatrix: shape does not match space");
    }
  }

  static DensityMatrix pure(const StateVector& psi) {
    return {psi.space(), psi.amplitudes() * psi.amplitudes().adjoint()};
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return rho_; }

  double trace_error() const { return std::abs(rho_.trace() - cplx(1.0)); }
  double hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  }
  double min_eigenvalue() const {
    const Matrix h = 0.5 * (rho_ + rho_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
  }

  /// Throws unless Hermitian, unit trace and positive semidefinite to `tol`.
  void require_physical(double tol = 1e-10) const {
    std::ostringstream os;
    if (hermiticity_error() > tol) {
      os << "density matrix not Hermitian (" << hermiticity_error() << ")";
    } else if (trace_error() > tol) {
      os << "density matrix trace deviates from 1 by " << trace_error();
    } else if (min_eigenvalue() < -tol) {
      os << "density matrix has negative eigenvalue " << min_eigenvalue();
    } else {
      return;
    }
    throw std::invalid_argument(os.str());
  }

 private:
  HilbertSpace space_;
  Matrix rho_;
};

inline cplx expectation(const DensityMatrix& rho, const Operator& op) {
  detail::require_same_space(rho.space(), op.space(), "expectation");
  // tr(rho O) without forming the product.
  return (rho.matrix().transpose().cwiseProduct(op.matrix())).sum();
}

/// Lowest eigenstate of build_static(p): the zero-temperature fixed point of
/// the dissipative dynamics.
inline StateVector dressed_ground_state(const ModelParams& p) {
  return eigh(build_static(p)).state(0);
}

struct ObservableTrace {
  std::vector<double> times;
  std::vector<double> photon_number;  // <X^- X^+>
  std::vector<double> gq2;            // <C1^- C2^- C2^+ C1^+>
  std::vector<double> flux;           // kappa <X^- X^+>
  std::vector<double> P_0gg;
  std::vector<double> P_1gg;
  std::vector<double> P_0ee;
  std::vector<double> trace_error;
  std::vector<double> hermiticity_error;
  std::vector<double> min_eigenvalue;
};

/// Jump operators and correlation observables built once from the undriven
/// Hamiltonian build_static(p).
struct DressedObservables {
  Operator X_plus;
  Operator C1_plus;
  Operator C2_plus;
  Operator photon_number;  // X^- X^+
  Operator gq2;            // C1^- C2^- C2^+ C1^+

  static DressedObservables build(const ModelParams& p) {
    const HilbertSpace s = p.space();
    const Eigensystem eig = eigh(build_static(p));
    const Operator a = annihilation(s);
    Operator xp = dressed_decomposition(eig, a + a.adjoint()).plus;
    Operator c1 =
        dressed_decomposition(eig, qubit_op(s, 1, QubitOp::sx)).plus;
    Operator c2 =
        dressed_decomposition(eig, qubit_op(s, 2, QubitOp::sx)).plus;
    Operator n = xp.adjoint() * xp;
    Operator g = c1.adjoint() * c2.adjoint() * c2 * c1;
    return {std::move(xp), std::move(c1), std::move(c2), std::move(n),
            std::move(g)};
  }
};

/// d rho/dt = -i[H_t, rho] + kappa D[X+] rho + sum_j Gamma_j D[C_j+] rho,
/// D[O] rho = O rho O^dag - {O^dag O, rho}/2,
/// H_t = build_static(p) + drive(t).
inline ObservableTrace lindblad_evolve(const ModelParams& p,
                                       const std::optional<DrivePulse>& pulse,
                                       const DensityMatrix& rho0,
                                       std::span<const double> times,
                                       const IntegratorOptions& opt = {}) {
  p.validate();
  const HilbertSpace s = p.space();
  detail::require_same_space(s, rho0.space(), "lindblad_evolve");
  rho0.require_physical();
  if (pulse) pulse->validate();

  const Operator h_static = build_static(p);
  const DressedObservables obs = DressedObservables::build(p);

  std::vector<Matrix> jumps;
  const std::pair<double, const Operator*> channels[] = {
      {p.kappa, &obs.X_plus}, {p.gamma1, &obs.C1_plus},
      {p.gamma2, &obs.C2_plus}};
  Matrix h_eff = h_static.matrix();
  for (const auto& [rate, op] : channels) {
    if (rate <= 0.0) continue;
    Matrix l = std::sqrt(rate) * op->matrix();
    h_eff -= (0.5 * kI) * (l.adjoint() * l);
    jumps.push_back(std::move(l));
  }
  std::vector<Matrix> jumps_dag;
  for (const auto& l : jumps) jumps_dag.push_back(l.adjoint());

  TimeDependentHamiltonian drive(Operator::zero(s));
  if (pulse) {
    const Operator a = annihilation(s);
    const DrivePulse pp = *pulse;
    drive.add_term(
        [pp](double t) {
          return pp.envelope(t) * std::exp(kI * (pp.omega_d * t));
        },
        a);
    drive.add_term(
        [pp](double t) {
          return pp.envelope(t) * std::exp(-kI * (pp.omega_d * t));
        },
        a.adjoint());
  }

  Matrix m(s.dim(), s.dim()), tmp(s.dim(), s.dim());
  auto rhs = [&](double t, const Matrix& rho, Matrix& drho) {
    m = h_eff;
    drive.add_time_dependent(t, m);
    // -i (M rho - rho M^dag) with M = H - i/2 sum L^dag L
    tmp.noalias() = m * rho;
    drho = -kI * (tmp - tmp.adjoint());
    for (size_t k = 0; k < jumps.size(); ++k) {
      tmp.noalias() = jumps[k] * rho;
      drho.noalias() += tmp * jumps_dag[k];
    }
  };

  const int i0gg = s.index(0, Level::g, Level::g);
  const int i1gg = s.index(1, Level::g, Level::g);
  const int i0ee = s.index(0, Level::e, Level::e);
  ObservableTrace tr;
  auto record = [&](size_t, double t, const Matrix& rho) {
    const DensityMatrix dm(s, rho);
    const double n = expectation(dm, obs.photon_number).real();
    tr.times.push_back(t);
    tr.photon_number.push_back(n);
    tr.gq2.push_back(expectation(dm, obs.gq2).real());
    tr.flux.push_back(p.kappa * n);
    tr.P_0gg.push_back(rho(i0gg, i0gg).real());
    tr.P_1gg.push_back(rho(i1gg, i1gg).real());
    tr.P_0ee.push_back(rho(i0ee, i0ee).real());
    tr.trace_error.push_back(dm.trace_error());
    tr.hermiticity_error.push_back(dm.hermiticity_error());
    tr.min_eigenvalue.push_back(dm.min_eigenvalue());
  };
  integrate(rhs, rho0.matrix(), times, opt, record);
  return tr;
}

}  // namespace lqed
