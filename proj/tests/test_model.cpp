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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "lqed/model.hpp"

namespace lqed {
namespace {

cplx element(const Operator& op, const StateVector& bra, const StateVector& ket) {
  return bra.inner(op * ket);
}

double spectral_distance(const Operator& a, const Operator& b) {
  return (eigh(a).values - eigh(b).values).cwiseAbs().maxCoeff();
}

TEST(ModelParams, ValidationRejectsUnphysicalValues) {
  ModelParams p;
  p.omega = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.delta2 = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.kappa = -1e-3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.n_max = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.g2 = -0.2;  // signed couplings are fine
  p.J = -0.1;
  EXPECT_NO_THROW(p.validate());
}

TEST(BuildStatic, DecoupledLimitIsDiagonal) {
  ModelParams p;
  p.g1 = p.g2 = p.J = 0.0;
  p.delta1 = 3.7;
  const Operator h = build_static(p);
  const HilbertSpace s = p.space();
  Matrix want = Matrix::Zero(s.dim(), s.dim());
  for (int n = 0; n <= s.n_max(); ++n) {
    for (Level l1 : {Level::g, Level::e}) {
      for (Level l2 : {Level::g, Level::e}) {
        const double z1 = l1 == Level::e ? 1.0 : -1.0;
        const double z2 = l2 == Level::e ? 1.0 : -1.0;
        const int i = s.index(n, l1, l2);
        want(i, i) = n * p.omega + 0.5 * p.delta1 * z1 + 0.5 * p.delta2 * z2;
      }
    }
  }
  EXPECT_LT((h.matrix() - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildStatic, BuildersAreHermitian) {
  ModelParams p = ModelParams::dissipative_defaults();
  p.g2 = -0.13;
  EXPECT_TRUE(build_static(p).is_hermitian());
  EXPECT_TRUE(build_rotating(p).is_hermitian());
  EXPECT_TRUE(build_counter_rotating(p).is_hermitian());
  EXPECT_TRUE(build_heff(ModelParams{}).is_hermitian());
  EXPECT_TRUE(build_first_order(ModelParams{}).is_hermitian());
  EXPECT_TRUE(polaron_transform(ModelParams{}).is_hermitian(1e-10));
  const DrivePulse pulse = DrivePulse::from_peak(0.05, 10.0, 20.0, 8.0);
  for (double t : {0.0, 3.3, 10.0, 47.1})
    EXPECT_TRUE(drive_at(t, pulse, p.space()).is_hermitian());
}

TEST(BuildStatic, PairGapAtResonanceIsTwiceGs) {
  const ModelParams p;
  const Eigensystem e = eigh(build_static(p));
  const double gap = e.values(4) - e.values(3);
  EXPECT_NEAR(gap, 2.0 * 0.01, 0.1 * 0.02);
}

TEST(BuildStatic, GlobalCouplingSignFlipIsSymmetry) {
  // The parity a -> -a maps (g1, g2) to (-g1, -g2).
  ModelParams p;
  ModelParams q = p;
  q.g1 = -p.g1;
  q.g2 = -p.g2;
  EXPECT_LT(spectral_distance(build_static(p), build_static(q)), 1e-10);
}

TEST(BuildStatic, DisplacedOscillatorLevelsWithoutDipoleCoupling) {
  // With J = 0 each sigma_z sector is a displaced oscillator:
  // E = n omega + (d1 z1 + d2 z2) / 2 - (g1 z1 + g2 z2)^2 / omega.
  ModelParams p;
  p.J = 0.0;
  p.delta1 = 3.0;
  p.n_max = 9;
  std::vector<double> oracle;
  for (int n = 0; n < 2; ++n)
    for (int z1 : {-1, 1})
      for (int z2 : {-1, 1}) {
        const double g = p.g1 * z1 + p.g2 * z2;
        oracle.push_back(n * p.omega + 0.5 * (p.delta1 * z1 + p.delta2 * z2) - g * g / p.omega);
      }
  std::sort(oracle.begin(), oracle.end());
  const Eigen::VectorXd e = eigh(build_static(p)).values;
  for (size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(e[i], oracle[i], 1e-9) << "level " << i;

  // Flipping only g2 changes the zz shift -2 g1 g2 / omega, so the spectrum moves.
  ModelParams q = p;
  q.g2 = -p.g2;
  EXPECT_GT(spectral_distance(build_static(p), build_static(q)), 0.01);
}

TEST(BuildStatic, DipoleTermSplitsIntoRotatingAndCounterRotating) {
  const ModelParams p;
  ModelParams q = p;
  q.J = 0.0;
  const HilbertSpace s = p.space();
  const Operator sxsx = qubit_op(s, 1, QubitOp::sx) * qubit_op(s, 2, QubitOp::sx);
  const Operator diff = build_static(p) - build_static(q);
  EXPECT_EQ((diff - p.J * sxsx).matrix().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT((build_rotating(p) + build_counter_rotating(p) - p.J * sxsx).norm(), 1e-15);
}

TEST(SplitHamiltonians, MatrixElements) {
  const ModelParams p;
  const HilbertSpace s = p.space();
  const StateVector eg = basis_state(s, 0, Level::e, Level::g);
  const StateVector ge = basis_state(s, 0, Level::g, Level::e);
  const StateVector ee = basis_state(s, 0, Level::e, Level::e);
  const StateVector gg0 = basis_state(s, 0, Level::g, Level::g);
  const StateVector gg1 = basis_state(s, 1, Level::g, Level::g);
  const Operator hr = build_rotating(p);
  const Operator hcr = build_counter_rotating(p);
  EXPECT_NEAR(std::abs(element(hr, eg, ge) - p.J), 0.0, 1e-15);
  EXPECT_EQ(std::abs(element(hr, ee, gg1)), 0.0);
  EXPECT_NEAR(std::abs(element(hcr, ee, gg0) - p.J), 0.0, 1e-15);
  EXPECT_EQ(std::abs(element(hcr, eg, ge)), 0.0);
}

TEST(SplitHamiltonians, CounterRotatingCommutesWithSzSz) {
  const ModelParams p;
  const HilbertSpace s = p.space();
  const Operator zz = qubit_op(s, 1, QubitOp::sz) * qubit_op(s, 2, QubitOp::sz);
  EXPECT_LT(commutator(zz, build_counter_rotating(p)).norm(), 1e-15);
  EXPECT_LT(commutator(zz, build_rotating(p)).norm(), 1e-15);
}

TEST(Drive, EnvelopePeakTailAndNullPulse) {
  const DrivePulse pulse = DrivePulse::from_peak(0.05, 30.0, 20.0, 8.0);
  EXPECT_NEAR(pulse.envelope(30.0), 0.05, 1e-16);
  EXPECT_NEAR(pulse.peak(), 0.05, 1e-16);
  EXPECT_NEAR(pulse.area / (std::sqrt(2.0 * std::numbers::pi) * 20.0), 0.05, 1e-16);
  EXPECT_LT(pulse.envelope(30.0 + 200.0), 2e-22 * 0.05);
  EXPECT_LT(pulse.envelope(30.0 - 200.0), 2e-22 * 0.05);
  const DrivePulse null{0.0, 0.0, 20.0, 8.0};
  EXPECT_EQ(drive_at(1.0, null, HilbertSpace(3)).norm(), 0.0);
  EXPECT_THROW(drive_at(0.0, DrivePulse{1.0, 0.0, 0.0, 8.0}, HilbertSpace(3)),
               std::invalid_argument);
}

TEST(Drive, CarrierPhase) {
  const DrivePulse pulse = DrivePulse::from_peak(0.05, 0.0, 20.0, 8.0);
  const HilbertSpace s(2);
  const double t = 0.3;
  const Operator h = drive_at(t, pulse, s);
  // <0gg| H |1gg> = f(t) e^{i omega_d t}
  const cplx want = pulse.envelope(t) * std::exp(kI * (8.0 * t));
  const cplx got = element(h, basis_state(s, 0, Level::g, Level::g),
                           basis_state(s, 1, Level::g, Level::g));
  EXPECT_NEAR(std::abs(got - want), 0.0, 1e-16);
}

TEST(Device, CouplingArithmetic) {
  EXPECT_NEAR(coupling_from_device({1.0, 1.0, 0.5, 1.0, 8.0}), std::sqrt(8.0), 1e-15);
  EXPECT_EQ(coupling_from_device({0.0, 1.0, 0.5, 1.0, 8.0}), 0.0);
  const double g1 = coupling_from_device({0.3, 0.7, 0.5, 2.0, 2.0});
  const double g4 = coupling_from_device({0.3, 0.7, 0.5, 2.0, 8.0});
  EXPECT_NEAR(g4 / g1, 2.0, 1e-14);
  EXPECT_LT(coupling_from_device({-1.0, 1.0, 0.5, 1.0, 8.0}), 0.0);
  EXPECT_THROW(coupling_from_device({1.0, 1.0, 0.0, 1.0, 8.0}), std::invalid_argument);
  EXPECT_THROW(coupling_from_device({1.0, 1.0, -1.0, 1.0, 8.0}), std::invalid_argument);
}

TEST(Derived, DefaultParameters) {
  const DerivedQuantities d = derived(ModelParams{});
  EXPECT_EQ(d.beta1, 0.2 / 8.0);
  EXPECT_EQ(d.beta2, 0.2 / 8.0);
  EXPECT_NEAR(d.beta1, 0.025, 1e-17);
  EXPECT_NEAR(d.Gs, 0.01, 1e-17);
  EXPECT_NEAR(d.chi, 0.02, 1e-17);
}

TEST(Derived, GsSymmetries) {
  ModelParams p;
  p.g1 = 0.17;
  p.g2 = 0.31;
  ModelParams swapped = p;
  std::swap(swapped.g1, swapped.g2);
  EXPECT_EQ(derived(p).Gs, derived(swapped).Gs);
  ModelParams flipped = p;
  flipped.J = -p.J;
  EXPECT_EQ(derived(flipped).Gs, -derived(p).Gs);
  ModelParams opposite;
  opposite.g2 = -opposite.g1;
  EXPECT_EQ(derived(opposite).Gs, 0.0);
}

TEST(Polaron, IdentityAtZeroCoupling) {
  ModelParams p;
  p.g1 = p.g2 = 0.0;
  EXPECT_LT((polaron_transform(p) - build_static(p)).matrix().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Polaron, Isospectral) {
  for (double g2 : {0.2, -0.2, 0.05}) {
    ModelParams p;
    p.g2 = g2;
    EXPECT_LT(spectral_distance(polaron_transform(p), build_static(p)), 1e-8);
  }
}

TEST(Polaron, RejectsKerr) {
  ModelParams p;
  p.chi3 = 0.12;
  EXPECT_THROW(polaron_transform(p), std::invalid_argument);
  EXPECT_THROW(build_first_order(p), std::invalid_argument);
}

TEST(Polaron, QubitQubitShiftMatchesDisplacementOracle) {
  // At J = 0, e^S H e^{-S} = omega a^dag a + 1/2 sum Delta sz - omega (sum beta sz)^2,
  // so the sz1 sz2 coefficient is -2 omega beta1 beta2 = -2 g1 g2 / omega.
  ModelParams p;
  p.J = 0.0;
  const HilbertSpace s = p.space();
  const Operator h = polaron_transform(p);
  auto diag = [&](Level a, Level b) {
    const StateVector v = basis_state(s, 0, a, b);
    return element(h, v, v).real();
  };
  const double czz = (diag(Level::g, Level::g) + diag(Level::e, Level::e) -
                      diag(Level::e, Level::g) - diag(Level::g, Level::e)) / 4.0;
  const double oracle = -2.0 * p.g1 * p.g2 / p.omega;
  EXPECT_NEAR(czz, oracle, 1e-9);
  EXPECT_NEAR(-czz, 0.01, 1e-9);
  // zero-photon block is decoupled from one photon once J = 0
  const StateVector gg0 = basis_state(s, 0, Level::g, Level::g);
  const StateVector gg1 = basis_state(s, 1, Level::g, Level::g);
  EXPECT_LT(std::abs(element(h, gg1, gg0)), 1e-9);
}

TEST(FirstOrder, ZerothOrderLimit) {
  ModelParams p;
  p.g1 = p.g2 = 0.0;
  const HilbertSpace s = p.space();
  const Operator a = annihilation(s);
  Operator want = p.omega * (a.adjoint() * a);
  want += 0.5 * p.delta1 * qubit_op(s, 1, QubitOp::sz);
  want += 0.5 * p.delta2 * qubit_op(s, 2, QubitOp::sz);
  want += p.J * (qubit_op(s, 1, QubitOp::sx) * qubit_op(s, 2, QubitOp::sx));
  EXPECT_LT((build_first_order(p) - want).norm(), 1e-14);
}

TEST(FirstOrder, PairCreationElement) {
  // a-coefficient of s1^+ s2^+ in the expanded product: -2 J (beta1 + beta2)
  const ModelParams p;
  const HilbertSpace s = p.space();
  const cplx el = element(build_first_order(p), basis_state(s, 0, Level::e, Level::e),
                          basis_state(s, 1, Level::g, Level::g));
  EXPECT_NEAR(el.real(), -2.0 * 0.1 * (0.025 + 0.025), 1e-15);
  EXPECT_NEAR(el.imag(), 0.0, 1e-15);
}

TEST(FirstOrder, ResidualIsSecondOrderInBeta) {
  auto residual = [](double scale) {
    ModelParams p;
    p.g1 *= scale;
    p.g2 *= scale;
    return (polaron_transform(p) - build_first_order(p)).norm();
  };
  for (double scale : {1.0, 0.5}) {
    const double ratio = residual(scale) / residual(0.5 * scale);
    EXPECT_GE(ratio, 3.3) << "scale " << scale;
    EXPECT_LE(ratio, 4.7) << "scale " << scale;
  }
}

TEST(Heff, LadderElements) {
  const ModelParams p;
  const HilbertSpace s = p.space();
  const double gs = derived(p).Gs;
  const Operator h1 = build_heff(p);
  for (int n = 0; n < s.n_max(); ++n) {
    const cplx el = element(h1, basis_state(s, n, Level::e, Level::e),
                            basis_state(s, n + 1, Level::g, Level::g));
    EXPECT_NEAR(el.real(), std::sqrt(n + 1.0) * gs, 1e-15) << "n = " << n;
  }
  const Operator h2 = build_heff(p, 2, 0.003);
  const cplx el2 = element(h2, basis_state(s, 0, Level::e, Level::e),
                           basis_state(s, 2, Level::g, Level::g));
  EXPECT_NEAR(el2.real(), std::sqrt(2.0) * 0.003, 1e-16);
  EXPECT_THROW(build_heff(p, 0, 0.01), std::invalid_argument);
  EXPECT_THROW(build_heff(p, s.n_max() + 1, 0.01), std::invalid_argument);
}

}  // namespace
}  // namespace lqed
