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

// Dense operator algebra on the composite space  resonator ⊗ qubit1 ⊗ qubit2.
//
// Basis convention: |n, s1, s2> lives at index n*4 + s1*2 + s2, with
// s = 0 for |g> and s = 1 for |e>. The resonator index varies slowest and
// qubit 2 fastest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace lqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

enum class Level : int { g = 0, e = 1 };

enum class QubitOp { sz, sx, s_plus, s_minus };

class HilbertSpace {
 public:
  explicit HilbertSpace(int n_max) : n_max_(n_max) {
    if (n_max < 1) {
      throw std::invalid_argument("HilbertSpace: n_max must be >= 1, got " +
                                  std::to_string(n_max));
    }
  }

  int n_max() const { return n_max_; }
  int fock_dim() const { return n_max_ + 1; }
  int dim() const { return (n_max_ + 1) * 4; }

  int index(int n, Level s1, Level s2) const {
    if (n < 0 || n > n_max_) {
      throw std::invalid_argument("photon number " + std::to_string(n) +
                                  " outside [0, " + std::to_string(n_max_) +
                                  "]");
    }
    return n * 4 + static_cast<int>(s1) * 2 + static_cast<int>(s2);
  }

  bool operator==(const HilbertSpace&) const = default;

 private:
  int n_max_;
};

inline HilbertSpace make_space(int n_max) { return HilbertSpace(n_max); }

namespace detail {

inline void require_same_space(const HilbertSpace& a, const HilbertSpace& b,
                               const char* what) {
  if (!(a == b)) {
    std::ostringstream os;
    os << what << ": space mismatch (dim " << a.dim() << " vs " << b.dim()
       << ")";
    throw std::invalid_argument(os.str());
  }
}

// Largest |M_ij - conj(M_ji)| and largest |M_ij|.
inline std::pair<double, double> asymmetry(const Matrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return {skew, scale};
}

}  // namespace detail

/// Square complex matrix tied to a HilbertSpace.
class Operator {
 public:
  Operator(HilbertSpace space, Matrix m) : space_(space), m_(std::move(m)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
      std::ostringstream os;
      os << "Operator: matrix is " << m_.rows() << "x" << m_.cols()
         << ", space dim is " << space_.dim();
      throw std::invalid_argument(os.str());
    }
  }

  static Operator zero(const HilbertSpace& s) {
    return {s, Matrix::Zero(s.dim(), s.dim())};
  }
  static Operator identity(const HilbertSpace& s) {
    return {s, Matrix::Identity(s.dim(), s.dim())};
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return space_.dim(); }
  cplx operator()(int i, int j) const { return m_(i, j); }

  Operator adjoint() const { return {space_, m_.adjoint()}; }

  /// max |H - H^dagger| relative to the largest entry (0 for the zero matrix).
  double hermiticity_error() const {
    auto [skew, scale] = detail::asymmetry(m_);
    return scale > 0.0 ? skew / scale : 0.0;
  }
  bool is_hermitian(double rel_tol = 1e-12) const {
    return hermiticity_error() <= rel_tol;
  }

  /// Largest singular value.
  double norm() const {
    if (m_.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m_);
    return svd.singularValues()(0);
  }

  Operator& operator+=(const Operator& o) {
    detail::require_same_space(space_, o.space_, "operator+");
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    detail::require_same_space(space_, o.space_, "operator-");
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(cplx c) {
    m_ *= c;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cplx c, Operator a) { return a *= c; }
  friend Operator operator*(Operator a, cplx c) { return a *= c; }
  friend Operator operator*(double c, Operator a) { return a *= cplx(c); }
  friend Operator operator*(const Operator& a, const Operator& b) {
    detail::require_same_space(a.space_, b.space_, "operator*");
    return {a.space_, a.m_ * b.m_};
  }

 private:
  HilbertSpace space_;
  Matrix m_;
};

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

class StateVector {
 public:
  StateVector(HilbertSpace space, Vector amps)
      : space_(space), amps_(std::move(amps)) {
    if (amps_.size() != space_.dim()) {
      throw std::invalid_argument("StateVector: length " +
                                  std::to_string(amps_.size()) +
                                  " != dim " + std::to_string(space_.dim()));
    }
  }

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  cplx operator[](int i) const { return amps_(i); }

  cplx inner(const StateVector& other) const {
    detail::require_same_space(space_, other.space_, "inner product");
    return amps_.dot(other.amps_);
  }
  /// |<this|other>|^2
  double overlap(const StateVector& other) const {
    return std::norm(inner(other));
  }
  StateVector normalized() const { return {space_, amps_ / amps_.norm()}; }

  friend StateVector operator*(const Operator& op, const StateVector& v) {
    detail::require_same_space(op.space(), v.space_, "apply");
    return {v.space_, op.matrix() * v.amps_};
  }

 private:
  HilbertSpace space_;
  Vector amps_;
};

inline StateVector basis_state(const HilbertSpace& s, int n, Level s1,
                               Level s2) {
  Vector v = Vector::Zero(s.dim());
  v(s.index(n, s1, s2)) = 1.0;
  return {s, std::move(v)};
}

/// (|0,e,e> + sign |1,g,g>)/sqrt(2)
inline StateVector pair_state(const HilbertSpace& s, int sign) {
  Vector v = Vector::Zero(s.dim());
  v(s.index(0, Level::e, Level::e)) = 1.0 / std::sqrt(2.0);
  v(s.index(1, Level::g, Level::g)) = sign / std::sqrt(2.0);
  return {s, std::move(v)};
}

inline Operator projector(const StateVector& v) {
  return {v.space(), v.amplitudes() * v.amplitudes().adjoint()};
}

inline Operator annihilation(const HilbertSpace& s) {
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (int n = 1; n <= s.n_max(); ++n) {
    const double amp = std::sqrt(static_cast<double>(n));
    for (int q = 0; q < 4; ++q) m((n - 1) * 4 + q, n * 4 + q) = amp;
  }
  return {s, std::move(m)};
}

inline Operator creation(const HilbertSpace& s) {
  return annihilation(s).adjoint();
}

inline Operator number_op(const HilbertSpace& s) {
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) m(i, i) = static_cast<double>(i / 4);
  return {s, std::move(m)};
}

inline Eigen::Matrix2cd pauli(QubitOp kind) {
  // Single-qubit basis order: {g, e}.
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (kind) {
    case QubitOp::sz:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
    case QubitOp::sx:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case QubitOp::s_plus:  // |e><g|
      m(1, 0) = 1.0;
      break;
    case QubitOp::s_minus:
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

inline Operator qubit_op(const HilbertSpace& s, int which, QubitOp kind) {
  if (which != 1 && which != 2) {
    throw std::invalid_argument("qubit_op: qubit must be 1 or 2, got " +
                                std::to_string(which));
  }
  const Eigen::Matrix2cd p = pauli(kind);
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (int n = 0; n <= s.n_max(); ++n) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (p(a, b) == cplx(0.0)) continue;
        for (int other = 0; other < 2; ++other) {
          const int row = which == 1 ? n * 4 + a * 2 + other
                                     : n * 4 + other * 2 + a;
          const int col = which == 1 ? n * 4 + b * 2 + other
                                     : n * 4 + other * 2 + b;
          m(row, col) = p(a, b);
        }
      }
    }
  }
  return {s, std::move(m)};
}

/// Eigenpairs sorted by ascending energy. Column k of `vectors` is |psi_k>,
/// with k = 0 the ground state. Degenerate levels keep the solver's order;
/// eigenvector phases are arbitrary.
struct Eigensystem {
  HilbertSpace space;
  Eigen::VectorXd values;
  Matrix vectors;

  int size() const { return static_cast<int>(values.size()); }
  StateVector state(int k) const { return {space, vectors.col(k)}; }
};

struct DenseEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};

/// Hermitian eigensolver on a bare matrix; ascending values, stable in the
/// solver's order for ties.
inline DenseEigen eigh(const Matrix& h_in, double herm_tol = 1e-10) {
  if (h_in.rows() != h_in.cols()) {
    throw std::invalid_argument("eigh: matrix is not square");
  }
  auto [skew, scale] = detail::asymmetry(h_in);
  if (scale > 0.0 && skew > herm_tol * scale) {
    std::ostringstream os;
    os << "eigh: operator is not Hermitian (max |H - H^dagger| = " << skew
       << ", relative " << skew / scale << ")";
    throw std::invalid_argument(os.str());
  }
  const Matrix h = 0.5 * (h_in + h_in.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  const Eigen::VectorXd& raw = solver.eigenvalues();
  std::vector<int> order(static_cast<size_t>(raw.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw(a) < raw(b); });

  DenseEigen out{Eigen::VectorXd(raw.size()), Matrix(raw.size(), raw.size())};
  for (int k = 0; k < raw.size(); ++k) {
    out.values(k) = raw(order[k]);
    out.vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

inline Eigensystem eigh(const Operator& op, double herm_tol = 1e-10) {
  DenseEigen d = eigh(op.matrix(), herm_tol);
  return {op.space(), std::move(d.values), std::move(d.vectors)};
}

// Pade scaling-and-squaring (Eigen's MatrixFunctions module).
inline Matrix expm(const Matrix& m) { return m.exp(); }

inline Operator expm(const Operator& op) {
  return {op.space(), expm(op.matrix())};
}

}  // namespace lqed
