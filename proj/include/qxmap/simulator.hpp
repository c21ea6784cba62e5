// Copyright 2026 The qxmap Authors
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

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qxmap {

/// Dense statevector over k qubits. Qubit j is bit j of the basis index.
template <typename Scalar>
class StateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using Matrix2 = Eigen::Matrix<Complex, 2, 2>;

  explicit StateVector(int qubits) : k_(qubits) {
    if (qubits < 0 || qubits > 30) throw std::invalid_argument("statevector size out of range");
    amp_ = Vector::Zero(Eigen::Index{1} << qubits);
    amp_(0) = Complex(1);
  }

  /// Tensor product of single-qubit states, `states.col(j)` for qubit j.
  static StateVector product(const Eigen::Matrix<Complex, 2, Eigen::Dynamic>& states) {
    StateVector out(static_cast<int>(states.cols()));
    for (Eigen::Index i = 0; i < out.amp_.size(); ++i) {
      Complex a(1);
      for (int j = 0; j < out.k_; ++j) a *= states((i >> j) & 1, j);
      out.amp_(i) = a;
    }
    return out;
  }

  int qubits() const { return k_; }
  const Vector& amplitudes() const { return amp_; }
  Vector& amplitudes() { return amp_; }
  Scalar norm() const { return amp_.norm(); }

  static Matrix2 u_matrix(Scalar theta, Scalar phi, Scalar lambda) {
    using std::cos;
    using std::polar;
    using std::sin;
    Matrix2 u;
    u << Complex(cos(theta / 2)), -polar(Scalar(1), lambda) * sin(theta / 2),  //
        polar(Scalar(1), phi) * sin(theta / 2), polar(Scalar(1), phi + lambda) * cos(theta / 2);
    return u;
  }

  void apply_1q(int q, const Matrix2& u) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
      if (i & bit) continue;
      const Complex a0 = amp_(i);
      const Complex a1 = amp_(i | bit);
      amp_(i) = u(0, 0) * a0 + u(0, 1) * a1;
      amp_(i | bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  void apply_u(int q, Scalar theta, Scalar phi, Scalar lambda) { apply_1q(q, u_matrix(theta, phi, lambda)); }

  void apply_cx(int control, int target) {
    const Eigen::Index c = Eigen::Index{1} << control;
    const Eigen::Index t = Eigen::Index{1} << target;
    for (Eigen::Index i = 0; i < amp_.size(); ++i)
      if ((i & c) && !(i & t)) std::swap(amp_(i), amp_(i | t));
  }

 private:
  int k_;
  Vector amp_;
};

}  // namespace qxmap
