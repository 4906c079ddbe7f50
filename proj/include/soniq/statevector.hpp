#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace soniq {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// Eigenvalues of an observable that is diagonal in the computational basis.
struct DiagonalObservable {
  std::vector<double> weights;
};

// Dense statevector over n qubits. Qubit q is bit q (little-endian) of the
// basis-state index. Rotation gates follow R_G(theta) = exp(-i theta/2 G).
class Statevector {
 public:
  // |0...0>. Throws CapacityError unless 1 <= n_qubits <= kMaxQubits.
  static Statevector zero_state(int n_qubits);

  // Normalizes `values` to unit Euclidean norm. Throws ShapeError for a
  // length that is not a power of two (or is 1), DegenerateWindowError for
  // a zero vector.
  static Statevector from_amplitudes(std::span<const Complex> values);
  static Statevector from_amplitudes(std::span<const double> values);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  Statevector& apply_rx(int qubit, double theta);
  Statevector& apply_rz(int qubit, double theta);
  Statevector& apply_cnot(int control, int target);
  // exp(-i theta/2 Z_q1 Z_q2), applied as CNOT(q1,q2) RZ(q2) CNOT(q1,q2).
  Statevector& apply_rzz(int q1, int q2, double theta);

  double norm_squared() const noexcept;
  double probability(std::size_t basis_index) const { return std::norm(amps_[basis_index]); }

 private:
  Statevector(int n_qubits, std::vector<Complex> amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {}

  void check_qubit(int qubit) const;

  int n_qubits_;
  std::vector<Complex> amps_;
};

// sum_i weights_i |a_i|^2. Throws ShapeError on dimension mismatch.
double expectation_diagonal(const Statevector& state, const DiagonalObservable& obs);

// Entry q is P(qubit q = |1>), i.e. <(I - Z_q)/2>.
std::vector<double> marginal_one_probabilities(const Statevector& state);

// Diagonal form of (I - Z_q)/2 on an n-qubit register.
DiagonalObservable one_projector(int n_qubits, int qubit);

}  // namespace soniq
