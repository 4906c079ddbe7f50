#include "soniq/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "soniq/error.hpp"

namespace soniq {

namespace {

void check_pow2(std::size_t n) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw ShapeError("amplitude vector length " + std::to_string(n) +
                     " is not a power of two >= 2");
  }
  if (std::countr_zero(n) > kMaxQubits) {
    throw CapacityError("amplitude vector exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
}

}  // namespace

Statevector Statevector::zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  amps[0] = 1.0;
  return Statevector(n_qubits, std::move(amps));
}

Statevector Statevector::from_amplitudes(std::span<const Complex> values) {
  check_pow2(values.size());
  double sq = 0.0;
  for (const auto& v : values) sq += std::norm(v);
  if (!(sq > 0.0)) throw DegenerateWindowError("cannot normalize an all-zero amplitude vector");
  const double inv = 1.0 / std::sqrt(sq);
  std::vector<Complex> amps(values.begin(), values.end());
  for (auto& a : amps) a *= inv;
  return Statevector(std::countr_zero(values.size()), std::move(amps));
}

Statevector Statevector::from_amplitudes(std::span<const double> values) {
  std::vector<Complex> c(values.begin(), values.end());
  return from_amplitudes(std::span<const Complex>(c));
}

void Statevector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw ArgumentError("qubit index " + std::to_string(qubit) + " out of range for " +
                        std::to_string(n_qubits_) + " qubits");
  }
}

Statevector& Statevector::apply_rx(int qubit, double theta) {
  check_qubit(qubit);
  const double c = std::cos(theta / 2);
  const Complex mis(0.0, -std::sin(theta / 2));
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t n = amps_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = c * a0 + mis * a1;
      amps_[i + stride] = mis * a0 + c * a1;
    }
  }
  return *this;
}

Statevector& Statevector::apply_rz(int qubit, double theta) {
  check_qubit(qubit);
  const Complex p0 = std::polar(1.0, -theta / 2);
  const Complex p1 = std::polar(1.0, theta / 2);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & mask) ? p1 : p0;
  return *this;
}

Statevector& Statevector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw ArgumentError("CNOT control and target must differ");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    // Visit each swapped pair once, from the target-bit-0 side.
    if ((i & cmask) && !(i & tmask)) std::swap(amps_[i], amps_[i | tmask]);
  }
  return *this;
}

Statevector& Statevector::apply_rzz(int q1, int q2, double theta) {
  if (q1 == q2) throw ArgumentError("RZZ qubits must differ");
  apply_cnot(q1, q2);
  apply_rz(q2, theta);
  apply_cnot(q1, q2);
  return *this;
}

double Statevector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double expectation_diagonal(const Statevector& state, const DiagonalObservable& obs) {
  if (obs.weights.size() != state.dim()) {
    throw ShapeError("observable has " + std::to_string(obs.weights.size()) +
                     " weights but state dimension is " + std::to_string(state.dim()));
  }
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) acc += obs.weights[i] * std::norm(amps[i]);
  return acc;
}

std::vector<double> marginal_one_probabilities(const Statevector& state) {
  const int n = state.n_qubits();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    for (std::size_t bits = i; bits != 0; bits &= bits - 1) {
      out[static_cast<std::size_t>(std::countr_zero(bits))] += p;
    }
  }
  return out;
}

DiagonalObservable one_projector(int n_qubits, int qubit) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw CapacityError("n_qubits out of range");
  if (qubit < 0 || qubit >= n_qubits) throw ArgumentError("qubit index out of range");
  DiagonalObservable obs;
  obs.weights.resize(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < obs.weights.size(); ++i) obs.weights[i] = ((i >> qubit) & 1U) ? 1.0 : 0.0;
  return obs;
}

}  // namespace soniq
