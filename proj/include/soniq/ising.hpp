#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "soniq/statevector.hpp"

namespace soniq::ising {

// One primitive gate of a trotter circuit.
struct Gate {
  enum class Kind { kCnot, kRz, kRx };
  Kind kind;
  int q0;        // control for CNOT, target otherwise
  int q1{-1};    // CNOT target
  double angle{0.0};
};

using GateSequence = std::vector<Gate>;

// Hamiltonian parameters for one trotter step of
//   H = sum_n J_n Z_n Z_{n+1 mod N} + h_x sum_n X_n
struct IsingStep {
  std::vector<double> couplings;  // J_n couples spin n to spin (n+1) mod N
  double field{0.0};              // h_x
};

struct IsingSchedule {
  int n_spins{16};
  std::vector<IsingStep> steps;
  double dt{0.5};  // t/k
};

// Throws ShapeError/ArgumentError when the schedule violates its invariants.
void validate(const IsingSchedule& schedule);

// Per-step marginals P(q = |1>). Row 0 holds the initial state's marginals,
// row k the marginals after the k-th trotter step.
struct EvolutionTrace {
  std::vector<std::vector<double>> marginals;

  std::size_t steps() const noexcept { return marginals.empty() ? 0 : marginals.size() - 1; }
  std::size_t n_spins() const noexcept { return marginals.empty() ? 0 : marginals.front().size(); }
  // Mean over qubits at row `step`.
  double mean_marginal(std::size_t step) const;
};

// Gates of one step, in order: RZZ(2 J_n dt) on even-n pairs (n, n+1), then
// on odd-n pairs including the wrap-around (N-1, 0), each as CNOT-RZ-CNOT,
// then RX(2 h_x dt) on every qubit. A single spin has no neighbour; its
// coupling term is a global phase and emits no gates.
GateSequence build_trotter_step(std::span<const double> couplings, double field, double dt);

void apply(Statevector& state, const GateSequence& gates);

// Trotterized evolution; step k uses that step's own (J, h_x).
EvolutionTrace evolve(const IsingSchedule& schedule, Statevector state);

inline constexpr int kMaxExactSpins = 6;

// Exact per-step propagation exp(-i H_k dt) via a dense eigendecomposition of
// each step's Hamiltonian. Throws CapacityError above kMaxExactSpins.
EvolutionTrace exact_evolve_small(const IsingSchedule& schedule, const Statevector& initial);

// max |a - b| over all entries; throws ShapeError on mismatched shapes.
double max_abs_deviation(const EvolutionTrace& a, const EvolutionTrace& b);

// Header `step,q0,...,q{n-1}`, one row per step including step 0. With an
// exact trace, adds `exact_q0,...` columns and the per-row max |difference|.
std::string trace_csv(const EvolutionTrace& trace, const EvolutionTrace* exact = nullptr);
void write_trace_csv(const EvolutionTrace& trace, const std::filesystem::path& path,
                     const EvolutionTrace* exact = nullptr);

// Header `step,h_x,J0,...`, steps numbered from 1.
void write_schedule_csv(const IsingSchedule& schedule, const std::filesystem::path& path);

}  // namespace soniq::ising
