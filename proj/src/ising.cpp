#include "soniq/ising.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fstream>

#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace soniq::ising {

void validate(const IsingSchedule& schedule) {
  if (schedule.n_spins < 1 || schedule.n_spins > kMaxQubits) {
    throw CapacityError("n_spins must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (schedule.steps.empty()) throw ArgumentError("schedule has no steps");
  if (!(schedule.dt > 0.0)) throw ArgumentError("dt must be positive");
  for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
    if (schedule.steps[k].couplings.size() != static_cast<std::size_t>(schedule.n_spins)) {
      throw ShapeError("step " + std::to_string(k) + " has " +
                       std::to_string(schedule.steps[k].couplings.size()) + " couplings, expected " +
                       std::to_string(schedule.n_spins));
    }
  }
}

double EvolutionTrace::mean_marginal(std::size_t step) const {
  const auto& row = marginals.at(step);
  return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
}

GateSequence build_trotter_step(std::span<const double> couplings, double field, double dt) {
  const int n = static_cast<int>(couplings.size());
  if (n < 1) throw ShapeError("coupling vector is empty");
  GateSequence gates;
  gates.reserve(static_cast<std::size_t>(4 * n));
  if (n >= 2) {
    for (int parity = 0; parity < 2; ++parity) {
      for (int q = parity; q < n; q += 2) {
        const int next = (q + 1) % n;
        const double angle = 2.0 * couplings[static_cast<std::size_t>(q)] * dt;
        gates.push_back({Gate::Kind::kCnot, q, next});
        gates.push_back({Gate::Kind::kRz, next, -1, angle});
        gates.push_back({Gate::Kind::kCnot, q, next});
      }
    }
  }
  for (int q = 0; q < n; ++q) gates.push_back({Gate::Kind::kRx, q, -1, 2.0 * field * dt});
  return gates;
}

void apply(Statevector& state, const GateSequence& gates) {
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Kind::kCnot: state.apply_cnot(g.q0, g.q1); break;
      case Gate::Kind::kRz: state.apply_rz(g.q0, g.angle); break;
      case Gate::Kind::kRx: state.apply_rx(g.q0, g.angle); break;
    }
  }
}

EvolutionTrace evolve(const IsingSchedule& schedule, Statevector state) {
  validate(schedule);
  if (state.n_qubits() != schedule.n_spins) {
    throw ShapeError("initial state has " + std::to_string(state.n_qubits()) +
                     " qubits but schedule has " + std::to_string(schedule.n_spins) + " spins");
  }
  EvolutionTrace trace;
  trace.marginals.reserve(schedule.steps.size() + 1);
  trace.marginals.push_back(marginal_one_probabilities(state));
  for (const auto& step : schedule.steps) {
    ising::apply(state, build_trotter_step(step.couplings, step.field, schedule.dt));
    trace.marginals.push_back(marginal_one_probabilities(state));
  }
  return trace;
}

namespace {

// Dense H = sum_n J_n Z_n Z_{n+1} + h sum_n X_n in the little-endian basis.
Eigen::MatrixXd dense_hamiltonian(const IsingStep& step, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    auto bit = [i](int q) { return static_cast<int>((i >> q) & 1); };
    double diag = 0.0;
    for (int q = 0; q < n; ++q) {
      const int next = (q + 1) % n;
      const double zz = (bit(q) == bit(next)) ? 1.0 : -1.0;
      diag += step.couplings[static_cast<std::size_t>(q)] * zz;
    }
    h(i, i) = diag;
    for (int q = 0; q < n; ++q) h(i ^ (Eigen::Index{1} << q), i) += step.field;
  }
  return h;
}

}  // namespace

EvolutionTrace exact_evolve_small(const IsingSchedule& schedule, const Statevector& initial) {
  validate(schedule);
  if (schedule.n_spins > kMaxExactSpins) {
    throw CapacityError("exact evolution supports at most " + std::to_string(kMaxExactSpins) +
                        " spins");
  }
  if (initial.n_qubits() != schedule.n_spins) throw ShapeError("initial state dimension mismatch");

  const auto amps = initial.amplitudes();
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) psi(static_cast<Eigen::Index>(i)) = amps[i];

  EvolutionTrace trace;
  trace.marginals.push_back(marginal_one_probabilities(initial));
  for (const auto& step : schedule.steps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_hamiltonian(step, schedule.n_spins));
    const Eigen::MatrixXcd v = eig.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phases(eig.eigenvalues().size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) {
      phases(j) = std::polar(1.0, -eig.eigenvalues()(j) * schedule.dt);
    }
    psi = v * (phases.asDiagonal() * (v.adjoint() * psi));
    std::vector<Complex> buf(psi.data(), psi.data() + psi.size());
    trace.marginals.push_back(
        marginal_one_probabilities(Statevector::from_amplitudes(std::span<const Complex>(buf))));
  }
  return trace;
}

double max_abs_deviation(const EvolutionTrace& a, const EvolutionTrace& b) {
  if (a.marginals.size() != b.marginals.size()) throw ShapeError("trace lengths differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.marginals.size(); ++k) {
    if (a.marginals[k].size() != b.marginals[k].size()) throw ShapeError("trace widths differ");
    for (std::size_t q = 0; q < a.marginals[k].size(); ++q) {
      worst = std::max(worst, std::abs(a.marginals[k][q] - b.marginals[k][q]));
    }
  }
  return worst;
}

std::string trace_csv(const EvolutionTrace& trace, const EvolutionTrace* exact) {
  const std::size_t n = trace.n_spins();
  if (exact && (exact->marginals.size() != trace.marginals.size() || exact->n_spins() != n)) {
    throw ShapeError("exact trace shape differs from the trotter trace");
  }
  std::string out = "step";
  for (std::size_t q = 0; q < n; ++q) out += ",q" + std::to_string(q);
  if (exact) {
    for (std::size_t q = 0; q < n; ++q) out += ",exact_q" + std::to_string(q);
    out += ",max_abs_dev";
  }
  out += '\n';
  for (std::size_t k = 0; k < trace.marginals.size(); ++k) {
    out += std::to_string(k);
    for (double v : trace.marginals[k]) out += ',' + format_double(v);
    if (exact) {
      double worst = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        out += ',' + format_double(exact->marginals[k][q]);
        worst = std::max(worst, std::abs(exact->marginals[k][q] - trace.marginals[k][q]));
      }
      out += ',' + format_double(worst);
    }
    out += '\n';
  }
  return out;
}

void write_trace_csv(const EvolutionTrace& trace, const std::filesystem::path& path,
                     const EvolutionTrace* exact) {
  const auto text = trace_csv(trace, exact);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_schedule_csv(const IsingSchedule& schedule, const std::filesystem::path& path) {
  std::string text = "step,h_x";
  for (int q = 0; q < schedule.n_spins; ++q) text += ",J" + std::to_string(q);
  text += '\n';
  for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
    text += std::to_string(k + 1) + ',' + format_double(schedule.steps[k].field);
    for (double j : schedule.steps[k].couplings) text += ',' + format_double(j);
    text += '\n';
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace soniq::ising
