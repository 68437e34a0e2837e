#pragma once

#include <qdft/activespace.hpp>
#include <qdft/errors.hpp>
#include <qdft/pauli.hpp>
#include <qdft/statevector.hpp>
#include <qdft/uccsd.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qdft {

struct VqeConfig {
  std::uint64_t seed = 0;
  double sigma = 1e-3;
  int max_iterations = 50;     ///< optimizer outer iterations
  double tolerance = 1e-6;     ///< Hartree, on the change between accepted iterates
  double gradient_step = 1e-6; ///< central differences
  QubitEncoding encoding = QubitEncoding::ParityReduced;

  void validate() const;
};

/// One objective evaluation. `accepted` marks the optimizer's iterates; the
/// other rows are line-search trials and finite-difference probes.
struct TracePoint {
  int evaluation = 0;
  double energy = 0.0;
  bool accepted = false;
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> parameters;
  std::vector<TracePoint> trace;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  Statevector state;  ///< optimal state in the ansatz encoding
};

class OptimizerError : public Error {
 public:
  OptimizerError(const std::string& message, std::vector<TracePoint> trace)
      : Error("vqe", message), trace_(std::move(trace)) {}
  const std::vector<TracePoint>& trace() const noexcept { return trace_; }

 private:
  std::vector<TracePoint> trace_;
};

/// n draws from Normal(0, sigma^2) with a seeded mt19937_64.
std::vector<double> initialize_parameters(int n, const VqeConfig& config);

/// Minimises <psi(theta)|H|psi(theta)> over the ansatz parameters inside
/// [-pi, pi]. `hamiltonian` must be expressed in `mapped.encoding`.
VqeResult minimize(const PauliSum& hamiltonian, const UccsdAnsatz& ansatz, const MappedAnsatz& mapped,
                   const VqeConfig& config);
VqeResult minimize(const PauliSum& hamiltonian, const UccsdAnsatz& ansatz, const VqeConfig& config);

/// Qubit Hamiltonian of an active space (inactive energy excluded).
PauliSum active_qubit_hamiltonian(const ActiveHamiltonian& h, QubitEncoding encoding);

/// VQE on an active space, plus the spin-summed 1-RDM of the optimal state.
struct ActiveVqeResult {
  VqeResult vqe;
  Matrix one_rdm;
};
ActiveVqeResult solve_active_vqe(const ActiveHamiltonian& h, const VqeConfig& config);

/// CSV with header "evaluation_index,energy,accepted".
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace qdft
