#pragma once

#include <qdft/activespace.hpp>
#include <qdft/integrals.hpp>
#include <qdft/meanfield.hpp>
#include <qdft/vqe.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qdft {

enum class ActiveSolverKind { Vqe, Fci };

std::string to_string(ActiveSolverKind k);
ActiveSolverKind parse_solver(const std::string& text);

struct EmbeddingConfig {
  double threshold = 1e-7;  ///< Hartree, on |E_i - E_{i-1}|
  int max_iterations = 20;
  double damping_floor = 0.05;
  double damping_scale = 0.2;
  ActiveSolverKind active_solver = ActiveSolverKind::Vqe;
  /// Keep iterating until at least this many iterations even when converged.
  int min_iterations = 1;

  void validate() const;
};

/// alpha_i = max(floor, scale / sqrt(i)), i >= 1.
double damping_factor(int i, const EmbeddingConfig& config);

struct IterationRecord {
  int iteration = 0;
  double alpha = 0.0;
  double energy = 0.0;
  double delta_energy = 0.0;  ///< against the previous iteration, or RHF for i = 1
  int solver_evaluations = 0;
};

struct EmbeddingState {
  int iteration = 0;  ///< 1-based count of completed iterations
  Matrix damped_density;
  std::vector<double> energy_history;
  std::vector<double> alpha_history;
  std::vector<IterationRecord> log;
  bool converged = false;

  double energy() const { return energy_history.empty() ? 0.0 : energy_history.back(); }
};

struct ActiveSolution {
  double energy = 0.0;  ///< electronic, inactive energy excluded
  Matrix one_rdm;
  int evaluations = 1;
};

/// Active-space solver hook; `iteration` is 1-based.
using ActiveSolver = std::function<ActiveSolution(const ActiveHamiltonian& h, int iteration)>;

ActiveSolver make_active_solver(ActiveSolverKind kind, const VqeConfig& vqe_config = {});

struct EmbeddingResult {
  EmbeddingState state;
  double energy = 0.0;
  double rhf_energy = 0.0;
  ActiveSpaceSpec spec;
  OrbitalSelection selection;
  Matrix orbitals;
  Matrix active_rdm;  ///< from the last iteration
};

/// Damped self-consistency between the active solver and the mean-field bath
/// in the fixed RHF orbitals. Each iteration reduces with the bath part of
/// the previous density, solves the active problem, rebuilds
/// D_new = 2 C_I C_I^T + C_A gamma C_A^T and mixes D_i = D_{i-1} + alpha_i
/// (D_new - D_{i-1}). Convergence is tested from the second iteration on.
/// With `resume` the loop continues from that state.
EmbeddingResult run_embedding(const IntegralSet& set, const ActiveSpaceSpec& spec, const EmbeddingConfig& config,
                              const ActiveSolver& solver, const EmbeddingState* resume = nullptr);
EmbeddingResult run_embedding(const IntegralSet& set, const ActiveSpaceSpec& spec, const EmbeddingConfig& config,
                              const VqeConfig& vqe_config = {}, const EmbeddingState* resume = nullptr);

/// Bath part of a density: D minus its active-active block.
Matrix bath_density(const Matrix& density, const Matrix& orbitals, const OrbitalSelection& selection);

/// core + 1/2 tr(D_bath (h + F[D_bath])) + active_energy.
double total_energy(const IntegralSet& set, const Matrix& density, double active_energy, const Matrix& orbitals,
                    const OrbitalSelection& selection);

/// CSV: iteration,alpha,energy,delta_energy,solver_evaluations
void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& log);

}  // namespace qdft
