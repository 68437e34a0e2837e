#include <qdft/csv.hpp>
#include <qdft/embedding.hpp>
#include <qdft/errors.hpp>
#include <qdft/fci.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace qdft {

namespace {

constexpr const char* kModule = "embedding";

Matrix columns(const Matrix& c, const std::vector<int>& idx) {
  Matrix out(c.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = c.col(idx[k]);
  return out;
}

}  // namespace

std::string to_string(ActiveSolverKind k) { return k == ActiveSolverKind::Vqe ? "vqe" : "fci"; }

ActiveSolverKind parse_solver(const std::string& text) {
  if (text == "vqe" || text == "VQE") return ActiveSolverKind::Vqe;
  if (text == "fci" || text == "FCI") return ActiveSolverKind::Fci;
  throw ConfigError(kModule, "unknown active solver '" + text + "' (expected vqe or fci)");
}

void EmbeddingConfig::validate() const {
  if (!(threshold > 0)) throw ConfigError(kModule, "threshold must be positive");
  if (max_iterations < 1) throw ConfigError(kModule, "max_iterations must be at least 1");
  if (!(damping_floor > 0 && damping_floor <= damping_scale && damping_scale <= 1)) {
    throw ConfigError(kModule, "damping needs 0 < floor <= scale <= 1");
  }
  if (min_iterations < 1 || min_iterations > max_iterations) {
    throw ConfigError(kModule, "min_iterations must lie in [1, max_iterations]");
  }
}

double damping_factor(int i, const EmbeddingConfig& config) {
  if (i < 1) throw ContractViolation(kModule, "damping is defined for iterations i >= 1, got " + std::to_string(i));
  return std::max(config.damping_floor, config.damping_scale / std::sqrt(static_cast<double>(i)));
}

ActiveSolver make_active_solver(ActiveSolverKind kind, const VqeConfig& vqe_config) {
  if (kind == ActiveSolverKind::Fci) {
    return [](const ActiveHamiltonian& h, int) {
      const FciResult r = fci_solve(h, h.n_electrons(), 0);
      return ActiveSolution{r.ground_energy, r.one_rdm, 1};
    };
  }
  return [vqe_config](const ActiveHamiltonian& h, int) {
    const ActiveVqeResult r = solve_active_vqe(h, vqe_config);
    return ActiveSolution{r.vqe.energy, r.one_rdm, r.vqe.evaluations};
  };
}

Matrix bath_density(const Matrix& density, const Matrix& orbitals, const OrbitalSelection& selection) {
  if (selection.active.empty()) return density;
  const Matrix ca = columns(orbitals, selection.active);
  const Matrix pa = ca * ca.transpose();
  return density - pa * density * pa;
}

double total_energy(const IntegralSet& set, const Matrix& density, double active_energy, const Matrix& orbitals,
                    const OrbitalSelection& selection) {
  const Matrix bath = bath_density(density, orbitals, selection);
  return mean_field_energy(set, bath, build_fock(set, bath)) + active_energy;
}

EmbeddingResult run_embedding(const IntegralSet& set, const ActiveSpaceSpec& spec, const EmbeddingConfig& config,
                              const ActiveSolver& solver, const EmbeddingState* resume) {
  config.validate();
  spec.validate();
  const MeanFieldResult mf = solve_rhf(set);
  if (!mf.converged) throw ContractViolation(kModule, "RHF reference did not converge");

  EmbeddingResult out;
  out.spec = spec;
  out.rhf_energy = mf.energy;
  out.orbitals = mf.orbital_coefficients;
  out.selection = select_orbitals(mf, spec);
  const Matrix& C = out.orbitals;
  const Matrix ca = columns(C, out.selection.active);
  const Matrix inactive_density = closed_shell_density(C, out.selection.inactive);

  EmbeddingState& st = out.state;
  if (resume) {
    st = *resume;
    if (st.damped_density.rows() != set.n_orbitals() || st.damped_density.cols() != set.n_orbitals()) {
      throw ContractViolation(kModule, "resume state density does not match the integral set");
    }
    st.converged = false;
  } else {
    st.damped_density = mf.density;
  }

  // A resumed run may take up to max_iterations further iterations.
  const int start = st.iteration + 1;
  const int stop = st.iteration + config.max_iterations;
  for (int i = start; i <= stop; ++i) {
    const Matrix bath = bath_density(st.damped_density, C, out.selection);
    const ActiveHamiltonian h = reduce(set, C, out.selection, bath, spec.n_active_electrons);

    ActiveSolution sol;
    try {
      sol = solver(h, i);
    } catch (const EmbeddedSolverError&) {
      throw;
    } catch (const std::exception& e) {
      throw EmbeddedSolverError(i, e.what());
    }
    if (!std::isfinite(sol.energy)) throw EmbeddedSolverError(i, "active solver returned a non-finite energy");
    if (sol.one_rdm.rows() != spec.n_active_orbitals || sol.one_rdm.cols() != spec.n_active_orbitals) {
      throw EmbeddedSolverError(i, "active 1-RDM has the wrong shape");
    }

    const Matrix d_new = inactive_density + ca * sol.one_rdm * ca.transpose();
    const double alpha = damping_factor(i, config);
    st.damped_density = st.damped_density + alpha * (d_new - st.damped_density);
    const double e = total_energy(set, st.damped_density, sol.energy, C, out.selection);

    const double previous = st.energy_history.empty() ? mf.energy : st.energy_history.back();
    st.iteration = i;
    st.alpha_history.push_back(alpha);
    st.energy_history.push_back(e);
    st.log.push_back({i, alpha, e, e - previous, sol.evaluations});
    out.active_rdm = sol.one_rdm;

    if (i >= 2 && std::abs(e - previous) < config.threshold && i >= config.min_iterations) {
      st.converged = true;
      break;
    }
  }
  out.energy = st.energy();
  return out;
}

EmbeddingResult run_embedding(const IntegralSet& set, const ActiveSpaceSpec& spec, const EmbeddingConfig& config,
                              const VqeConfig& vqe_config, const EmbeddingState* resume) {
  return run_embedding(set, spec, config, make_active_solver(config.active_solver, vqe_config), resume);
}

void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& log) {
  CsvWriter csv(out);
  csv.row({"iteration", "alpha", "energy", "delta_energy", "solver_evaluations"});
  for (const auto& r : log) {
    csv.row({std::to_string(r.iteration), format_number(r.alpha), format_number(r.energy), format_number(r.delta_energy),
             std::to_string(r.solver_evaluations)});
  }
}

}  // namespace qdft
