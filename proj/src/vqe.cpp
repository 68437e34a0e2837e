#include <qdft/csv.hpp>
#include <qdft/vqe.hpp>

#include <qdft/lbfgsb.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace qdft {

namespace {
constexpr const char* kModule = "vqe";
}

void VqeConfig::validate() const {
  if (!(sigma >= 0)) throw ConfigError(kModule, "sigma must be non-negative");
  if (max_iterations < 1) throw ConfigError(kModule, "max_iterations must be at least 1");
  if (!(tolerance > 0)) throw ConfigError(kModule, "tolerance must be positive");
  if (!(gradient_step > 0)) throw ConfigError(kModule, "gradient_step must be positive");
}

std::vector<double> initialize_parameters(int n, const VqeConfig& config) {
  config.validate();
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (config.sigma == 0.0) return out;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, config.sigma);
  for (auto& v : out) v = normal(rng);
  return out;
}

VqeResult minimize(const PauliSum& hamiltonian, const UccsdAnsatz& ansatz, const MappedAnsatz& mapped,
                   const VqeConfig& config) {
  config.validate();
  if (hamiltonian.n_qubits() != mapped.n_qubits) {
    throw ContractViolation(kModule, "Hamiltonian acts on " + std::to_string(hamiltonian.n_qubits()) +
                                         " qubits, ansatz on " + std::to_string(mapped.n_qubits));
  }
  const int np = ansatz.n_parameters();
  VqeResult result;

  auto energy_at = [&](const Vector& theta) {
    const Statevector psi = evolve_ansatz(ansatz, std::span<const double>(theta.data(), theta.size()), mapped);
    const double e = expectation(psi, hamiltonian);
    result.trace.push_back({static_cast<int>(result.trace.size()), e, false});
    if (!std::isfinite(e)) throw OptimizerError("non-finite energy at evaluation " + std::to_string(result.trace.size() - 1), result.trace);
    return e;
  };

  const double h = config.gradient_step;
  std::size_t last_value_row = 0;
  const Objective objective = [&](const Vector& theta, Vector& g) {
    const double e = energy_at(theta);
    last_value_row = result.trace.size() - 1;
    g.resize(theta.size());
    Vector probe = theta;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      probe[k] = theta[k] + h;
      const double ep = energy_at(probe);
      probe[k] = theta[k] - h;
      const double em = energy_at(probe);
      probe[k] = theta[k];
      g[k] = (ep - em) / (2.0 * h);
    }
    return e;
  };
  const IterateCallback mark = [&](int, const Vector&, double) { result.trace[last_value_row].accepted = true; };

  const auto init = initialize_parameters(np, config);
  Vector x0 = Eigen::Map<const Vector>(init.data(), np);
  const Vector lo = Vector::Constant(np, -std::numbers::pi);
  const Vector hi = Vector::Constant(np, std::numbers::pi);

  LbfgsbOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.f_tolerance = config.tolerance;
  const LbfgsbResult r = lbfgsb_minimize(objective, x0, lo, hi, opts, mark);

  result.energy = r.f;
  result.parameters.assign(r.x.data(), r.x.data() + r.x.size());
  result.evaluations = static_cast<int>(result.trace.size());
  result.iterations = r.iterations;
  result.converged = r.converged;
  result.message = r.message;
  result.state = evolve_ansatz(ansatz, result.parameters, mapped);
  return result;
}

VqeResult minimize(const PauliSum& hamiltonian, const UccsdAnsatz& ansatz, const VqeConfig& config) {
  return minimize(hamiltonian, ansatz, map_ansatz(ansatz, config.encoding), config);
}

PauliSum active_qubit_hamiltonian(const ActiveHamiltonian& h, QubitEncoding encoding) {
  const int ne = h.n_electrons();
  PauliSum op = map_fermion_operator(spin_orbital_hamiltonian(h), encoding, ne, ne / 2);
  if (!op.is_hermitian()) throw ContractViolation(kModule, "mapped Hamiltonian is not Hermitian");
  return op.real_part();
}

ActiveVqeResult solve_active_vqe(const ActiveHamiltonian& h, const VqeConfig& config) {
  const int no = h.n_orbitals(), ne = h.n_electrons();
  ActiveVqeResult out;
  if (no == 0) {
    out.vqe.trace.push_back({0, 0.0, true});
    out.vqe.evaluations = 1;
    out.vqe.converged = true;
    out.vqe.message = "empty active space";
    out.one_rdm = Matrix::Zero(0, 0);
    return out;
  }
  // A single orbital would reduce to a zero-qubit register.
  VqeConfig cfg = config;
  if (cfg.encoding == QubitEncoding::ParityReduced && no < 2) cfg.encoding = QubitEncoding::Parity;
  const UccsdAnsatz ansatz = build_uccsd({ne, no});
  const PauliSum op = active_qubit_hamiltonian(h, cfg.encoding);
  out.vqe = minimize(op, ansatz, cfg);
  const Statevector occ = to_occupation_basis(out.vqe.state, 2 * no, cfg.encoding, ne, ne / 2);
  out.one_rdm = one_rdm_from_occupation_state(occ, no);
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  CsvWriter csv(out);
  csv.row({"evaluation_index", "energy", "accepted"});
  for (const auto& t : trace) csv.row({std::to_string(t.evaluation), format_number(t.energy), t.accepted ? "1" : "0"});
}

}  // namespace qdft
