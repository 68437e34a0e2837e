#include <qdft/errors.hpp>
#include <qdft/uccsd.hpp>

#include <cmath>

namespace qdft {

namespace {

constexpr const char* kModule = "sim";

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

}  // namespace

std::string Excitation::label() const { return join(occupied) + "->" + join(virtuals); }

UccsdAnsatz build_uccsd(const ActiveSpaceSpec& spec) {
  spec.validate();
  UccsdAnsatz a;
  a.n_spatial = spec.n_active_orbitals;
  a.n_electrons = spec.n_active_electrons;
  a.n_alpha = spec.n_active_electrons / 2;
  const int n = a.n_spatial;
  auto spin = [n](int mode) { return mode >= n ? 1 : 0; };

  std::vector<int> occ, virt;
  for (int m = 0; m < 2 * n; ++m) {
    const bool occupied = (m % n) < a.n_alpha;
    (occupied ? occ : virt).push_back(m);
    if (occupied) a.reference |= std::uint64_t{1} << m;
  }

  for (int i : occ) {
    for (int v : virt) {
      if (spin(i) == spin(v)) a.excitations.push_back({{i}, {v}});
    }
  }
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      for (std::size_t k = 0; k < virt.size(); ++k) {
        for (std::size_t l = k + 1; l < virt.size(); ++l) {
          if (spin(occ[i]) + spin(occ[j]) != spin(virt[k]) + spin(virt[l])) continue;
          a.excitations.push_back({{occ[i], occ[j]}, {virt[k], virt[l]}});
        }
      }
    }
  }
  return a;
}

FermionOperator excitation_generator(const Excitation& e, int n_modes) {
  FermionOperator t(n_modes);
  FermionOperator::Product product;
  for (auto it = e.virtuals.begin(); it != e.virtuals.end(); ++it) product.push_back({*it, true});
  for (auto it = e.occupied.rbegin(); it != e.occupied.rend(); ++it) product.push_back({*it, false});
  t.add_term(std::move(product), 1.0);
  return t - t.adjoint();
}

MappedAnsatz map_ansatz(const UccsdAnsatz& ansatz, QubitEncoding encoding) {
  MappedAnsatz m;
  m.encoding = encoding;
  m.n_qubits = encoded_qubits(ansatz.n_modes(), encoding);
  m.reference_index = encode_determinant(ansatz.reference, ansatz.n_modes(), encoding);
  for (const auto& e : ansatz.excitations) {
    const PauliSum g =
        map_fermion_operator(excitation_generator(e, ansatz.n_modes()), encoding, ansatz.n_electrons, ansatz.n_alpha);
    std::vector<MappedAnsatz::Factor> factors;
    for (const auto& [p, c] : g.terms()) {
      if (std::abs(c.real()) > 1e-12) {
        throw ContractViolation(kModule, "generator for " + e.label() + " is not anti-Hermitian");
      }
      factors.push_back({p, c.imag()});
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (std::size_t j = i + 1; j < factors.size(); ++j) {
        if (!factors[i].pauli.commutes_with(factors[j].pauli)) {
          throw ContractViolation(kModule, "generator terms for " + e.label() + " do not commute");
        }
      }
    }
    m.generators.push_back(std::move(factors));
  }
  return m;
}

Statevector evolve_ansatz(const UccsdAnsatz& ansatz, std::span<const double> parameters, const MappedAnsatz& mapped) {
  if (static_cast<int>(parameters.size()) != ansatz.n_parameters() ||
      mapped.generators.size() != parameters.size()) {
    throw ContractViolation(kModule, "expected " + std::to_string(ansatz.n_parameters()) + " parameters, got " +
                                         std::to_string(parameters.size()));
  }
  Statevector state = hf_state(mapped.n_qubits, mapped.reference_index);
  for (int step = 0; step < ansatz.trotter_steps; ++step) {
    for (std::size_t k = 0; k < parameters.size(); ++k) {
      const double theta = parameters[k] / ansatz.trotter_steps;
      for (const auto& f : mapped.generators[k]) apply_pauli_exponential_inplace(state, f.pauli, theta * f.coefficient);
    }
  }
  return state;
}

}  // namespace qdft
