#pragma once

#include <qdft/linalg.hpp>
#include <qdft/pauli.hpp>
#include <qdft/qubitmap.hpp>

#include <cstdint>
#include <string_view>

namespace qdft {

/// Dense n-qubit state. Amplitude index bit k is qubit k (qubit 0 is the
/// least significant bit), the same convention as PauliString.
struct Statevector {
  int n_qubits = 0;
  ComplexVector amplitudes;

  Statevector() = default;
  explicit Statevector(int n);

  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << n_qubits; }
  double norm() const { return amplitudes.norm(); }
};

/// Computational basis state |occupation>.
Statevector hf_state(int n_qubits, std::uint64_t occupation);
/// Bit string written highest qubit first, e.g. "10" is qubit 1 set.
Statevector hf_state(int n_qubits, std::string_view bits);

void apply_pauli_inplace(Statevector& state, const PauliString& p);
Statevector apply_pauli(Statevector state, const PauliString& p);

/// state <- exp(i angle P) state = cos(angle) state + i sin(angle) P state.
void apply_pauli_exponential_inplace(Statevector& state, const PauliString& p, double angle);
Statevector apply_pauli_exponential(Statevector state, const PauliString& p, double angle);

/// <psi|op|psi> for a Hermitian op. Throws ContractViolation when the
/// imaginary residue exceeds 1e-10.
double expectation(const Statevector& state, const PauliSum& op);

/// Spin-summed 1-RDM gamma_pq = sum_s <a+_ps a_qs> of a state written in the
/// occupation (Jordan-Wigner) basis of 2 * n_spatial blocked spin orbitals.
Matrix one_rdm_from_occupation_state(const Statevector& state, int n_spatial);

/// Rewrites an encoded state in the occupation basis of `n_modes` spin
/// orbitals. ParityReduced states are lifted into the (n_electrons, n_alpha)
/// sector first.
Statevector to_occupation_basis(const Statevector& state, int n_modes, QubitEncoding encoding, int n_electrons,
                                int n_alpha);

}  // namespace qdft
