#pragma once

#include <qdft/activespace.hpp>
#include <qdft/fermion.hpp>
#include <qdft/qubitmap.hpp>
#include <qdft/statevector.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qdft {

/// Occupied -> virtual spin-orbital excitation (blocked spin ordering). One
/// index each for singles, two each (ascending) for doubles.
struct Excitation {
  std::vector<int> occupied;
  std::vector<int> virtuals;

  bool is_single() const noexcept { return occupied.size() == 1; }
  std::string label() const;  ///< "2->6" or "0,6->2,9"
};

struct UccsdAnsatz {
  int n_spatial = 0;
  int n_electrons = 0;
  int n_alpha = 0;
  std::vector<Excitation> excitations;
  std::uint64_t reference = 0;  ///< HF occupation bits over 2 * n_spatial modes
  int trotter_steps = 1;

  int n_modes() const noexcept { return 2 * n_spatial; }
  int n_parameters() const noexcept { return static_cast<int>(excitations.size()); }
};

/// Spin-conserving singles then doubles from the closed-shell reference.
/// Singles are ordered by (occ, virt), doubles by (occ pair, virt pair).
UccsdAnsatz build_uccsd(const ActiveSpaceSpec& spec);

/// T - T+ for one excitation, T = a+_a a_i or a+_a a+_b a_j a_i.
FermionOperator excitation_generator(const Excitation& e, int n_modes);

/// Generators already mapped to qubits. Each generator T - T+ becomes
/// sum_k i c_k P_k with mutually commuting P_k, so exp(theta (T - T+)) is the
/// product of exp(i theta c_k P_k).
struct MappedAnsatz {
  QubitEncoding encoding = QubitEncoding::JordanWigner;
  int n_qubits = 0;
  std::uint64_t reference_index = 0;
  struct Factor {
    PauliString pauli;
    double coefficient = 0.0;
  };
  std::vector<std::vector<Factor>> generators;
};

MappedAnsatz map_ansatz(const UccsdAnsatz& ansatz, QubitEncoding encoding);

/// Single Trotter step: HF state followed by each excitation's exponential in
/// enumeration order.
Statevector evolve_ansatz(const UccsdAnsatz& ansatz, std::span<const double> parameters, const MappedAnsatz& mapped);

}  // namespace qdft
