#pragma once

#include <qdft/pauli.hpp>

#include <vector>

namespace qdft {

/// Z2 symmetries of a Pauli Hamiltonian and the Clifford-rotated operator
/// they taper. Each generator tau_k is mapped by U_k = (tau_k + sigma_k)/sqrt2
/// onto a single-qubit Pauli sigma_k acting on `tapered_qubits[k]`; fixing
/// that qubit to the sector eigenvalue removes it.
struct TaperingResult {
  std::vector<PauliString> symmetry_generators;
  std::vector<PauliString> single_qubit_paulis;
  std::vector<int> tapered_qubits;
  std::vector<int> sector_labels;  ///< +1/-1 per generator for tapered_operator
  PauliSum rotated_operator;       ///< U H U on the full register
  PauliSum tapered_operator;
  int qubit_count_before = 0;
  int qubit_count_after = 0;

  int n_generators() const noexcept { return static_cast<int>(symmetry_generators.size()); }

  /// Tapered operator for an explicit sector (one +1/-1 per generator).
  PauliSum taper(const std::vector<int>& sector) const;

  /// Every sector, in binary order: bit k set means label -1 for generator k.
  std::vector<std::vector<int>> all_sectors() const;
};

/// Finds generators of the Pauli symmetries that belong to the group spanned
/// by the Hamiltonian's own terms and commute with all of them (the centre of
/// that group). The tapered operator is built for the all +1 sector.
TaperingResult find_z2_symmetries(const PauliSum& op);

/// Sector with the lowest ground energy among all sectors (dense; small
/// registers only). Ties go to the first sector in all_sectors() order.
std::vector<int> lowest_energy_sector(const TaperingResult& result, double* energy = nullptr);

}  // namespace qdft
