#pragma once

#include <qdft/integrals.hpp>
#include <qdft/meanfield.hpp>

#include <string>
#include <vector>

namespace qdft {

/// (n_active_electrons, n_active_orbitals) window. The window is centred on
/// the Fermi level: the n_active_electrons/2 highest occupied orbitals plus
/// the lowest virtuals. (0, 0) is the empty active space.
struct ActiveSpaceSpec {
  int n_active_electrons = 0;
  int n_active_orbitals = 0;

  /// Throws SpecError for odd/negative counts or more electrons than
  /// 2 * orbitals.
  void validate() const;
  std::string label() const;  ///< "(4e,6o)"
};

/// Parses "NE,NO" as used on the command line.
ActiveSpaceSpec parse_active_spec(const std::string& text);

struct OrbitalSelection {
  std::vector<int> inactive;  ///< doubly occupied, frozen
  std::vector<int> active;
};

OrbitalSelection select_orbitals(const MeanFieldResult& mf, const ActiveSpaceSpec& spec);
OrbitalSelection select_orbitals(int n_orbitals, int n_electrons, const ActiveSpaceSpec& spec);

/// Active-space Hamiltonian. `integrals` holds the effective one-body matrix,
/// the active (pq|rs) in canonical storage and, as its core energy, the
/// inactive energy (nuclear repulsion plus frozen-orbital contribution).
struct ActiveHamiltonian {
  IntegralSet integrals;

  int n_orbitals() const noexcept { return integrals.n_orbitals(); }
  int n_electrons() const noexcept { return integrals.n_electrons(); }
  double inactive_energy() const noexcept { return integrals.core_energy(); }
  const Matrix& one_body_eff() const noexcept { return integrals.one_body(); }
  double two_body(int p, int q, int r, int s) const { return integrals.two_body(p, q, r, s); }
};

/// Treats a whole integral set as an active Hamiltonian (no frozen orbitals,
/// identity orbital basis).
ActiveHamiltonian as_active_hamiltonian(const IntegralSet& set);

/// Frozen-core reduction in the orbital basis `orbitals` (columns in the
/// input basis). The frozen density `bath_density` is any n x n matrix in the
/// input basis: h~ = C_A^T (h + G[D_bath]) C_A and
/// E_inactive = core + 1/2 tr(D_bath (h + F[D_bath])).
ActiveHamiltonian reduce(const IntegralSet& set, const Matrix& orbitals, const OrbitalSelection& selection,
                         const Matrix& bath_density, int n_active_electrons);

/// Reduction with the closed-shell density of the inactive orbitals of `mf`.
ActiveHamiltonian reduce(const IntegralSet& set, const MeanFieldResult& mf, const ActiveSpaceSpec& spec);

/// Active-orbital integrals (pq|rs) = sum C_ap C_bq C_cr C_ds (ab|cd).
TwoBodyTensor transform_two_body(const TwoBodyTensor& eri, const Matrix& orbitals);

}  // namespace qdft
