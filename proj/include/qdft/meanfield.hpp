#pragma once

#include <qdft/integrals.hpp>
#include <qdft/linalg.hpp>

#include <vector>

namespace qdft {

/// Closed-shell SCF outcome. `density` is spin-summed (trace = n_electrons)
/// and, when converged, idempotent in the D*D = 2D sense.
struct MeanFieldResult {
  double energy = 0.0;
  Vector orbital_energies;
  Matrix orbital_coefficients;  ///< columns are orbitals in the input basis
  Matrix density;
  int n_electrons = 0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_history;

  int n_occupied() const noexcept { return n_electrons / 2; }
};

struct RhfOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;          ///< |dE| in Hartree
  double density_tolerance = 1e-9;   ///< max |D_new - D|
  double mixing = 0.5;               ///< weight of the new density, 1 = plain Roothaan
  double degeneracy_tolerance = 1e-8;
};

/// F_pq = h_pq + sum_rs D_rs [ (pq|rs) - 1/2 (pr|sq) ].
Matrix build_fock(const IntegralSet& set, const Matrix& density);
Matrix build_fock(const IntegralSet& set, const TwoBodyTensor& eri, const Matrix& density);

/// Two-electron part G[D] of the Fock matrix.
Matrix coulomb_exchange(const TwoBodyTensor& eri, const Matrix& density);

/// 1/2 sum_pq D_pq (h_pq + F_pq) + core energy.
double mean_field_energy(const IntegralSet& set, const Matrix& density, const Matrix& fock);

/// 2 * C_occ C_occ^T over the listed columns of `orbitals`.
Matrix closed_shell_density(const Matrix& orbitals, const std::vector<int>& occupied);
Matrix closed_shell_density(const Matrix& orbitals, int n_occupied);

/// Restricted Hartree-Fock in the orthonormal basis of `set` (overlap = 1),
/// starting from the core-Hamiltonian guess, with linear density mixing.
/// Throws UnsupportedSystem for odd electron counts, MS2 != 0 or a
/// degenerate HOMO/LUMO pair. Non-convergence is reported through the flag.
MeanFieldResult solve_rhf(const IntegralSet& set, const RhfOptions& options = {});

}  // namespace qdft
