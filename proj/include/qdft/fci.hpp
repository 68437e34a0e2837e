#pragma once

#include <qdft/activespace.hpp>
#include <qdft/linalg.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdft {

struct FciOptions {
  std::size_t dimension_cap = 40000;
  std::size_t dense_limit = 2000;  ///< dense diagonalisation up to this size
  double tolerance = 1e-10;        ///< Lanczos residual norm
  int max_krylov = 120;
  int max_restarts = 40;
  bool force_iterative = false;
};

/// Ground state in the determinant basis |I_a I_b>, alpha string major.
/// Strings are occupation bit masks in increasing integer order.
struct FciResult {
  double ground_energy = 0.0;  ///< electronic, inactive energy excluded
  Vector ground_vector;
  std::size_t basis_dimension = 0;
  Matrix one_rdm;
  int n_orbitals = 0;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<std::uint64_t> alpha_strings;
  std::vector<std::uint64_t> beta_strings;
  double residual_norm = 0.0;  ///< ||H v - E v||
  bool iterative = false;
};

/// `ms2` is 2 S_z = n_alpha - n_beta. Throws SpecError when the electron
/// count and ms2 are inconsistent and CapacityError above the dimension cap.
FciResult fci_solve(const ActiveHamiltonian& h, int n_electrons, int ms2 = 0, const FciOptions& options = {});

/// Spin-summed gamma_pq = <Psi| sum_s a+_ps a_qs |Psi>.
Matrix compute_1rdm(const FciResult& result);

/// Strings of `n_set` electrons in `n_orbitals`, increasing integer order.
std::vector<std::uint64_t> occupation_strings(int n_orbitals, int n_set);

/// Determinant-basis Hamiltonian (dense, Slater-Condon) and matrix-free
/// product, exposed for cross-checks.
Matrix fci_hamiltonian_matrix(const ActiveHamiltonian& h, int n_alpha, int n_beta);
Vector fci_sigma(const ActiveHamiltonian& h, int n_alpha, int n_beta, const Vector& c);

}  // namespace qdft
