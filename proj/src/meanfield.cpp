#include <qdft/errors.hpp>
#include <qdft/meanfield.hpp>

#include <cmath>
#include <numeric>

namespace qdft {

namespace {
constexpr const char* kModule = "meanfield";

void check_density(const IntegralSet& set, const Matrix& density) {
  if (density.rows() != set.n_orbitals() || density.cols() != set.n_orbitals()) {
    throw ContractViolation(kModule, "density is " + std::to_string(density.rows()) + "x" +
                                         std::to_string(density.cols()) + ", expected " +
                                         std::to_string(set.n_orbitals()) + " orbitals");
  }
}
}  // namespace

Matrix coulomb_exchange(const TwoBodyTensor& eri, const Matrix& density) {
  const int n = eri.size();
  Matrix g = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const double d = density(r, s);
          if (d == 0.0) continue;
          acc += d * (eri(p, q, r, s) - 0.5 * eri(p, r, s, q));
        }
      }
      g(p, q) = acc;
      g(q, p) = acc;
    }
  }
  return g;
}

Matrix build_fock(const IntegralSet& set, const TwoBodyTensor& eri, const Matrix& density) {
  check_density(set, density);
  return set.one_body() + coulomb_exchange(eri, density);
}

Matrix build_fock(const IntegralSet& set, const Matrix& density) {
  return build_fock(set, dense_two_body(set), density);
}

double mean_field_energy(const IntegralSet& set, const Matrix& density, const Matrix& fock) {
  return 0.5 * density.cwiseProduct(set.one_body() + fock).sum() + set.core_energy();
}

Matrix closed_shell_density(const Matrix& orbitals, const std::vector<int>& occupied) {
  Matrix c(orbitals.rows(), static_cast<Eigen::Index>(occupied.size()));
  for (std::size_t k = 0; k < occupied.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = orbitals.col(occupied[k]);
  return 2.0 * c * c.transpose();
}

// Goes through the index-list overload so both forms agree bitwise.
Matrix closed_shell_density(const Matrix& orbitals, int n_occupied) {
  std::vector<int> occ(static_cast<std::size_t>(n_occupied));
  std::iota(occ.begin(), occ.end(), 0);
  return closed_shell_density(orbitals, occ);
}

MeanFieldResult solve_rhf(const IntegralSet& set, const RhfOptions& options) {
  if (set.n_electrons() % 2 != 0 || set.spin_2ms() != 0) {
    throw UnsupportedSystem(kModule, "restricted closed-shell solver needs an even electron count and MS2 = 0");
  }
  if (options.max_iterations < 1) throw ContractViolation(kModule, "max_iterations must be >= 1");
  if (!(options.mixing > 0.0 && options.mixing <= 1.0)) {
    throw ContractViolation(kModule, "mixing fraction must lie in (0, 1]");
  }

  const int n = set.n_orbitals();
  const int n_occ = set.n_electrons() / 2;
  const TwoBodyTensor eri = dense_two_body(set);

  auto aufbau = [&](const Matrix& fock) {
    auto eig = symmetric_eigen(fock);
    if (n_occ > 0 && n_occ < n) {
      const double gap = eig.values(n_occ) - eig.values(n_occ - 1);
      if (gap < options.degeneracy_tolerance) {
        throw UnsupportedSystem(kModule, "degenerate HOMO/LUMO at the Fermi level (gap " + std::to_string(gap) +
                                             " Ha); fractional occupation is not supported");
      }
    }
    return eig;
  };

  MeanFieldResult out;
  out.n_electrons = set.n_electrons();

  // Core-Hamiltonian guess.
  auto eig = aufbau(set.one_body());
  Matrix density = closed_shell_density(eig.vectors, n_occ);
  double energy = mean_field_energy(set, density, build_fock(set, eri, density));
  out.energy_history.push_back(energy);

  for (int it = 1; it <= options.max_iterations; ++it) {
    const Matrix fock = build_fock(set, eri, density);
    eig = aufbau(fock);
    const Matrix d_new = closed_shell_density(eig.vectors, n_occ);
    const double e_new = mean_field_energy(set, d_new, build_fock(set, eri, d_new));
    out.energy_history.push_back(e_new);
    out.iterations = it;

    const double d_change = (d_new - density).cwiseAbs().maxCoeff();
    if (std::abs(e_new - energy) < options.tolerance && d_change < options.density_tolerance) {
      // Final orbitals diagonalise the Fock matrix of the converged density.
      const Matrix f_final = build_fock(set, eri, d_new);
      eig = symmetric_eigen(f_final);
      out.orbital_energies = eig.values;
      out.orbital_coefficients = eig.vectors;
      out.density = closed_shell_density(eig.vectors, n_occ);
      out.energy = mean_field_energy(set, out.density, build_fock(set, eri, out.density));
      out.converged = true;
      return out;
    }
    density = (1.0 - options.mixing) * density + options.mixing * d_new;
    energy = e_new;
  }

  out.orbital_energies = eig.values;
  out.orbital_coefficients = eig.vectors;
  out.density = closed_shell_density(eig.vectors, n_occ);
  out.energy = mean_field_energy(set, out.density, build_fock(set, eri, out.density));
  out.converged = false;
  return out;
}

}  // namespace qdft
