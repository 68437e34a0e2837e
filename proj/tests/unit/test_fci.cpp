#include <catch_amalgamated.hpp>

#include <qdft/errors.hpp>
#include <qdft/fci.hpp>
#include <qdft/fermion.hpp>
#include <qdft/meanfield.hpp>

#include "oracle_values.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <random>

using namespace qdft;
using Catch::Matchers::WithinAbs;

namespace {

ActiveHamiltonian full(const char* file) {
  const auto set = read_fcidump_file(testing::fixture(file));
  return as_active_hamiltonian(set);
}

Vector natural_occupations(const Matrix& rdm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rdm);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("Two electrons in one orbital") {
  IntegralSet s(1, 2);
  s.set_one_body(0, 0, -0.8);
  s.set_two_body(0, 0, 0, 0, 0.3);
  s.set_core_energy(0.1);
  const auto r = fci_solve(as_active_hamiltonian(s), 2);
  CHECK(r.basis_dimension == 1);
  CHECK_THAT(r.ground_energy, WithinAbs(2 * -0.8 + 0.3, 1e-15));
  CHECK(r.one_rdm(0, 0) == Catch::Approx(2.0));
}

TEST_CASE("Ground energies match the external oracle") {
  struct Case {
    const char* file;
    double energy;
  };
  for (const Case& c : {Case{"h2_sto3g.fcidump", oracle::H2_FCI}, Case{"h2_r150_sto3g.fcidump", oracle::H2_R150_FCI},
                        Case{"h2_r250_sto3g.fcidump", oracle::H2_R250_FCI}, Case{"lih_sto3g.fcidump", oracle::LIH_FCI},
                        Case{"h2o_sto3g.fcidump", oracle::H2O_FCI}}) {
    INFO(c.file);
    const auto h = full(c.file);
    const auto r = fci_solve(h, h.n_electrons());
    CHECK_THAT(r.ground_energy + h.inactive_energy(), WithinAbs(c.energy, 1e-9));
    CHECK(r.residual_norm < 1e-8);
  }
}

TEST_CASE("Natural occupations spread as the bond stretches") {
  struct Case {
    const char* file;
    double hi, lo;
  };
  double last_spread = 3.0;
  for (const Case& c : {Case{"h2_sto3g.fcidump", oracle::H2_NOON_MAX, oracle::H2_NOON_MIN},
                        Case{"h2_r150_sto3g.fcidump", oracle::H2_R150_NOON_MAX, oracle::H2_R150_NOON_MIN},
                        Case{"h2_r250_sto3g.fcidump", oracle::H2_R250_NOON_MAX, oracle::H2_R250_NOON_MIN}}) {
    const auto r = fci_solve(full(c.file), 2);
    const Vector n = natural_occupations(r.one_rdm);
    CHECK_THAT(n[1], WithinAbs(c.hi, 1e-8));
    CHECK_THAT(n[0], WithinAbs(c.lo, 1e-8));
    CHECK(n[1] - n[0] < last_spread);
    last_spread = n[1] - n[0];
  }
}

TEST_CASE("1-RDM invariants") {
  const auto h = full("h2o_sto3g.fcidump");
  const auto r = fci_solve(h, 10);
  CHECK_THAT(r.one_rdm.trace(), WithinAbs(10.0, 1e-10));
  CHECK((r.one_rdm - r.one_rdm.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Vector n = natural_occupations(r.one_rdm);
  CHECK(n.minCoeff() > -1e-10);
  CHECK(n.maxCoeff() < 2.0 + 1e-10);
  CHECK((compute_1rdm(r) - r.one_rdm).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Energy is the expectation of the 1- and 2-body parts") {
  // <H> from the brute-force Fock-space matrix with the FCI vector embedded.
  std::mt19937_64 rng(13);
  const auto set = testing::random_integrals(3, 2, rng);
  const auto h = as_active_hamiltonian(set);
  const auto r = fci_solve(h, 2);
  const ComplexMatrix m = testing::fock_matrix(spin_orbital_hamiltonian(h));
  ComplexVector psi = ComplexVector::Zero(64);
  std::size_t k = 0;
  for (auto a : r.alpha_strings)
    for (auto b : r.beta_strings) {
      // Beta modes sit above the alpha modes.
      psi[a | (b << 3)] = r.ground_vector[k++];
    }
  CHECK_THAT((psi.adjoint() * m * psi)(0, 0).real(), WithinAbs(r.ground_energy, 1e-10));
  CHECK(r.ground_energy >= testing::hermitian_eigenvalues(m)[0] - 1e-10);
}

TEST_CASE("Dense and iterative solvers agree") {
  for (const char* file : {"lih_sto3g.fcidump", "h2o_sto3g.fcidump"}) {
    INFO(file);
    const auto h = full(file);
    const auto d = fci_solve(h, h.n_electrons());
    FciOptions o;
    o.force_iterative = true;
    const auto it = fci_solve(h, h.n_electrons(), 0, o);
    CHECK(it.iterative);
    CHECK_THAT(it.ground_energy, WithinAbs(d.ground_energy, 1e-9));
    CHECK((it.one_rdm - d.one_rdm).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("Sigma matches the explicit matrix") {
  std::mt19937_64 rng(3);
  const auto set = testing::random_integrals(4, 4, rng);
  const auto h = as_active_hamiltonian(set);
  const Matrix hm = fci_hamiltonian_matrix(h, 2, 1);
  CHECK((hm - hm.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  const Vector c = Vector::Random(hm.rows());
  CHECK((fci_sigma(h, 2, 1, c) - hm * c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Spin flip symmetry and string enumeration") {
  const auto h = full("lih_sto3g.fcidump");
  const auto up = fci_solve(h, 3, 1);
  const auto down = fci_solve(h, 3, -1);
  CHECK_THAT(up.ground_energy, WithinAbs(down.ground_energy, 1e-10));

  const auto s = occupation_strings(4, 2);
  CHECK(s == std::vector<std::uint64_t>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100});
  CHECK(occupation_strings(3, 0) == std::vector<std::uint64_t>{0});
}

TEST_CASE("Specification and capacity errors") {
  const auto h = full("h2_sto3g.fcidump");
  CHECK_THROWS_AS(fci_solve(h, 3, 0), SpecError);
  CHECK_THROWS_AS(fci_solve(h, 2, 4), SpecError);
  CHECK_THROWS_AS(fci_solve(h, 6, 0), SpecError);
  FciOptions tiny;
  tiny.dimension_cap = 3;
  CHECK_THROWS_AS(fci_solve(h, 2, 0, tiny), CapacityError);
  try {
    fci_solve(h, 2, 0, tiny);
  } catch (const CapacityError& e) {
    CHECK(e.module() == "fci");
  }
}
