#include <catch_amalgamated.hpp>

#include <qdft/embedding.hpp>
#include <qdft/errors.hpp>
#include <qdft/fci.hpp>

#include "oracle_values.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

using namespace qdft;
using Catch::Matchers::WithinAbs;

namespace {

EmbeddingConfig fci_config() {
  EmbeddingConfig c;
  c.active_solver = ActiveSolverKind::Fci;
  return c;
}

IntegralSet load(const char* name) { return read_fcidump_file(testing::fixture(name)); }

}  // namespace

TEST_CASE("Damping schedule") {
  const EmbeddingConfig c;
  CHECK(damping_factor(1, c) == 0.2);
  CHECK(damping_factor(4, c) == 0.1);
  CHECK(damping_factor(16, c) == 0.05);
  CHECK(damping_factor(100, c) == 0.05);
  CHECK_THROWS_AS(damping_factor(0, c), ContractViolation);

  EmbeddingConfig bad;
  bad.damping_floor = 0.3;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.threshold = 0;
  CHECK_THROWS(bad.validate());
  CHECK(parse_solver("fci") == ActiveSolverKind::Fci);
  CHECK(parse_solver(to_string(ActiveSolverKind::Vqe)) == ActiveSolverKind::Vqe);
  CHECK_THROWS(parse_solver("dmrg"));
}

TEST_CASE("Full active space is exact FCI and converges at the second iteration") {
  for (const char* file : {"h2_sto3g.fcidump", "lih_sto3g.fcidump"}) {
    INFO(file);
    const auto set = load(file);
    const auto r = run_embedding(set, {set.n_electrons(), set.n_orbitals()}, fci_config());
    const double e_fci = fci_solve(as_active_hamiltonian(set), set.n_electrons()).ground_energy + set.core_energy();
    CHECK(r.state.converged);
    CHECK(r.state.iteration == 2);
    CHECK_THAT(r.state.energy_history[0], WithinAbs(e_fci, 1e-8));
    CHECK_THAT(r.energy, WithinAbs(e_fci, 1e-8));
    CHECK(std::abs(r.state.log.back().delta_energy) < 1e-7);
  }
}

TEST_CASE("Empty active space is RHF") {
  const auto set = load("h2o_sto3g.fcidump");
  const auto r = run_embedding(set, {0, 0}, fci_config());
  CHECK(r.state.converged);
  CHECK(r.energy == r.rhf_energy);
  CHECK_THAT(r.energy, WithinAbs(oracle::H2O_RHF, 1e-9));
}

TEST_CASE("Small fixture converges within three iterations") {
  const auto set = load("h2o_sto3g.fcidump");
  const auto r = run_embedding(set, {2, 2}, fci_config());
  CHECK(r.state.converged);
  CHECK(r.state.iteration <= 3);
  CHECK(r.state.iteration == 2);  // golden value of this implementation
  CHECK_THAT(r.energy, WithinAbs(oracle::H2O_CASCI_2_2, 1e-8));
  CHECK(r.energy <= r.rhf_energy + 1e-8);
}

TEST_CASE("Damping does not move the fixed point") {
  const auto set = load("h2_sto3g.fcidump");
  auto plain = fci_config();
  plain.damping_floor = plain.damping_scale = 1.0;
  const auto a = run_embedding(set, {2, 2}, fci_config());
  const auto b = run_embedding(set, {2, 2}, plain);
  CHECK_THAT(a.energy, WithinAbs(b.energy, 1e-8));
}

TEST_CASE("Forced long run records the exact schedule and stays physical") {
  const auto set = load("lih_sto3g.fcidump");
  auto c = fci_config();
  c.min_iterations = 20;
  c.max_iterations = 20;
  const auto r = run_embedding(set, {2, 2}, c);
  REQUIRE(r.state.alpha_history.size() == 20);
  for (int i = 1; i <= 20; ++i) CHECK(r.state.alpha_history[i - 1] == std::max(0.05, 0.2 / std::sqrt(double(i))));
  CHECK(r.state.converged);
  Eigen::SelfAdjointEigenSolver<Matrix> es(r.state.damped_density);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  CHECK(es.eigenvalues().maxCoeff() <= 2 + 1e-8);
  CHECK_THAT(r.state.damped_density.trace(), WithinAbs(4.0, 1e-10));
}

TEST_CASE("Non-convergence is reported, not thrown") {
  const auto set = load("lih_sto3g.fcidump");
  auto c = fci_config();
  c.max_iterations = 1;
  const auto r = run_embedding(set, {2, 2}, c);
  CHECK_FALSE(r.state.converged);
  CHECK(r.state.iteration == 1);
}

TEST_CASE("Resuming a converged run adds one iteration") {
  const auto set = load("h2o_sto3g.fcidump");
  const auto c = fci_config();
  const auto first = run_embedding(set, {2, 2}, c);
  REQUIRE(first.state.converged);
  const auto again = run_embedding(set, {2, 2}, c, VqeConfig{}, &first.state);
  CHECK(again.state.iteration == first.state.iteration + 1);
  CHECK(again.state.converged);
  CHECK(std::abs(again.state.energy_history.back() - first.state.energy_history.back()) < c.threshold);
}

TEST_CASE("VQE embedding sits on or above FCI embedding") {
  const auto set = load("lih_sto3g.fcidump");
  const auto f = run_embedding(set, {2, 2}, fci_config());
  const auto v = run_embedding(set, {2, 2}, EmbeddingConfig{});
  CHECK(v.state.converged);
  CHECK(v.energy >= f.energy - 1e-9);
  CHECK_THAT(v.energy, WithinAbs(f.energy, 1e-6));
}

TEST_CASE("Solver failures carry the iteration") {
  const auto set = load("h2_sto3g.fcidump");
  const ActiveSolver broken = [](const ActiveHamiltonian&, int i) -> ActiveSolution {
    if (i == 2) throw std::runtime_error("boom");
    return {-1.0, Matrix::Identity(2, 2), 1};
  };
  auto c = fci_config();
  c.min_iterations = 3;
  try {
    run_embedding(set, {2, 2}, c, broken);
    FAIL("expected EmbeddedSolverError");
  } catch (const EmbeddedSolverError& e) {
    CHECK(e.iteration() == 2);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
}

TEST_CASE("Energy assembly pieces") {
  const auto set = load("h2o_sto3g.fcidump");
  const auto mf = solve_rhf(set);
  const auto sel = select_orbitals(mf, {0, 0});
  CHECK_THAT(total_energy(set, mf.density, 0.0, mf.orbital_coefficients, sel), WithinAbs(mf.energy, 1e-10));
  const auto sel2 = select_orbitals(mf, {2, 2});
  const Matrix b = bath_density(mf.density, mf.orbital_coefficients, sel2);
  CHECK_THAT(b.trace(), WithinAbs(8.0, 1e-10));

  std::ostringstream out;
  write_iteration_log(out, {{1, 0.2, -1.0, -0.1, 5}});
  CHECK(out.str().rfind("iteration,alpha,energy,delta_energy,solver_evaluations\n", 0) == 0);
}
