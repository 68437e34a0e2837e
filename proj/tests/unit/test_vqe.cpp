#include <catch_amalgamated.hpp>

#include <qdft/errors.hpp>
#include <qdft/fci.hpp>
#include <qdft/meanfield.hpp>
#include <qdft/vqe.hpp>

#include "oracle_values.hpp"
#include "test_support.hpp"

#include <chrono>
#include <limits>
#include <sstream>

using namespace qdft;
using Catch::Matchers::WithinAbs;

namespace {

ActiveHamiltonian active(const char* file, ActiveSpaceSpec spec) {
  const auto set = read_fcidump_file(testing::fixture(file));
  return reduce(set, solve_rhf(set), spec);
}

}  // namespace

TEST_CASE("Parameter initialisation is seeded") {
  VqeConfig c;
  c.seed = 42;
  const auto a = initialize_parameters(5, c);
  CHECK(a == initialize_parameters(5, c));
  c.seed = 43;
  CHECK(a != initialize_parameters(5, c));
  c.sigma = 0.0;
  CHECK(initialize_parameters(3, c) == std::vector<double>(3, 0.0));
  for (double v : a) CHECK(std::abs(v) < 0.01);

  VqeConfig bad;
  bad.sigma = -1;
  CHECK_THROWS(bad.validate());
  bad = {};
  bad.max_iterations = 0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("H2 and LiH VQE reach the FCI energy") {
  struct Case {
    const char* file;
    ActiveSpaceSpec spec;
    double energy;
  };
  for (const Case& c : {Case{"h2_sto3g.fcidump", {2, 2}, oracle::H2_FCI},
                        Case{"lih_sto3g.fcidump", {2, 2}, oracle::LIH_CASCI_2_2},
                        Case{"lih_sto3g.fcidump", {2, 3}, oracle::LIH_CASCI_2_3}}) {
    INFO(c.file << " " << c.spec.label());
    const auto h = active(c.file, c.spec);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = solve_active_vqe(h, {});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.vqe.converged);
    CHECK_THAT(r.vqe.energy + h.inactive_energy(), WithinAbs(c.energy, 1e-6));
    CHECK(r.vqe.energy + h.inactive_energy() >= c.energy - 1e-10);
    CHECK(seconds < 10.0);
    CHECK_THAT(r.one_rdm.trace(), WithinAbs(c.spec.n_active_electrons, 1e-10));
  }
}

TEST_CASE("Accepted trace energies never increase") {
  const auto h = active("lih_sto3g.fcidump", {2, 3});
  VqeConfig c;
  c.sigma = 0.3;
  c.seed = 7;
  const auto r = solve_active_vqe(h, c);
  double last = std::numeric_limits<double>::infinity();
  int accepted = 0;
  for (const auto& t : r.vqe.trace) {
    if (!t.accepted) continue;
    ++accepted;
    CHECK(t.energy <= last + 1e-12);
    last = t.energy;
  }
  CHECK(accepted >= 2);
  CHECK(r.vqe.evaluations == static_cast<int>(r.vqe.trace.size()));
  for (std::size_t i = 0; i < r.vqe.trace.size(); ++i) CHECK(r.vqe.trace[i].evaluation == static_cast<int>(i));

  std::ostringstream csv;
  write_trace_csv(csv, r.vqe.trace);
  CHECK(csv.str().rfind("evaluation_index,energy,accepted\n", 0) == 0);
}

TEST_CASE("Ansatz with no parameters") {
  IntegralSet s(1, 2);
  s.set_one_body(0, 0, -1.0);
  s.set_two_body(0, 0, 0, 0, 0.5);
  const auto h = as_active_hamiltonian(s);
  const auto r = solve_active_vqe(h, {});
  CHECK(r.vqe.parameters.empty());
  CHECK(r.vqe.evaluations == 1);
  CHECK(r.vqe.converged);
  CHECK_THAT(r.vqe.energy, WithinAbs(-1.5, 1e-14));
}

TEST_CASE("Zero and small random starts reach the same minimum") {
  const auto h = active("h2_sto3g.fcidump", {2, 2});
  VqeConfig zero;
  zero.sigma = 0.0;
  VqeConfig small;
  small.sigma = 1e-3;
  small.seed = 5;
  const double a = solve_active_vqe(h, zero).vqe.energy;
  const double b = solve_active_vqe(h, small).vqe.energy;
  CHECK_THAT(a, WithinAbs(b, 1e-6));
}

TEST_CASE("Every encoding gives the same VQE energy") {
  const auto h = active("lih_sto3g.fcidump", {2, 2});
  const double e_fci = fci_solve(h, 2).ground_energy;
  for (auto enc : {QubitEncoding::JordanWigner, QubitEncoding::Parity, QubitEncoding::ParityReduced}) {
    VqeConfig c;
    c.encoding = enc;
    const auto r = solve_active_vqe(h, c);
    CHECK_THAT(r.vqe.energy, WithinAbs(e_fci, 1e-6));
    CHECK(r.vqe.energy >= e_fci - 1e-12);
  }
}

TEST_CASE("Non-finite energies abort with the trace so far") {
  const auto a = build_uccsd({2, 2});
  const auto m = map_ansatz(a, QubitEncoding::JordanWigner);
  PauliSum h(4);
  h.add_term(PauliString::from_label("IIII"), std::numeric_limits<double>::quiet_NaN());
  try {
    minimize(h, a, m, {});
    FAIL("expected OptimizerError");
  } catch (const OptimizerError& e) {
    CHECK(!e.trace().empty());
  }
}

TEST_CASE("Variational bound on random parameters") {
  const auto h = active("h2o_sto3g.fcidump", {4, 4});
  const double e_fci = fci_solve(h, 4).ground_energy;
  const auto op = active_qubit_hamiltonian(h, QubitEncoding::ParityReduced);
  const auto a = build_uccsd({4, 4});
  const auto m = map_ansatz(a, QubitEncoding::ParityReduced);
  VqeConfig c;
  c.sigma = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    const auto p = initialize_parameters(a.n_parameters(), c);
    CHECK(expectation(evolve_ansatz(a, p, m), op) >= e_fci - 1e-10);
  }
}
