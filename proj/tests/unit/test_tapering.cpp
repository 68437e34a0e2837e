#include <catch_amalgamated.hpp>

#include <qdft/errors.hpp>
#include <qdft/fermion.hpp>
#include <qdft/qubitmap.hpp>
#include <qdft/tapering.hpp>

#include "oracle_values.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace qdft;

namespace {

std::vector<double> sorted(const Vector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Union over sectors of the tapered spectra.
std::vector<double> union_spectrum(const TaperingResult& r) {
  std::vector<double> all;
  for (const auto& s : r.all_sectors()) {
    const auto ev = eigenvalues(r.taper(s));
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(all.begin(), all.end());
  return all;
}

bool same_spectrum(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Random Hermitian sum that commutes with the given Z-type symmetries.
PauliSum random_symmetric(int n, const std::vector<PauliString>& syms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  PauliSum s(n);
  while (s.size() < 10) {
    const PauliString p(n, mask(rng), mask(rng));
    if (std::all_of(syms.begin(), syms.end(), [&](const PauliString& t) { return t.commutes_with(p); }))
      s.add_term(p, g(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("ZZ alone tapers to one qubit") {
  PauliSum op(2);
  op.add_term(PauliString::from_label("ZZ"), 1.0);
  const auto r = find_z2_symmetries(op);
  REQUIRE(r.n_generators() == 1);
  CHECK(r.symmetry_generators[0].label() == "ZZ");
  CHECK(r.qubit_count_before == 2);
  CHECK(r.qubit_count_after == 1);
  CHECK(r.tapered_operator.n_qubits() == 1);
  const auto plus = sorted(eigenvalues(r.taper({+1})));
  const auto minus = sorted(eigenvalues(r.taper({-1})));
  CHECK(same_spectrum(plus, {1.0, 1.0}, 1e-12));
  CHECK(same_spectrum(minus, {-1.0, -1.0}, 1e-12));
  CHECK(same_spectrum(union_spectrum(r), {-1, -1, 1, 1}, 1e-12));
  CHECK_THROWS_AS(r.taper({2}), SpecError);
  CHECK_THROWS_AS(r.taper({1, 1}), SpecError);
}

TEST_CASE("A lone X term admits no Z on that qubit") {
  PauliSum op(2);
  op.add_term(PauliString::from_label("IX"), 1.0);
  const auto r = find_z2_symmetries(op);
  for (const auto& g : r.symmetry_generators) {
    CHECK(g.commutes_with(PauliString::from_label("IX")));
    CHECK((g.z_mask() & 1) == 0);
  }
  CHECK(same_spectrum(union_spectrum(r), sorted(eigenvalues(op)), 1e-12));
}

TEST_CASE("Generators commute with every term and with each other") {
  const auto set = read_fcidump_file(testing::fixture("h2_sto3g.fcidump"));
  const auto h = as_active_hamiltonian(set);
  const auto op = map_jordan_wigner(spin_orbital_hamiltonian(h, h.inactive_energy())).real_part();
  const auto r = find_z2_symmetries(op);
  CHECK(r.n_generators() >= 1);
  CHECK(r.qubit_count_after == r.qubit_count_before - r.n_generators());
  for (const auto& g : r.symmetry_generators) {
    for (const auto& [p, c] : op.terms()) CHECK(g.commutes_with(p));
    for (const auto& g2 : r.symmetry_generators) CHECK(g.commutes_with(g2));
  }
  for (std::size_t k = 0; k < r.single_qubit_paulis.size(); ++k) {
    CHECK(r.single_qubit_paulis[k].weight() == 1);
    CHECK_FALSE(r.single_qubit_paulis[k].commutes_with(r.symmetry_generators[k]));
  }
}

TEST_CASE("H2 tapering keeps the ground energy and the whole spectrum") {
  const auto set = read_fcidump_file(testing::fixture("h2_sto3g.fcidump"));
  const auto h = as_active_hamiltonian(set);
  for (auto enc : {QubitEncoding::JordanWigner, QubitEncoding::Parity}) {
    const auto op = map_fermion_operator(spin_orbital_hamiltonian(h, h.inactive_energy()), enc, 2, 1).real_part();
    const auto r = find_z2_symmetries(op);
    double best = 0;
    lowest_energy_sector(r, &best);
    CHECK(std::abs(best - ground_energy(op)) < 1e-10);
    CHECK(std::abs(best - oracle::H2_FCI) < 1e-10);
    CHECK(same_spectrum(union_spectrum(r), sorted(eigenvalues(op)), 1e-10));
  }
}

TEST_CASE("Random symmetric operators: min over sectors equals the full ground energy") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + rep % 3;
    std::vector<PauliString> syms{PauliString(n, 0, (std::uint64_t{1} << n) - 1), PauliString(n, 0, 0b11)};
    const auto op = random_symmetric(n, syms, rng);
    const auto r = find_z2_symmetries(op);
    CHECK(r.n_generators() >= 1);
    double best = 0;
    lowest_energy_sector(r, &best);
    CHECK(std::abs(best - ground_energy(op)) < 1e-10);
    CHECK(same_spectrum(union_spectrum(r), sorted(eigenvalues(op)), 1e-9));
  }
}

TEST_CASE("Operators without symmetry pass through") {
  PauliSum op(1);
  op.add_term(PauliString::from_label("X"), 1.0);
  op.add_term(PauliString::from_label("Z"), 0.5);
  const auto r = find_z2_symmetries(op);
  CHECK(r.n_generators() == 0);
  CHECK(r.qubit_count_after == 1);
  CHECK(approx_equal(r.tapered_operator, op, 1e-14));
  CHECK(r.all_sectors().size() == 1);
}
