#include <catch_amalgamated.hpp>

#include <qdft/errors.hpp>
#include <qdft/pauli.hpp>

#include "test_support.hpp"

#include <random>

using namespace qdft;

namespace {

PauliSum random_sum(int n, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  PauliSum s(n);
  for (int t = 0; t < terms; ++t) s.add_term(PauliString(n, mask(rng), mask(rng)), Complex(g(rng), g(rng)));
  return s;
}

double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Pauli labels are written highest qubit first") {
  const auto p = PauliString::from_label("IZXI");
  CHECK(p.n_qubits() == 4);
  CHECK(p.at(1) == 'X');
  CHECK(p.at(2) == 'Z');
  CHECK(p.x_mask() == 0b0010);
  CHECK(p.z_mask() == 0b0100);
  CHECK(p.label() == "IZXI");
  CHECK(PauliString::from_label("Y").x_mask() == 1);
  CHECK(PauliString::from_label("Y").z_mask() == 1);
  CHECK(PauliString::identity(3).is_identity());
  CHECK(PauliString::from_label("XYZI").weight() == 3);
  CHECK_THROWS(PauliString::from_label("XQ"));
}

TEST_CASE("Single-qubit products") {
  auto [ph, r] = multiply(PauliString::from_label("X"), PauliString::from_label("Y"));
  CHECK(ph == Complex(0, 1));
  CHECK(r.label() == "Z");
  std::tie(ph, r) = multiply(PauliString::from_label("Y"), PauliString::from_label("X"));
  CHECK(ph == Complex(0, -1));
  std::tie(ph, r) = multiply(PauliString::from_label("ZZ"), PauliString::from_label("ZZ"));
  CHECK(ph == Complex(1, 0));
  CHECK(r.is_identity());
  CHECK(PauliString::from_label("XX").commutes_with(PauliString::from_label("ZZ")));
  CHECK_FALSE(PauliString::from_label("XI").commutes_with(PauliString::from_label("ZZ")));
}

TEST_CASE("Every Pauli string matches its Kronecker product") {
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t z = 0; z < 8; ++z) {
      const PauliString p(3, x, z);
      INFO(p.label());
      CHECK(dist(PauliSum(p, 1.0).to_matrix(), testing::kron_pauli(p)) == 0.0);
    }
}

TEST_CASE("PauliSum algebra agrees with dense matrices") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto a = random_sum(n, 6, rng);
      const auto b = random_sum(n, 6, rng);
      const ComplexMatrix ma = testing::kron_matrix(a), mb = testing::kron_matrix(b);
      CHECK(dist(testing::kron_matrix(a + b), ma + mb) < 1e-12);
      CHECK(dist(testing::kron_matrix(a - b), ma - mb) < 1e-12);
      CHECK(dist(testing::kron_matrix(a * b), ma * mb) < 1e-12);
      CHECK(dist(testing::kron_matrix(a.adjoint()), ma.adjoint()) < 1e-12);
      CHECK(dist(testing::kron_matrix(Complex(0.5, -2.0) * a), Complex(0.5, -2.0) * ma) < 1e-12);
      CHECK(dist(a.to_matrix(), ma) < 1e-12);
    }
  }
}

TEST_CASE("Small coefficients are pruned") {
  PauliSum s(2);
  s.add_term(PauliString::from_label("XZ"), 1.0);
  s.add_term(PauliString::from_label("XZ"), -1.0 + 1e-13);
  CHECK(s.empty());
  s.add_term(PauliString::from_label("ZZ"), 1e-13);
  CHECK(s.empty());
  const auto a = PauliSum(PauliString::from_label("XY"), 1.0);
  CHECK((a - a).empty());
}

TEST_CASE("Hermitian parts and helpers") {
  PauliSum s(2);
  s.add_term(PauliString::from_label("XY"), Complex(0.3, 1e-11));
  s.add_term(PauliString::from_label("II"), 2.0);
  CHECK(s.is_hermitian());
  CHECK(s.real_part().coefficient(PauliString::from_label("XY")) == Complex(0.3, 0));
  CHECK(s.coefficient(PauliString::from_label("ZZ")) == Complex(0, 0));
  CHECK(s.commutes_with(PauliString::from_label("ZX")));
  CHECK_FALSE(s.commutes_with(PauliString::from_label("IZ")));
  CHECK(s.one_norm() == Catch::Approx(2.3));
}

TEST_CASE("Text form round trips at ten decimals") {
  PauliSum s(3);
  s.add_term(PauliString::from_label("IZX"), 0.1721839326);
  s.add_term(PauliString::from_label("III"), -1.5);
  s.add_term(PauliString::from_label("YYI"), Complex(0.25, -0.5));
  const std::string text = to_string(s);
  CHECK(text.find("+0.1721839326 IZX") != std::string::npos);
  CHECK(text.find("-1.5000000000 III") != std::string::npos);
  const auto t = parse_pauli_sum(text);
  CHECK(approx_equal(s, t, 1e-10));
  CHECK(to_string(t) == text);
  CHECK_THROWS_AS(parse_pauli_sum("+0.5 XZ\n+0.1 X\n"), ParseError);
}

TEST_CASE("Dense ground energy with and without a basis restriction") {
  PauliSum z(1);
  z.add_term(PauliString::from_label("Z"), 1.0);
  CHECK(ground_energy(z) == Catch::Approx(-1.0));
  const std::uint64_t only0[] = {0};
  CHECK(ground_energy(z, only0) == Catch::Approx(1.0));
  const auto ev = eigenvalues(z);
  CHECK(ev.size() == 2);
}
