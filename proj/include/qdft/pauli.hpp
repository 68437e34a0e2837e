#pragma once

#include <qdft/linalg.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdft {

/// Tensor product of single-qubit Paulis in symplectic form: qubit k carries
/// X iff bit k of x, Z iff bit k of z, Y iff both. Qubit 0 is the least
/// significant bit everywhere in this library. Up to 64 qubits.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Label with the highest qubit first, e.g. "IZXI" puts X on qubit 1.
  static PauliString from_label(std::string_view label);
  static PauliString identity(int n_qubits) { return {n_qubits, 0, 0}; }
  static PauliString single(int n_qubits, int qubit, char pauli);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  int weight() const noexcept;
  char at(int qubit) const;
  std::string label() const;

  bool commutes_with(const PauliString& other) const noexcept;

  /// Pauli string with qubit `q` removed; higher qubits shift down by one.
  PauliString remove_qubit(int q) const;
  /// Pauli string with a new identity qubit inserted at position `q`.
  PauliString insert_qubit(int q) const;

  auto operator<=>(const PauliString&) const = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// a * b = phase * result, phase in {1, i, -1, -i}.
std::pair<Complex, PauliString> multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings on a fixed number of qubits. Coefficients
/// of magnitude below kPruneThreshold are dropped on every mutation.
class PauliSum {
 public:
  static constexpr double kPruneThreshold = 1e-12;
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(const PauliString& p, Complex c);

  static PauliSum identity(int n_qubits, Complex c = 1.0) { return {PauliString::identity(n_qubits), c}; }

  int n_qubits() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  Complex coefficient(const PauliString& p) const;

  /// Accumulates without pruning; call simplify() afterwards.
  void accumulate(const PauliString& p, Complex c);
  void add_term(const PauliString& p, Complex c);
  PauliSum& simplify(double threshold = kPruneThreshold);

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(Complex c);
  PauliSum operator-() const;

  PauliSum adjoint() const;
  /// Largest |Im c| over all terms.
  double max_imaginary() const;
  bool is_hermitian(double tol = 1e-10) const { return max_imaginary() <= tol; }
  /// Drops imaginary parts; caller has checked Hermiticity.
  PauliSum real_part() const;
  /// Sum of |c| over terms, a cheap bound on the operator norm.
  double one_norm() const;

  bool commutes_with(const PauliString& p) const;

  /// Dense 2^n x 2^n matrix, intended for n <= 12.
  ComplexMatrix to_matrix() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(PauliSum a, Complex c);
PauliSum operator*(Complex c, PauliSum a);
bool approx_equal(const PauliSum& a, const PauliSum& b, double tol);

/// Text form: one term per line, "<sign><magnitude> LABEL" with ten decimals,
/// e.g. "+0.1721839326 IZXI". Complex coefficients are written as
/// "(+re+imj) LABEL". Terms come in label order.
void write_pauli_sum(std::ostream& out, const PauliSum& op);
std::string to_string(const PauliSum& op);
PauliSum parse_pauli_sum(std::string_view text);

/// Lowest eigenvalue of the Hermitian operator restricted to the span of the
/// given computational basis states (all states when empty). Dense; for
/// verification on small registers.
double ground_energy(const PauliSum& op, std::span<const std::uint64_t> basis = {});
Vector eigenvalues(const PauliSum& op, std::span<const std::uint64_t> basis = {});

}  // namespace qdft
