#pragma once

#include <qdft/activespace.hpp>
#include <qdft/linalg.hpp>

#include <compare>
#include <map>
#include <vector>

namespace qdft {

struct LadderOp {
  int mode = 0;
  bool creation = false;
  auto operator<=>(const LadderOp&) const = default;
};

/// Sum of products of fermionic ladder operators, each product kept in the
/// order written (no normal ordering). The empty product is the identity.
class FermionOperator {
 public:
  using Product = std::vector<LadderOp>;
  using TermMap = std::map<Product, Complex>;

  FermionOperator() = default;
  explicit FermionOperator(int n_modes) : n_modes_(n_modes) {}

  static FermionOperator identity(int n_modes, Complex c = 1.0);
  /// c * a+_p a_q
  static FermionOperator hopping(int n_modes, int p, int q, Complex c = 1.0);

  int n_modes() const noexcept { return n_modes_; }
  const TermMap& terms() const noexcept { return terms_; }

  void add_term(Product product, Complex c);
  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator*=(Complex c);
  FermionOperator adjoint() const;

 private:
  int n_modes_ = 0;
  TermMap terms_;
};

FermionOperator operator+(FermionOperator a, const FermionOperator& b);
FermionOperator operator-(FermionOperator a, const FermionOperator& b);
FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);
FermionOperator operator*(Complex c, FermionOperator a);

/// Spin-orbital index in the blocked layout: alpha orbitals 0..n-1, then beta
/// orbitals n..2n-1.
constexpr int spin_orbital(int spatial, int spin, int n_spatial) { return spatial + spin * n_spatial; }

/// Second-quantised active Hamiltonian over 2n spin orbitals (blocked order):
/// sum h~_pq a+_p a_q + 1/2 sum (pr|qs) a+_p a+_q a_s a_r plus `constant`
/// times the identity. The inactive energy is not included.
FermionOperator spin_orbital_hamiltonian(const ActiveHamiltonian& h, double constant = 0.0);

}  // namespace qdft
