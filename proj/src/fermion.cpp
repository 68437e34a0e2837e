#include <qdft/errors.hpp>
#include <qdft/fermion.hpp>

#include <cmath>

namespace qdft {

namespace {
constexpr double kPrune = 1e-14;
}

FermionOperator FermionOperator::identity(int n_modes, Complex c) {
  FermionOperator op(n_modes);
  op.add_term({}, c);
  return op;
}

FermionOperator FermionOperator::hopping(int n_modes, int p, int q, Complex c) {
  FermionOperator op(n_modes);
  op.add_term({{p, true}, {q, false}}, c);
  return op;
}

void FermionOperator::add_term(Product product, Complex c) {
  for (const auto& l : product) {
    if (l.mode < 0 || l.mode >= n_modes_) throw ContractViolation("fermion", "ladder operator mode out of range");
  }
  auto& slot = terms_[std::move(product)];
  slot += c;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  if (o.n_modes_ != n_modes_) throw ContractViolation("fermion", "mode counts differ");
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPrune; });
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex c) {
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto& [p, c] : terms_) {
    Product q(p.rbegin(), p.rend());
    for (auto& l : q) l.creation = !l.creation;
    out.add_term(std::move(q), std::conj(c));
  }
  return out;
}

FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }

FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
  FermionOperator nb = b;
  nb *= -1.0;
  return a += nb;
}

FermionOperator operator*(Complex c, FermionOperator a) { return a *= c; }

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  if (a.n_modes() != b.n_modes()) throw ContractViolation("fermion", "mode counts differ");
  FermionOperator out(a.n_modes());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      FermionOperator::Product p = pa;
      p.insert(p.end(), pb.begin(), pb.end());
      out.add_term(std::move(p), ca * cb);
    }
  }
  return out;
}

FermionOperator spin_orbital_hamiltonian(const ActiveHamiltonian& h, double constant) {
  const int n = h.n_orbitals();
  const int modes = 2 * n;
  FermionOperator op(modes);
  if (constant != 0.0) op.add_term({}, constant);

  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const double v = h.one_body_eff()(p, q);
        if (v == 0.0) continue;
        op.add_term({{spin_orbital(p, sigma, n), true}, {spin_orbital(q, sigma, n), false}}, v);
      }
    }
  }

  const TwoBodyTensor eri = dense_two_body(h.integrals);
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int tau = 0; tau < 2; ++tau) {
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          const int P = spin_orbital(p, sigma, n);
          const int Q = spin_orbital(q, tau, n);
          if (P == Q) continue;
          for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
              const int R = spin_orbital(r, sigma, n);
              const int S = spin_orbital(s, tau, n);
              if (R == S) continue;
              const double v = eri(p, r, q, s);
              if (v == 0.0) continue;
              op.add_term({{P, true}, {Q, true}, {S, false}, {R, false}}, 0.5 * v);
            }
          }
        }
      }
    }
  }
  return op;
}

}  // namespace qdft
