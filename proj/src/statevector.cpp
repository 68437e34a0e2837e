#include <qdft/errors.hpp>
#include <qdft/statevector.hpp>

#include <bit>
#include <cmath>
#include <map>

namespace qdft {

namespace {

constexpr const char* kModule = "sim";

// i^k for k mod 4.
Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

void check_register(const Statevector& s, int n) {
  if (s.n_qubits != n) {
    throw ContractViolation(kModule, "state has " + std::to_string(s.n_qubits) + " qubits, operator has " +
                                         std::to_string(n));
  }
}

}  // namespace

Statevector::Statevector(int n) : n_qubits(n) {
  if (n < 0 || n > 30) throw ContractViolation(kModule, "register size out of range");
  amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dimension()));
}

Statevector hf_state(int n_qubits, std::uint64_t occupation) {
  Statevector s(n_qubits);
  if (occupation >= s.dimension()) throw ContractViolation(kModule, "occupation has bits beyond the register");
  s.amplitudes[static_cast<Eigen::Index>(occupation)] = 1.0;
  return s;
}

Statevector hf_state(int n_qubits, std::string_view bits) {
  if (static_cast<int>(bits.size()) != n_qubits) {
    throw ContractViolation(kModule, "bit string length " + std::to_string(bits.size()) + " does not match " +
                                         std::to_string(n_qubits) + " qubits");
  }
  std::uint64_t occ = 0;
  for (int k = 0; k < n_qubits; ++k) {
    const char c = bits[static_cast<std::size_t>(n_qubits - 1 - k)];
    if (c == '1') {
      occ |= std::uint64_t{1} << k;
    } else if (c != '0') {
      throw ContractViolation(kModule, "bit string may only contain 0 and 1");
    }
  }
  return hf_state(n_qubits, occ);
}

// P|b> = i^{|x&z|} (-1)^{|z&b|} |b^x>
void apply_pauli_inplace(Statevector& state, const PauliString& p) {
  check_register(state, p.n_qubits());
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex global = i_power(std::popcount(x & z));
  auto& a = state.amplitudes;
  const std::uint64_t dim = state.dimension();
  if (x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) a[b] *= global * parity_sign(z & b);
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t c = b ^ x;
    if (c < b) continue;
    const Complex ab = a[b], ac = a[c];
    a[c] = global * parity_sign(z & b) * ab;
    a[b] = global * parity_sign(z & c) * ac;
  }
}

Statevector apply_pauli(Statevector state, const PauliString& p) {
  apply_pauli_inplace(state, p);
  return state;
}

void apply_pauli_exponential_inplace(Statevector& state, const PauliString& p, double angle) {
  check_register(state, p.n_qubits());
  if (angle == 0.0) return;
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex is = Complex(0, std::sin(angle)) * i_power(std::popcount(x & z));
  const double c = std::cos(angle);
  auto& a = state.amplitudes;
  const std::uint64_t dim = state.dimension();
  if (x == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) a[b] *= c + is * parity_sign(z & b);
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t f = b ^ x;
    if (f < b) continue;
    const Complex ab = a[b], af = a[f];
    a[b] = c * ab + is * parity_sign(z & f) * af;
    a[f] = c * af + is * parity_sign(z & b) * ab;
  }
}

Statevector apply_pauli_exponential(Statevector state, const PauliString& p, double angle) {
  apply_pauli_exponential_inplace(state, p, angle);
  return state;
}

double expectation(const Statevector& state, const PauliSum& op) {
  check_register(state, op.n_qubits());
  const auto& a = state.amplitudes;
  const std::uint64_t dim = state.dimension();

  // Terms sharing an X mask share the overlap products conj(a[b]) a[b^x].
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Complex>>> groups;
  for (const auto& [p, c] : op.terms()) groups[p.x_mask()].emplace_back(p.z_mask(), c);

  Complex total = 0.0;
  std::vector<Complex> w(dim);
  for (const auto& [x, terms] : groups) {
    for (std::uint64_t b = 0; b < dim; ++b) w[b] = std::conj(a[b]) * a[b ^ x];
    for (const auto& [z, c] : terms) {
      // <b| P |b^x> = i^{|x&z|} (-1)^{|z&(b^x)|}
      Complex sum = 0.0;
      for (std::uint64_t b = 0; b < dim; ++b) sum += parity_sign(z & (b ^ x)) * w[b];
      total += c * i_power(std::popcount(x & z)) * sum;
    }
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw ContractViolation(kModule, "expectation has imaginary residue " + std::to_string(total.imag()) +
                                         "; operator is not Hermitian");
  }
  return total.real();
}

Matrix one_rdm_from_occupation_state(const Statevector& state, int n_spatial) {
  if (state.n_qubits != 2 * n_spatial) {
    throw ContractViolation(kModule, "state does not cover 2 * n_spatial spin orbitals");
  }
  const auto& a = state.amplitudes;
  const std::uint64_t dim = state.dimension();
  Matrix gamma = Matrix::Zero(n_spatial, n_spatial);
  for (int spin = 0; spin < 2; ++spin) {
    for (int p = 0; p < n_spatial; ++p) {
      for (int q = 0; q < n_spatial; ++q) {
        const int P = p + spin * n_spatial, Q = q + spin * n_spatial;
        const std::uint64_t bp = std::uint64_t{1} << P, bq = std::uint64_t{1} << Q;
        Complex sum = 0.0;
        for (std::uint64_t b = 0; b < dim; ++b) {
          if (!(b & bq)) continue;
          // a_q then a+_p, each with the sign of occupied modes below it.
          const std::uint64_t mid = b ^ bq;
          if (mid & bp) continue;
          const double sign = parity_sign(b & (bq - 1)) * parity_sign(mid & (bp - 1));
          sum += std::conj(a[mid | bp]) * sign * a[b];
        }
        gamma(p, q) += sum.real();
      }
    }
  }
  return symmetrized(gamma);
}

Statevector to_occupation_basis(const Statevector& state, int n_modes, QubitEncoding encoding, int n_electrons,
                                int n_alpha) {
  check_register(state, encoded_qubits(n_modes, encoding));
  if (encoding == QubitEncoding::JordanWigner) return state;
  Statevector out(n_modes);
  for (std::uint64_t r = 0; r < state.dimension(); ++r) {
    const std::uint64_t parity = encoding == QubitEncoding::ParityReduced
                                     ? restore_parity_qubits(r, n_modes, n_electrons, n_alpha)
                                     : r;
    out.amplitudes[static_cast<Eigen::Index>(parity_to_occupation(parity, n_modes))] = state.amplitudes[r];
  }
  return out;
}

}  // namespace qdft
