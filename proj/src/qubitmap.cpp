#include <qdft/errors.hpp>
#include <qdft/qubitmap.hpp>

#include <unordered_map>

namespace qdft {

namespace {

constexpr const char* kModule = "qubitmap";

std::uint64_t bits_below(int k) { return k <= 0 ? 0 : (std::uint64_t{1} << k) - 1; }
std::uint64_t bits_above(int k, int n) { return bits_below(n) & ~bits_below(k + 1); }

struct LadderImages {
  std::vector<PauliSum> create, annihilate;
};

// a_j = (c_j + i d_j) / 2, a+_j = (c_j - i d_j) / 2.
LadderImages from_majoranas(const std::vector<PauliString>& c, const std::vector<PauliString>& d, int n) {
  LadderImages out;
  for (int j = 0; j < n; ++j) {
    PauliSum a(n), ad(n);
    a.add_term(c[j], 0.5);
    a.add_term(d[j], Complex(0, 0.5));
    ad.add_term(c[j], 0.5);
    ad.add_term(d[j], Complex(0, -0.5));
    out.annihilate.push_back(std::move(a));
    out.create.push_back(std::move(ad));
  }
  return out;
}

LadderImages jordan_wigner_images(int n) {
  std::vector<PauliString> c, d;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t xj = std::uint64_t{1} << j;
    c.emplace_back(n, xj, bits_below(j));
    d.emplace_back(n, xj, bits_below(j) | xj);
  }
  return from_majoranas(c, d, n);
}

LadderImages parity_images(int n) {
  std::vector<PauliString> c, d;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t xj = std::uint64_t{1} << j;
    const std::uint64_t upper = bits_above(j, n);
    const std::uint64_t zprev = j > 0 ? std::uint64_t{1} << (j - 1) : 0;
    c.emplace_back(n, upper | xj, zprev);
    d.emplace_back(n, upper | xj, xj);
  }
  return from_majoranas(c, d, n);
}

PauliSum map_with(const FermionOperator& op, const LadderImages& images) {
  const int n = op.n_modes();
  PauliSum out(n);
  for (const auto& [product, coeff] : op.terms()) {
    PauliSum term = PauliSum::identity(n, coeff);
    for (const auto& l : product) {
      term = term * (l.creation ? images.create[l.mode] : images.annihilate[l.mode]);
    }
    for (const auto& [p, c] : term.terms()) out.accumulate(p, c);
  }
  return out.simplify();
}

}  // namespace

PauliSum map_jordan_wigner(const FermionOperator& op) { return map_with(op, jordan_wigner_images(op.n_modes())); }

PauliSum map_parity(const FermionOperator& op) { return map_with(op, parity_images(op.n_modes())); }

ParityQubits parity_symmetry_qubits(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw ContractViolation(kModule, "two-qubit reduction needs an even register of at least 2 qubits");
  }
  return {n_qubits / 2 - 1, n_qubits - 1};
}

PauliSum two_qubit_reduction(const PauliSum& op, int n_electrons, int n_alpha) {
  const int n = op.n_qubits();
  const auto [qa, qt] = parity_symmetry_qubits(n);
  const double za = (n_alpha % 2) ? -1.0 : 1.0;
  const double zt = (n_electrons % 2) ? -1.0 : 1.0;
  PauliSum out(n - 2);
  for (const auto& [p, c] : op.terms()) {
    if (((p.x_mask() >> qa) & 1u) || ((p.x_mask() >> qt) & 1u)) {
      throw NotReducibleError(kModule, "term " + p.label() + " does not commute with the parity qubits' Z");
    }
    Complex coeff = c;
    if ((p.z_mask() >> qa) & 1u) coeff *= za;
    if ((p.z_mask() >> qt) & 1u) coeff *= zt;
    out.accumulate(p.remove_qubit(qt).remove_qubit(qa), coeff);
  }
  return out.simplify();
}

std::uint64_t occupation_to_parity(std::uint64_t occ, int n) {
  std::uint64_t out = 0;
  unsigned parity = 0;
  for (int j = 0; j < n; ++j) {
    parity ^= (occ >> j) & 1u;
    out |= static_cast<std::uint64_t>(parity) << j;
  }
  return out;
}

std::uint64_t parity_to_occupation(std::uint64_t par, int n) {
  return (par ^ (par << 1)) & bits_below(n);
}

std::uint64_t drop_parity_qubits(std::uint64_t index, int n) {
  const auto [qa, qt] = parity_symmetry_qubits(n);
  auto drop = [](std::uint64_t m, int q) { return (m & bits_below(q)) | ((m >> (q + 1)) << q); };
  return drop(drop(index, qt), qa);
}

std::uint64_t restore_parity_qubits(std::uint64_t reduced, int n, int n_electrons, int n_alpha) {
  const auto [qa, qt] = parity_symmetry_qubits(n);
  auto insert = [](std::uint64_t m, int q, unsigned bit) {
    return (m & bits_below(q)) | (static_cast<std::uint64_t>(bit) << q) | ((m >> q) << (q + 1));
  };
  return insert(insert(reduced, qa, n_alpha & 1), qt, n_electrons & 1);
}

std::string to_string(QubitEncoding e) {
  switch (e) {
    case QubitEncoding::JordanWigner: return "jordan-wigner";
    case QubitEncoding::Parity: return "parity";
    case QubitEncoding::ParityReduced: return "parity-reduced";
  }
  return "?";
}

QubitEncoding parse_encoding(const std::string& text) {
  if (text == "jordan-wigner" || text == "jw") return QubitEncoding::JordanWigner;
  if (text == "parity") return QubitEncoding::Parity;
  if (text == "parity-reduced") return QubitEncoding::ParityReduced;
  throw ConfigError(kModule, "unknown qubit encoding '" + text + "'");
}

PauliSum map_fermion_operator(const FermionOperator& op, QubitEncoding encoding, int n_electrons, int n_alpha) {
  switch (encoding) {
    case QubitEncoding::JordanWigner: return map_jordan_wigner(op);
    case QubitEncoding::Parity: return map_parity(op);
    case QubitEncoding::ParityReduced: return two_qubit_reduction(map_parity(op), n_electrons, n_alpha);
  }
  throw ContractViolation(kModule, "unknown encoding");
}

std::uint64_t encode_determinant(std::uint64_t occupation, int n_modes, QubitEncoding encoding) {
  switch (encoding) {
    case QubitEncoding::JordanWigner: return occupation;
    case QubitEncoding::Parity: return occupation_to_parity(occupation, n_modes);
    case QubitEncoding::ParityReduced: return drop_parity_qubits(occupation_to_parity(occupation, n_modes), n_modes);
  }
  throw ContractViolation(kModule, "unknown encoding");
}

int encoded_qubits(int n_modes, QubitEncoding encoding) {
  return encoding == QubitEncoding::ParityReduced ? n_modes - 2 : n_modes;
}

}  // namespace qdft
