#include <qdft/errors.hpp>
#include <qdft/pauli.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace qdft {

namespace {

constexpr const char* kModule = "qubitmap";

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void check_same_size(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ContractViolation(kModule, "qubit counts differ: " + std::to_string(a.n_qubits()) + " vs " +
                                         std::to_string(b.n_qubits()));
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits < 0 || n_qubits > kMaxQubits) throw ContractViolation(kModule, "unsupported qubit count");
  if ((x_mask | z_mask) & ~low_mask(n_qubits)) throw ContractViolation(kModule, "Pauli masks exceed qubit count");
}

PauliString PauliString::from_label(std::string_view label) {
  const int n = static_cast<int>(label.size());
  std::uint64_t x = 0, z = 0;
  for (int k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
    switch (label[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw ParseError(kModule, 0, "invalid Pauli label '" + std::string(label) + "'");
    }
  }
  return {n, x, z};
}

PauliString PauliString::single(int n_qubits, int qubit, char pauli) {
  std::string label(n_qubits, 'I');
  label[n_qubits - 1 - qubit] = pauli;
  return from_label(label);
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

char PauliString::at(int q) const {
  const bool x = (x_ >> q) & 1u;
  const bool z = (z_ >> q) & 1u;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::label() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[n_ - 1 - q] = at(q);
  return s;
}

bool PauliString::commutes_with(const PauliString& o) const noexcept {
  return (std::popcount((x_ & o.z_) ^ (z_ & o.x_)) & 1) == 0;
}

PauliString PauliString::remove_qubit(int q) const {
  auto drop = [q](std::uint64_t m) {
    const std::uint64_t low = m & low_mask(q);
    const std::uint64_t high = q + 1 >= 64 ? 0 : (m >> (q + 1)) << q;
    return low | high;
  };
  return {n_ - 1, drop(x_), drop(z_)};
}

PauliString PauliString::insert_qubit(int q) const {
  auto ins = [q](std::uint64_t m) {
    const std::uint64_t low = m & low_mask(q);
    const std::uint64_t high = (m >> q) << (q + 1);
    return low | high;
  };
  return {n_ + 1, ins(x_), ins(z_)};
}

std::pair<Complex, PauliString> multiply(const PauliString& a, const PauliString& b) {
  // P = i^{|x&z|} X^x Z^z, and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
                2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
  return {i_power(k), PauliString(a.n_qubits(), x, z)};
}

PauliSum::PauliSum(const PauliString& p, Complex c) : n_(p.n_qubits()) { add_term(p, c); }

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::accumulate(const PauliString& p, Complex c) {
  if (p.n_qubits() != n_) throw ContractViolation(kModule, "Pauli string size does not match the sum");
  terms_[p] += c;
}

void PauliSum::add_term(const PauliString& p, Complex c) {
  accumulate(p, c);
  auto it = terms_.find(p);
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

PauliSum& PauliSum::simplify(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  check_same_size(*this, o);
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  return simplify();
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  check_same_size(*this, o);
  for (const auto& [p, c] : o.terms_) terms_[p] -= c;
  return simplify();
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto& kv : terms_) kv.second *= c;
  return simplify();
}

PauliSum PauliSum::operator-() const {
  PauliSum out(*this);
  for (auto& kv : out.terms_) kv.second = -kv.second;
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(*this);
  for (auto& kv : out.terms_) kv.second = std::conj(kv.second);
  return out;
}

double PauliSum::max_imaginary() const {
  double m = 0.0;
  for (const auto& kv : terms_) m = std::max(m, std::abs(kv.second.imag()));
  return m;
}

PauliSum PauliSum::real_part() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.add_term(p, c.real());
  return out;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& kv : terms_) s += std::abs(kv.second);
  return s;
}

bool PauliSum::commutes_with(const PauliString& p) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return kv.first.commutes_with(p); });
}

ComplexMatrix PauliSum::to_matrix() const {
  if (n_ > 14) throw CapacityError(kModule, "dense matrix requested for " + std::to_string(n_) + " qubits");
  const std::uint64_t dim = std::uint64_t{1} << n_;
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [p, c] : terms_) {
    const Complex base = c * i_power(std::popcount(p.x_mask() & p.z_mask()));
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(p.z_mask() & b) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) += sign * base;
    }
  }
  return m;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
PauliSum operator*(Complex c, PauliSum a) { return a *= c; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_size(a, b);
  PauliSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      auto [phase, p] = multiply(pa, pb);
      out.accumulate(p, phase * ca * cb);
    }
  }
  return out.simplify();
}

bool approx_equal(const PauliSum& a, const PauliSum& b, double tol) {
  if (a.n_qubits() != b.n_qubits()) return false;
  PauliSum d = a - b;
  return std::all_of(d.terms().begin(), d.terms().end(), [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

void write_pauli_sum(std::ostream& out, const PauliSum& op) {
  char buf[96];
  for (const auto& [p, c] : op.terms()) {
    if (c.imag() == 0.0) {
      std::snprintf(buf, sizeof buf, "%+.10f", c.real());
    } else {
      std::snprintf(buf, sizeof buf, "(%+.10f%+.10fj)", c.real(), c.imag());
    }
    out << buf << ' ' << p.label() << '\n';
  }
}

std::string to_string(const PauliSum& op) {
  std::ostringstream s;
  write_pauli_sum(s, op);
  return s.str();
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  PauliSum out;
  bool sized = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string coef, label, extra;
    if (!(fields >> coef)) continue;
    if (!(fields >> label) || (fields >> extra)) throw ParseError(kModule, line_no, "expected '<coefficient> <label>'");
    Complex c;
    try {
      if (coef.front() == '(') {
        if (coef.back() != ')' || coef.size() < 4 || coef[coef.size() - 2] != 'j') throw std::invalid_argument(coef);
        const std::string body = coef.substr(1, coef.size() - 3);
        std::size_t used = 0;
        const double re = std::stod(body, &used);
        const double im = std::stod(body.substr(used));
        c = {re, im};
      } else {
        std::size_t used = 0;
        c = std::stod(coef, &used);
        if (used != coef.size()) throw std::invalid_argument(coef);
      }
    } catch (const std::exception&) {
      throw ParseError(kModule, line_no, "bad coefficient '" + coef + "'");
    }
    PauliString p;
    try {
      p = PauliString::from_label(label);
    } catch (const ParseError&) {
      throw ParseError(kModule, line_no, "bad Pauli label '" + label + "'");
    }
    if (!sized) {
      out = PauliSum(p.n_qubits());
      sized = true;
    }
    if (p.n_qubits() != out.n_qubits()) throw ParseError(kModule, line_no, "label length differs from earlier terms");
    out.add_term(p, c);
  }
  return out;
}

namespace {

ComplexMatrix restricted_matrix(const PauliSum& op, std::span<const std::uint64_t> basis) {
  if (basis.empty()) return op.to_matrix();
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<Eigen::Index>(k);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [p, c] : op.terms()) {
    const Complex base = c * i_power(std::popcount(p.x_mask() & p.z_mask()));
    for (Eigen::Index col = 0; col < dim; ++col) {
      const std::uint64_t b = basis[static_cast<std::size_t>(col)];
      auto it = index.find(b ^ p.x_mask());
      if (it == index.end()) continue;
      const double sign = (std::popcount(p.z_mask() & b) & 1) ? -1.0 : 1.0;
      m(it->second, col) += sign * base;
    }
  }
  return m;
}

}  // namespace

Vector eigenvalues(const PauliSum& op, std::span<const std::uint64_t> basis) {
  const ComplexMatrix m = restricted_matrix(op, basis);
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double ground_energy(const PauliSum& op, std::span<const std::uint64_t> basis) {
  const Vector ev = eigenvalues(op, basis);
  if (ev.size() == 0) throw ContractViolation(kModule, "empty basis");
  return ev(0);
}

}  // namespace qdft
