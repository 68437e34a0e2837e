#include <qdft/errors.hpp>
#include <qdft/tapering.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>

namespace qdft {

namespace {

constexpr const char* kModule = "qubitmap";

struct Symplectic {
  std::uint64_t x = 0, z = 0;
  bool is_zero() const { return x == 0 && z == 0; }
  Symplectic& operator^=(const Symplectic& o) {
    x ^= o.x;
    z ^= o.z;
    return *this;
  }
  // Column c < n addresses x bit c, c >= n addresses z bit c - n.
  bool bit(int c, int n) const { return c < n ? (x >> c) & 1u : (z >> (c - n)) & 1u; }
};

bool omega(const Symplectic& a, const Symplectic& b) {
  return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

// Row-reduces `rows` in place over GF(2) and returns the independent rows.
std::vector<Symplectic> row_basis(std::vector<Symplectic> rows, int n) {
  std::vector<Symplectic> basis;
  for (int c = 0; c < 2 * n && !rows.empty(); ++c) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Symplectic& r) { return r.bit(c, n); });
    if (it == rows.end()) continue;
    const Symplectic pivot = *it;
    rows.erase(it);
    for (auto& r : rows) {
      if (r.bit(c, n)) r ^= pivot;
    }
    std::erase_if(rows, [](const Symplectic& r) { return r.is_zero(); });
    basis.push_back(pivot);
  }
  return basis;
}

// Null space of a k x k GF(2) matrix given as rows of bits.
std::vector<std::vector<std::uint8_t>> null_space(std::vector<std::vector<std::uint8_t>> m) {
  const std::size_t k = m.size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  std::vector<bool> is_pivot(k, false);
  for (std::size_t c = 0; c < k && row < k; ++c) {
    std::size_t r = row;
    while (r < k && !m[r][c]) ++r;
    if (r == k) continue;
    std::swap(m[r], m[row]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i != row && m[i][c]) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] ^= m[row][j];
      }
    }
    pivot_col.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++row;
  }
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint8_t> v(k, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      if (m[r][f]) v[static_cast<std::size_t>(pivot_col[r])] = 1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct PivotPlan {
  std::vector<Symplectic> generators;
  std::vector<int> qubits;
  std::vector<char> paulis;
};

// Gauss-Jordan with at most one pivot per qubit. `z_first` flips which of a
// qubit's two columns is tried first; `reverse` walks qubits high to low.
std::optional<PivotPlan> plan_pivots(std::vector<Symplectic> gens, int n, bool z_first, bool reverse) {
  PivotPlan plan;
  std::vector<bool> done(gens.size(), false);
  std::vector<std::size_t> rows;
  for (int step = 0; step < n; ++step) {
    const int q = reverse ? n - 1 - step : step;
    const int cols[2] = {z_first ? n + q : q, z_first ? q : n + q};
    for (int c : cols) {
      std::size_t g = 0;
      while (g < gens.size() && (done[g] || !gens[g].bit(c, n))) ++g;
      if (g == gens.size()) continue;
      for (std::size_t o = 0; o < gens.size(); ++o) {
        if (o != g && gens[o].bit(c, n)) gens[o] ^= gens[g];
      }
      done[g] = true;
      rows.push_back(g);
      plan.qubits.push_back(q);
      // Pivot on the X component pairs with Z, pivot on Z pairs with X.
      plan.paulis.push_back(c < n ? 'Z' : 'X');
      break;
    }
  }
  if (rows.size() != gens.size()) return std::nullopt;
  // Later pivots never reintroduce an eliminated column, so rows are final.
  for (std::size_t g : rows) plan.generators.push_back(gens[g]);
  return plan;
}

PauliString to_pauli(const Symplectic& s, int n) { return {n, s.x, s.z}; }

}  // namespace

PauliSum TaperingResult::taper(const std::vector<int>& sector) const {
  if (sector.size() != symmetry_generators.size()) {
    throw SpecError(kModule, "sector needs one label per symmetry generator");
  }
  for (int s : sector) {
    if (s != 1 && s != -1) throw SpecError(kModule, "sector labels must be +1 or -1");
  }
  std::vector<std::size_t> order(tapered_qubits.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return tapered_qubits[a] > tapered_qubits[b]; });

  PauliSum out(qubit_count_after);
  for (const auto& [p, c] : rotated_operator.terms()) {
    Complex coeff = c;
    PauliString reduced = p;
    for (std::size_t k : order) {
      const int q = tapered_qubits[k];
      const char here = p.at(q);
      if (here == single_qubit_paulis[k].at(q)) {
        coeff *= static_cast<double>(sector[k]);
      } else if (here != 'I') {
        throw ContractViolation(kModule, "rotated term " + p.label() + " does not commute with its tapered qubit");
      }
      reduced = reduced.remove_qubit(q);
    }
    out.accumulate(reduced, coeff);
  }
  return out.simplify();
}

std::vector<std::vector<int>> TaperingResult::all_sectors() const {
  const int g = n_generators();
  std::vector<std::vector<int>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g); ++m) {
    std::vector<int> s(static_cast<std::size_t>(g));
    for (int k = 0; k < g; ++k) s[static_cast<std::size_t>(k)] = ((m >> k) & 1u) ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

TaperingResult find_z2_symmetries(const PauliSum& op) {
  const int n = op.n_qubits();
  std::vector<Symplectic> rows;
  for (const auto& [p, c] : op.terms()) {
    if (!p.is_identity()) rows.push_back({p.x_mask(), p.z_mask()});
  }
  const auto basis = row_basis(rows, n);
  const std::size_t k = basis.size();

  std::vector<std::vector<std::uint8_t>> gram(k, std::vector<std::uint8_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = omega(basis[i], basis[j]);
  }
  std::vector<Symplectic> centre;
  for (const auto& a : null_space(gram)) {
    Symplectic v;
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i]) v ^= basis[i];
    }
    centre.push_back(v);
  }

  TaperingResult result;
  result.qubit_count_before = n;
  if (!centre.empty()) {
    std::optional<PivotPlan> plan;
    for (int attempt = 0; attempt < 4 && !plan; ++attempt) {
      plan = plan_pivots(centre, n, attempt & 1, attempt & 2);
    }
    if (!plan) throw ContractViolation(kModule, "could not assign single-qubit partners to the symmetry generators");
    for (std::size_t g = 0; g < plan->generators.size(); ++g) {
      result.symmetry_generators.push_back(to_pauli(plan->generators[g], n));
      result.single_qubit_paulis.push_back(PauliString::single(n, plan->qubits[g], plan->paulis[g]));
      result.tapered_qubits.push_back(plan->qubits[g]);
    }
  }

  // Sanity: partners pair up one-to-one with generators.
  for (int i = 0; i < result.n_generators(); ++i) {
    for (int j = 0; j < result.n_generators(); ++j) {
      const bool anti = !result.single_qubit_paulis[i].commutes_with(result.symmetry_generators[j]);
      if (anti != (i == j)) throw ContractViolation(kModule, "tapering partners are not independent");
    }
    if (!op.commutes_with(result.symmetry_generators[i])) {
      throw ContractViolation(kModule, "symmetry generator does not commute with the operator");
    }
  }

  PauliSum rotated = op;
  for (int g = 0; g < result.n_generators(); ++g) {
    const auto& tau = result.symmetry_generators[g];
    const auto& sigma = result.single_qubit_paulis[g];
    const auto [phase_ts, ts] = multiply(tau, sigma);
    PauliSum next(n);
    for (const auto& [p, c] : rotated.terms()) {
      if (p.commutes_with(sigma)) {
        next.accumulate(p, c);
      } else {
        const auto [phase, prod] = multiply(p, ts);
        next.accumulate(prod, c * phase_ts * phase);
      }
    }
    rotated = next.simplify();
  }
  result.rotated_operator = std::move(rotated);
  result.qubit_count_after = n - result.n_generators();
  result.sector_labels.assign(static_cast<std::size_t>(result.n_generators()), 1);
  result.tapered_operator = result.taper(result.sector_labels);
  return result;
}

std::vector<int> lowest_energy_sector(const TaperingResult& result, double* energy) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_sector;
  for (const auto& sector : result.all_sectors()) {
    const double e = ground_energy(result.taper(sector));
    if (e < best - 1e-12) {
      best = e;
      best_sector = sector;
    }
  }
  if (energy) *energy = best;
  return best_sector;
}

}  // namespace qdft
