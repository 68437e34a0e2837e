#include <qdft/activespace.hpp>
#include <qdft/errors.hpp>

#include <algorithm>
#include <numeric>

namespace qdft {

namespace {
constexpr const char* kModule = "activespace";
}

void ActiveSpaceSpec::validate() const {
  if (n_active_electrons < 0 || n_active_orbitals < 0) {
    throw SpecError(kModule, "active-space counts must be non-negative");
  }
  if (n_active_electrons % 2 != 0) {
    throw SpecError(kModule, "closed-shell active space needs an even electron count, got " + label());
  }
  if (n_active_electrons > 2 * n_active_orbitals) {
    throw SpecError(kModule, label() + " holds more electrons than 2 * orbitals");
  }
}

std::string ActiveSpaceSpec::label() const {
  return "(" + std::to_string(n_active_electrons) + "e," + std::to_string(n_active_orbitals) + "o)";
}

ActiveSpaceSpec parse_active_spec(const std::string& text) {
  const auto comma = text.find(',');
  ActiveSpaceSpec spec;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    std::size_t used = 0;
    spec.n_active_electrons = std::stoi(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(comma + 1);
    spec.n_active_orbitals = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw SpecError(kModule, "active space must be written NE,NO (e.g. 4,6), got '" + text + "'");
  }
  spec.validate();
  return spec;
}

OrbitalSelection select_orbitals(int n_orbitals, int n_electrons, const ActiveSpaceSpec& spec) {
  spec.validate();
  if (spec.n_active_electrons > n_electrons) {
    throw SpecError(kModule, spec.label() + " has more electrons than the system (" + std::to_string(n_electrons) + ")");
  }
  if ((n_electrons - spec.n_active_electrons) % 2 != 0) {
    throw SpecError(kModule, "inactive electron count must be even");
  }
  const int n_occ = n_electrons / 2;
  const int active_occ = spec.n_active_electrons / 2;
  const int active_virt = spec.n_active_orbitals - active_occ;
  const int n_inactive = n_occ - active_occ;
  if (n_occ + active_virt > n_orbitals) {
    throw SpecError(kModule, spec.label() + " needs " + std::to_string(n_inactive + spec.n_active_orbitals) +
                                 " orbitals around the Fermi level but only " + std::to_string(n_orbitals) +
                                 " exist");
  }
  OrbitalSelection sel;
  sel.inactive.resize(n_inactive);
  std::iota(sel.inactive.begin(), sel.inactive.end(), 0);
  sel.active.resize(spec.n_active_orbitals);
  std::iota(sel.active.begin(), sel.active.end(), n_inactive);
  return sel;
}

OrbitalSelection select_orbitals(const MeanFieldResult& mf, const ActiveSpaceSpec& spec) {
  const auto n = static_cast<int>(mf.orbital_energies.size());
  if (!std::is_sorted(mf.orbital_energies.data(), mf.orbital_energies.data() + n)) {
    throw ContractViolation(kModule, "orbital energies must be sorted ascending");
  }
  return select_orbitals(n, mf.n_electrons, spec);
}

ActiveHamiltonian as_active_hamiltonian(const IntegralSet& set) { return ActiveHamiltonian{set}; }

TwoBodyTensor transform_two_body(const TwoBodyTensor& eri, const Matrix& c) {
  const int n = eri.size();
  const int m = static_cast<int>(c.cols());
  const auto v = eri.as_matrix();  // V(ab, cd)

  // First half: (ab) -> (pq) for every (cd).
  Matrix half(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(n) * n);
  for (int cd = 0; cd < n * n; ++cd) {
    Eigen::Map<const Matrix> ab(v.col(cd).data(), n, n);
    const Matrix pq = c.transpose() * ab * c;
    half.col(cd) = Eigen::Map<const Vector>(pq.data(), static_cast<Eigen::Index>(m) * m);
  }
  // Second half: (cd) -> (rs) for every (pq).
  TwoBodyTensor out(m);
  for (int pq = 0; pq < m * m; ++pq) {
    const Vector row = half.row(pq).transpose();
    Eigen::Map<const Matrix> cd(row.data(), n, n);
    const Matrix rs = c.transpose() * cd * c;
    const int p = pq % m;
    const int q = pq / m;
    for (int s = 0; s < m; ++s) {
      for (int r = 0; r < m; ++r) out(p, q, r, s) = rs(r, s);
    }
  }
  return out;
}

ActiveHamiltonian reduce(const IntegralSet& set, const Matrix& orbitals, const OrbitalSelection& selection,
                         const Matrix& bath_density, int n_active_electrons) {
  const int n = set.n_orbitals();
  if (orbitals.rows() != n || bath_density.rows() != n || bath_density.cols() != n) {
    throw ContractViolation(kModule, "orbital or density dimensions do not match the integral set");
  }
  const int m = static_cast<int>(selection.active.size());
  if (n_active_electrons > 2 * m) throw SpecError(kModule, "too many active electrons for the active orbitals");

  const TwoBodyTensor eri = dense_two_body(set);
  const Matrix g = coulomb_exchange(eri, bath_density);
  const Matrix fock = set.one_body() + g;

  Matrix c_active(n, m);
  for (int k = 0; k < m; ++k) c_active.col(k) = orbitals.col(selection.active[k]);

  const Matrix h_eff = c_active.transpose() * fock * c_active;
  const TwoBodyTensor active_eri = transform_two_body(eri, c_active);

  IntegralSet out(m, n_active_electrons, 0);
  out.set_core_energy(mean_field_energy(set, bath_density, fock));
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q <= p; ++q) out.set_one_body(p, q, 0.5 * (h_eff(p, q) + h_eff(q, p)));
  }
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q <= p; ++q) {
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          out.set_two_body(p, q, r, s, active_eri(p, q, r, s));
        }
      }
    }
  }
  return ActiveHamiltonian{std::move(out)};
}

ActiveHamiltonian reduce(const IntegralSet& set, const MeanFieldResult& mf, const ActiveSpaceSpec& spec) {
  const OrbitalSelection sel = select_orbitals(mf, spec);
  const Matrix bath = closed_shell_density(mf.orbital_coefficients, sel.inactive);
  return reduce(set, mf.orbital_coefficients, sel, bath, spec.n_active_electrons);
}

}  // namespace qdft
