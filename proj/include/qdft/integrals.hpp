#pragma once

#include <qdft/linalg.hpp>

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qdft {

/// 0-based orbital indices of a chemists'-notation integral (pq|rs).
struct OrbitalQuartet {
  int p = 0, q = 0, r = 0, s = 0;
  auto operator<=>(const OrbitalQuartet&) const = default;
};

/// Representative of the 8-fold permutation class of (pq|rs): p>=q, r>=s and
/// the pair (p,q) not below (r,s).
OrbitalQuartet canonical_quartet(int p, int q, int r, int s);

/// One- and two-electron integrals in an orthonormal orbital basis.
///
/// The one-body matrix is kept symmetric on every write. Two-body integrals
/// live in a sparse map keyed by canonical quartet, so any of the 8
/// equivalent index orders reads back the same stored double. Zero values are
/// not stored.
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int n_orbitals, int n_electrons, int spin_2ms = 0);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_electrons() const noexcept { return n_electrons_; }
  int spin_2ms() const noexcept { return spin_2ms_; }

  double core_energy() const noexcept { return core_energy_; }
  void set_core_energy(double e) noexcept { core_energy_ = e; }

  const Matrix& one_body() const noexcept { return one_body_; }
  double one_body(int p, int q) const { return one_body_(p, q); }
  void set_one_body(int p, int q, double value);

  double two_body(int p, int q, int r, int s) const;
  void set_two_body(int p, int q, int r, int s, double value);
  const std::map<OrbitalQuartet, double>& two_body_entries() const noexcept {
    return two_body_;
  }

  /// ORBSYM labels as read; carried through write but otherwise unused.
  const std::vector<int>& orbital_symmetry() const noexcept { return orbsym_; }
  void set_orbital_symmetry(std::vector<int> labels) { orbsym_ = std::move(labels); }

  friend bool operator==(const IntegralSet&, const IntegralSet&);

 private:
  void check_index(int p) const;

  int n_orbitals_ = 0;
  int n_electrons_ = 0;
  int spin_2ms_ = 0;
  double core_energy_ = 0.0;
  Matrix one_body_;
  std::map<OrbitalQuartet, double> two_body_;
  std::vector<int> orbsym_;
};

/// Dense (pq|rs) with all permutations filled, for inner loops.
class TwoBodyTensor {
 public:
  TwoBodyTensor() = default;
  explicit TwoBodyTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int size() const noexcept { return n_; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }
  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }

  /// Writes value to all 8 equivalent positions.
  void set_symmetric(int p, int q, int r, int s, double value);

  /// View as an n^2 x n^2 matrix V(pq, rs) with compound index p*n+q.
  Eigen::Map<const Matrix> as_matrix() const {
    return {data_.data(), static_cast<Eigen::Index>(n_) * n_,
            static_cast<Eigen::Index>(n_) * n_};
  }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    // Column-major compound (pq),(rs) so as_matrix() lines up.
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    return (static_cast<std::size_t>(p) * n_ + q) + nn * (static_cast<std::size_t>(r) * n_ + s);
  }

  int n_ = 0;
  std::vector<double> data_;
};

TwoBodyTensor dense_two_body(const IntegralSet& set);

/// Reads the Knowles-Handy FCIDUMP format: a `&FCI ... &END` (or `/`) namelist
/// header with NORB, NELEC and optional MS2/ORBSYM/ISYM, comma or whitespace
/// separated, followed by `value i j k l` lines with 1-based indices.
/// Duplicate entries are last-wins. Fortran `D` exponents are accepted.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet parse_fcidump(std::string_view text);
IntegralSet read_fcidump_file(const std::string& path);

/// Canonical FCIDUMP: symmetry-unique non-zero entries sorted by index,
/// one-body lines after two-body lines, core energy last. Values are written
/// in shortest round-trip form so parse(write(s)) == s bitwise.
void write_fcidump(std::ostream& out, const IntegralSet& set);
std::string write_fcidump(const IntegralSet& set);

/// Shortest round-trip decimal form of a double, always containing a '.' or
/// exponent (e.g. "0.0", "-1.25").
std::string format_roundtrip(double value);

}  // namespace qdft
