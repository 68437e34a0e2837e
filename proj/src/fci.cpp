#include <qdft/errors.hpp>
#include <qdft/fci.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace qdft {

namespace {

constexpr const char* kModule = "fci";

double sign_below(std::uint64_t occ, int k) {
  return (std::popcount(occ & ((std::uint64_t{1} << k) - 1)) & 1) ? -1.0 : 1.0;
}

// a+_p a_q acting on string I: (target string, sign) for every p, q with the
// result non-zero. Diagonal p == q included.
struct StringExcitation {
  int p, q;
  std::size_t target;
  double sign;
};

std::vector<std::vector<StringExcitation>> excitation_lists(const std::vector<std::uint64_t>& strings, int n) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < strings.size(); ++i) index[strings[i]] = i;
  std::vector<std::vector<StringExcitation>> out(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const std::uint64_t s = strings[i];
    for (int q = 0; q < n; ++q) {
      if (!((s >> q) & 1u)) continue;
      const std::uint64_t mid = s ^ (std::uint64_t{1} << q);
      const double sq = sign_below(s, q);
      for (int p = 0; p < n; ++p) {
        if ((mid >> p) & 1u) continue;
        const std::uint64_t t = mid | (std::uint64_t{1} << p);
        out[i].push_back({p, q, index.at(t), sq * sign_below(mid, p)});
      }
    }
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

struct Problem {
  int n = 0, na = 0, nb = 0;
  std::vector<std::uint64_t> sa, sb;
  std::vector<std::vector<StringExcitation>> ea, eb;
  Matrix h;
  Matrix k;  // h_pq - 1/2 sum_r (pr|rq)
  TwoBodyTensor eri;

  Problem(const ActiveHamiltonian& ham, int n_alpha, int n_beta)
      : n(ham.n_orbitals()), na(n_alpha), nb(n_beta), h(ham.one_body_eff()), eri(dense_two_body(ham.integrals)) {
    sa = occupation_strings(n, na);
    sb = occupation_strings(n, nb);
    ea = excitation_lists(sa, n);
    eb = excitation_lists(sb, n);
    k = h;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        for (int r = 0; r < n; ++r) k(p, q) -= 0.5 * eri(p, r, r, q);
      }
    }
  }

  std::size_t dim() const { return sa.size() * sb.size(); }

  // sigma = sum k_pq E_pq c + 1/2 sum (pq|rs) E_pq E_rs c. D(rs, I) = <I|E_rs|c>
  // is built column by column, contracted with the integrals in one product,
  // then scattered back through E_pq.
  Vector sigma(const Vector& c) const {
    const std::size_t nb_str = sb.size();
    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    Matrix D = Matrix::Zero(nn, c.size());
    auto col_of = [nb_str](std::size_t ia, std::size_t ib) { return static_cast<Eigen::Index>(ia * nb_str + ib); };
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (const auto& e : ea[ia]) {
        const Eigen::Index pq = e.p * n + e.q;
        for (std::size_t ib = 0; ib < nb_str; ++ib) D(pq, col_of(e.target, ib)) += e.sign * c[col_of(ia, ib)];
      }
    }
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (std::size_t ib = 0; ib < nb_str; ++ib) {
        const double cv = c[col_of(ia, ib)];
        if (cv == 0.0) continue;
        for (const auto& e : eb[ib]) D(e.p * n + e.q, col_of(ia, e.target)) += e.sign * cv;
      }
    }
    const Vector kflat = Eigen::Map<const Vector>(k.data(), nn);  // column-major: q*n+p, k symmetric
    Matrix G = 0.5 * (eri.as_matrix() * D);
    G += kflat * c.transpose();

    Vector out = Vector::Zero(c.size());
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (const auto& e : ea[ia]) {
        const Eigen::Index pq = e.p * n + e.q;
        for (std::size_t ib = 0; ib < nb_str; ++ib) out[col_of(e.target, ib)] += e.sign * G(pq, col_of(ia, ib));
      }
    }
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (std::size_t ib = 0; ib < nb_str; ++ib) {
        for (const auto& e : eb[ib]) out[col_of(ia, e.target)] += e.sign * G(e.p * n + e.q, col_of(ia, ib));
      }
    }
    return out;
  }

  // Slater-Condon in spin orbitals; determinant = alpha bits | beta bits << n.
  double spin_eri(int P, int Q, int R, int S) const {  // (PQ|RS) with spin
    const auto sp = [this](int m) { return m >= n ? 1 : 0; };
    if (sp(P) != sp(Q) || sp(R) != sp(S)) return 0.0;
    return eri(P % n, Q % n, R % n, S % n);
  }
  double spin_h(int P, int Q) const { return (P >= n) == (Q >= n) ? h(P % n, Q % n) : 0.0; }

  double element(std::uint64_t bra, std::uint64_t ket) const {
    const std::uint64_t diff = bra ^ ket;
    const int nd = std::popcount(diff);
    const int m = 2 * n;
    if (nd == 0) {
      double e = 0.0;
      for (int i = 0; i < m; ++i) {
        if (!((ket >> i) & 1u)) continue;
        e += spin_h(i, i);
        for (int j = 0; j < m; ++j) {
          if ((ket >> j) & 1u) e += 0.5 * (spin_eri(i, i, j, j) - spin_eri(i, j, j, i));
        }
      }
      return e;
    }
    if (nd == 2) {
      const int i = std::countr_zero(diff & ket), a = std::countr_zero(diff & bra);
      const std::uint64_t mid = ket ^ (std::uint64_t{1} << i);
      const double sign = sign_below(ket, i) * sign_below(mid, a);
      double v = spin_h(a, i);
      for (int j = 0; j < m; ++j) {
        if ((ket >> j) & 1u) v += spin_eri(a, i, j, j) - spin_eri(a, j, j, i);
      }
      return sign * v;
    }
    if (nd == 4) {
      std::uint64_t rem = diff & ket;
      const int i = std::countr_zero(rem);
      rem &= rem - 1;
      const int j = std::countr_zero(rem);
      std::uint64_t add = diff & bra;
      const int a = std::countr_zero(add);
      add &= add - 1;
      const int b = std::countr_zero(add);
      // a+_a a+_b a_j a_i |ket>
      std::uint64_t s = ket;
      double sign = sign_below(s, i);
      s ^= std::uint64_t{1} << i;
      sign *= sign_below(s, j);
      s ^= std::uint64_t{1} << j;
      sign *= sign_below(s, b);
      s ^= std::uint64_t{1} << b;
      sign *= sign_below(s, a);
      return sign * (spin_eri(a, i, b, j) - spin_eri(a, j, b, i));
    }
    return 0.0;
  }

  Matrix dense() const {
    const std::size_t d = dim();
    Matrix H(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<std::uint64_t> dets(d);
    for (std::size_t ia = 0; ia < sa.size(); ++ia) {
      for (std::size_t ib = 0; ib < sb.size(); ++ib) dets[ia * sb.size() + ib] = sa[ia] | (sb[ib] << n);
    }
    for (std::size_t I = 0; I < d; ++I) {
      for (std::size_t J = 0; J <= I; ++J) {
        const double v = element(dets[I], dets[J]);
        H(static_cast<Eigen::Index>(I), static_cast<Eigen::Index>(J)) = v;
        H(static_cast<Eigen::Index>(J), static_cast<Eigen::Index>(I)) = v;
      }
    }
    return H;
  }
};

// Lanczos with full reorthogonalisation, restarted from the current Ritz
// vector. Deterministic given the start vector.
double lanczos(const Problem& prob, Vector& v, const FciOptions& opt) {
  const Eigen::Index d = v.size();
  double theta = 0.0;
  for (int restart = 0; restart < opt.max_restarts; ++restart) {
    const int kmax = static_cast<int>(std::min<Eigen::Index>(opt.max_krylov, d));
    Matrix V(d, kmax);
    std::vector<double> alpha, beta;
    V.col(0) = v.normalized();
    Vector ritz = V.col(0);
    double resid = 0.0;
    for (int j = 0; j < kmax; ++j) {
      Vector w = prob.sigma(V.col(j));
      alpha.push_back(V.col(j).dot(w));
      for (int pass = 0; pass < 2; ++pass) {
        const Vector overlaps = V.leftCols(j + 1).transpose() * w;
        w -= V.leftCols(j + 1) * overlaps;
      }
      const double b = w.norm();

      Matrix T = Matrix::Zero(j + 1, j + 1);
      for (int i = 0; i <= j; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i > 0) T(i, i - 1) = T(i - 1, i) = beta[static_cast<std::size_t>(i - 1)];
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(T);
      theta = es.eigenvalues()[0];
      const Vector y = es.eigenvectors().col(0);
      resid = std::abs(b * y[j]);
      ritz = V.leftCols(j + 1) * y;
      if (resid < opt.tolerance || b < 1e-14 || j + 1 == kmax) break;
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    v = ritz.normalized();
    const double true_resid = (prob.sigma(v) - theta * v).norm();
    if (true_resid < opt.tolerance) return theta;
    if (resid < 1e-14 && true_resid < 10 * opt.tolerance) return theta;
  }
  return theta;
}

}  // namespace

std::vector<std::uint64_t> occupation_strings(int n_orbitals, int n_set) {
  std::vector<std::uint64_t> out;
  if (n_set < 0 || n_set > n_orbitals) return out;
  if (n_set == 0) return {0};
  std::uint64_t s = (std::uint64_t{1} << n_set) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n_orbitals;
  while (s < limit) {
    out.push_back(s);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

Matrix fci_hamiltonian_matrix(const ActiveHamiltonian& h, int n_alpha, int n_beta) {
  return Problem(h, n_alpha, n_beta).dense();
}

Vector fci_sigma(const ActiveHamiltonian& h, int n_alpha, int n_beta, const Vector& c) {
  const Problem prob(h, n_alpha, n_beta);
  if (static_cast<std::size_t>(c.size()) != prob.dim()) throw ContractViolation(kModule, "vector length does not match the basis");
  return prob.sigma(c);
}

FciResult fci_solve(const ActiveHamiltonian& h, int n_electrons, int ms2, const FciOptions& options) {
  const int n = h.n_orbitals();
  if (n_electrons < 0 || (n_electrons + ms2) % 2 != 0 || std::abs(ms2) > n_electrons) {
    throw SpecError(kModule, "inconsistent electron count " + std::to_string(n_electrons) + " and 2Sz " +
                                 std::to_string(ms2));
  }
  const int na = (n_electrons + ms2) / 2, nb = (n_electrons - ms2) / 2;
  if (na > n || nb > n) throw SpecError(kModule, "more electrons than spin orbitals");
  if (n > 63) throw CapacityError(kModule, "at most 63 active orbitals");
  const std::uint64_t dim = binomial(n, na) * binomial(n, nb);
  if (dim > options.dimension_cap) {
    throw CapacityError(kModule, "determinant space of dimension " + std::to_string(dim) + " exceeds the cap of " +
                                     std::to_string(options.dimension_cap));
  }

  const Problem prob(h, na, nb);
  FciResult r;
  r.n_orbitals = n;
  r.n_alpha = na;
  r.n_beta = nb;
  r.alpha_strings = prob.sa;
  r.beta_strings = prob.sb;
  r.basis_dimension = prob.dim();

  if (r.basis_dimension <= options.dense_limit && !options.force_iterative) {
    const auto eig = symmetric_eigen(prob.dense());
    r.ground_energy = eig.values[0];
    r.ground_vector = eig.vectors.col(0);
  } else {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(r.basis_dimension));
    v[0] = 1.0;  // lowest strings in both spins: the closed-shell reference
    r.ground_energy = lanczos(prob, v, options);
    Matrix col = v;
    fix_column_signs(col);
    r.ground_vector = col.col(0);
    r.iterative = true;
  }
  r.residual_norm = (prob.sigma(r.ground_vector) - r.ground_energy * r.ground_vector).norm();
  r.one_rdm = compute_1rdm(r);
  return r;
}

Matrix compute_1rdm(const FciResult& r) {
  const int n = r.n_orbitals;
  if (static_cast<std::size_t>(r.ground_vector.size()) != r.alpha_strings.size() * r.beta_strings.size()) {
    throw ContractViolation(kModule, "ground vector does not match the determinant basis");
  }
  const auto rows = static_cast<Eigen::Index>(r.alpha_strings.size());
  const auto cols = static_cast<Eigen::Index>(r.beta_strings.size());
  Matrix C(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) C.row(i) = r.ground_vector.segment(i * cols, cols).transpose();

  Matrix gamma = Matrix::Zero(n, n);
  const auto ea = excitation_lists(r.alpha_strings, n);
  const auto eb = excitation_lists(r.beta_strings, n);
  for (Eigen::Index ia = 0; ia < rows; ++ia) {
    for (const auto& e : ea[static_cast<std::size_t>(ia)]) {
      gamma(e.p, e.q) += e.sign * C.row(static_cast<Eigen::Index>(e.target)).dot(C.row(ia));
    }
  }
  for (Eigen::Index ib = 0; ib < cols; ++ib) {
    for (const auto& e : eb[static_cast<std::size_t>(ib)]) {
      gamma(e.p, e.q) += e.sign * C.col(static_cast<Eigen::Index>(e.target)).dot(C.col(ib));
    }
  }
  return symmetrized(gamma);
}

}  // namespace qdft
