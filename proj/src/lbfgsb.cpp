#include <qdft/errors.hpp>
#include <qdft/lbfgsb.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace qdft {

namespace {

constexpr const char* kModule = "vqe";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Limited-memory pairs and the pieces of B = theta I - W M W^T.
class CompactHessian {
 public:
  explicit CompactHessian(int memory) : memory_(memory) {}

  void reset() {
    s_.clear();
    y_.clear();
    theta_ = 1.0;
    rebuild(0);
  }

  bool update(const Vector& s, const Vector& y) {
    const double sy = s.dot(y);
    const double yy = y.squaredNorm();
    if (sy <= kEps * yy || sy <= 0.0) return false;
    if (static_cast<int>(s_.size()) == memory_) {
      s_.pop_front();
      y_.pop_front();
    }
    s_.push_back(s);
    y_.push_back(y);
    theta_ = yy / sy;
    rebuild(s.size());
    return true;
  }

  int size() const { return static_cast<int>(s_.size()); }
  double theta() const { return theta_; }
  const Matrix& W() const { return w_; }
  const Matrix& M() const { return m_; }

 private:
  void rebuild(Eigen::Index n) {
    const int k = size();
    if (k == 0) {
      w_.resize(n, 0);
      m_.resize(0, 0);
      return;
    }
    Matrix S(n, k), Y(n, k);
    for (int j = 0; j < k; ++j) {
      S.col(j) = s_[j];
      Y.col(j) = y_[j];
    }
    w_.resize(n, 2 * k);
    w_ << Y, theta_ * S;
    const Matrix sy = S.transpose() * Y;
    Matrix minv = Matrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
      minv(i, i) = -sy(i, i);
      for (int j = 0; j < i; ++j) {
        minv(k + i, j) = sy(i, j);  // L
        minv(j, k + i) = sy(i, j);  // L^T
      }
    }
    minv.bottomRightCorner(k, k) = theta_ * (S.transpose() * S);
    m_ = minv.fullPivLu().inverse();
  }

  int memory_;
  std::deque<Vector> s_, y_;
  double theta_ = 1.0;
  Matrix w_, m_;
};

// Generalized Cauchy point along the projected steepest-descent path.
// Returns x_cp and the vector c = W^T (x_cp - x) needed downstream.
Vector cauchy_point(const Vector& x, const Vector& g, const Vector& lo, const Vector& hi, const CompactHessian& B,
                    Vector& c) {
  const Eigen::Index n = x.size();
  const double theta = B.theta();
  const Matrix& W = B.W();
  const Matrix& M = B.M();

  Vector t(n), d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (g[i] < 0) {
      t[i] = hi[i] == kInf ? kInf : (x[i] - hi[i]) / g[i];
    } else if (g[i] > 0) {
      t[i] = lo[i] == -kInf ? kInf : (x[i] - lo[i]) / g[i];
    } else {
      t[i] = kInf;
    }
    d[i] = t[i] == 0.0 ? 0.0 : -g[i];
  }
  std::vector<Eigen::Index> order;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (t[i] > 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return t[a] < t[b]; });

  Vector xcp = x;
  Vector p = W.transpose() * d;
  c = Vector::Zero(W.cols());
  double fp = -d.squaredNorm();
  double fpp = -theta * fp - (W.cols() ? p.dot(M * p) : 0.0);
  fpp = std::max(fpp, kEps * std::abs(fp));
  double dt_min = fpp > 0 ? -fp / fpp : kInf;
  double t_old = 0.0;

  std::size_t k = 0;
  for (; k < order.size(); ++k) {
    const Eigen::Index b = order[k];
    const double dt = t[b] - t_old;
    if (dt_min < dt) break;
    xcp[b] = d[b] > 0 ? hi[b] : lo[b];
    const double zb = xcp[b] - x[b];
    c += dt * p;
    const double gb = g[b];
    if (W.cols()) {
      const Vector wb = W.row(b).transpose();
      const Vector Mwb = M * wb;
      fp += dt * fpp + gb * gb + theta * gb * zb - gb * Mwb.dot(c);
      fpp += -theta * gb * gb - 2.0 * gb * Mwb.dot(p) - gb * gb * wb.dot(Mwb);
      p += gb * wb;
    } else {
      fp += dt * fpp + gb * gb + theta * gb * zb;
      fpp += -theta * gb * gb;
    }
    d[b] = 0.0;
    fpp = std::max(fpp, kEps * std::abs(fp));
    dt_min = -fp / fpp;
    t_old = t[b];
    if (fp >= 0) {
      dt_min = 0.0;
      ++k;
      break;
    }
  }
  dt_min = std::max(dt_min, 0.0);
  if (!std::isfinite(dt_min)) dt_min = 0.0;
  t_old += dt_min;
  for (std::size_t j = k; j < order.size(); ++j) {
    const Eigen::Index i = order[j];
    xcp[i] = std::clamp(x[i] + t_old * d[i], lo[i], hi[i]);
  }
  c += dt_min * p;
  return xcp;
}

// Newton step on the variables left free at the Cauchy point, truncated to
// stay inside the box.
Vector subspace_minimum(const Vector& x, const Vector& g, const Vector& lo, const Vector& hi, const Vector& xcp,
                        const Vector& c, const CompactHessian& B) {
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (xcp[i] > lo[i] && xcp[i] < hi[i]) free.push_back(i);
  }
  if (free.empty()) return xcp;
  const double theta = B.theta();
  const Matrix& W = B.W();
  const Matrix& M = B.M();
  const auto nf = static_cast<Eigen::Index>(free.size());

  Vector rc(nf);
  Matrix wz(nf, W.cols());
  const Vector Mc = W.cols() ? Vector(M * c) : Vector();
  for (Eigen::Index j = 0; j < nf; ++j) {
    const Eigen::Index i = free[j];
    rc[j] = g[i] + theta * (xcp[i] - x[i]);
    if (W.cols()) {
      rc[j] -= W.row(i).dot(Mc);
      wz.row(j) = W.row(i);
    }
  }
  Vector du = -rc / theta;
  if (W.cols()) {
    Vector v = M * (wz.transpose() * rc);
    const Matrix N = Matrix::Identity(W.cols(), W.cols()) - (M * (wz.transpose() * wz)) / theta;
    v = N.fullPivLu().solve(v);
    du -= wz * v / (theta * theta);
  }

  double alpha = 1.0;
  for (Eigen::Index j = 0; j < nf; ++j) {
    const Eigen::Index i = free[j];
    if (du[j] > 0) alpha = std::min(alpha, (hi[i] - xcp[i]) / du[j]);
    if (du[j] < 0) alpha = std::min(alpha, (lo[i] - xcp[i]) / du[j]);
  }
  Vector xbar = xcp;
  for (Eigen::Index j = 0; j < nf; ++j) xbar[free[j]] += alpha * du[j];
  return xbar;
}

}  // namespace

double projected_gradient_norm(const Vector& x, const Vector& g, const Vector& lo, const Vector& hi) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out = std::max(out, std::abs(std::clamp(x[i] - g[i], lo[i], hi[i]) - x[i]));
  }
  return out;
}

LbfgsbResult lbfgsb_minimize(const Objective& objective, Vector x, const Vector& lo, const Vector& hi,
                             const LbfgsbOptions& options, const IterateCallback& on_iterate) {
  const Eigen::Index n = x.size();
  if (lo.size() != n || hi.size() != n) throw ContractViolation(kModule, "bounds do not match the parameter count");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) throw ContractViolation(kModule, "lower bound above upper bound");
    x[i] = std::clamp(x[i], lo[i], hi[i]);
  }

  LbfgsbResult r;
  Vector g(n);
  double f = objective(x, g);
  r.evaluations = 1;
  if (on_iterate) on_iterate(0, x, f);

  CompactHessian B(options.memory);
  B.reset();
  auto finish = [&](bool converged, std::string msg) {
    r.x = x;
    r.f = f;
    r.converged = converged;
    r.message = std::move(msg);
    return r;
  };

  if (n == 0) return finish(true, "no free parameters");
  if (projected_gradient_norm(x, g, lo, hi) < options.pg_tolerance) return finish(true, "projected gradient below tolerance");

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Vector c;
    const Vector xcp = cauchy_point(x, g, lo, hi, B, c);
    Vector d = subspace_minimum(x, g, lo, hi, xcp, c, B) - x;
    double slope = g.dot(d);
    if (!(slope < 0)) {
      d = xcp - x;
      slope = g.dot(d);
    }
    if (!(slope < 0)) {
      if (B.size() == 0) return finish(true, "no descent direction");
      B.reset();
      --iter;
      continue;
    }

    // x + step d stays feasible for step <= 1. The first step is scaled the
    // way the reference implementation does it, to unit length.
    double step = (B.size() == 0) ? std::min(1.0, 1.0 / d.norm()) : 1.0;
    Vector x_new(n), g_new(n);
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      x_new = x + step * d;
      for (Eigen::Index i = 0; i < n; ++i) x_new[i] = std::clamp(x_new[i], lo[i], hi[i]);
      f_new = objective(x_new, g_new);
      ++r.evaluations;
      if (f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      // Safeguarded quadratic interpolation on phi(step).
      const double denom = 2.0 * (f_new - f - step * slope);
      double trial = denom > 0 ? -slope * step * step / denom : 0.5 * step;
      step = std::clamp(trial, 0.1 * step, 0.5 * step);
    }
    if (!accepted) {
      if (B.size() > 0) {
        B.reset();
        --iter;
        continue;
      }
      r.iterations = iter - 1;
      return finish(false, "line search failed");
    }

    const double df = f - f_new;
    B.update(x_new - x, g_new - g);
    x = x_new;
    g = g_new;
    f = f_new;
    r.iterations = iter;
    if (on_iterate) on_iterate(iter, x, f);

    if (std::abs(df) < options.f_tolerance) return finish(true, "energy change below tolerance");
    if (projected_gradient_norm(x, g, lo, hi) < options.pg_tolerance) {
      return finish(true, "projected gradient below tolerance");
    }
  }
  return finish(false, "iteration limit reached");
}

}  // namespace qdft
