#include "poisskit/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "poisskit/poisson.hpp"

namespace poisskit {
namespace {

// Polynomial as a flat list of (coefficient, sparse exponents).
class CompiledPoly {
 public:
  explicit CompiledPoly(const Poly& p) {
    for (const auto& [m, c] : p.terms()) {
      Term t{c.get_d(), {}};
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t.powers.emplace_back(i, m[i]);
      terms_.push_back(std::move(t));
    }
  }

  double operator()(const double* x) const {
    double s = 0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (auto [i, e] : t.powers)
        for (unsigned k = 0; k < e; ++k) v *= x[i];
      s += v;
    }
    return s;
  }

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Term> terms_;
};

class CompiledRat {
 public:
  explicit CompiledRat(const RatFunc& f) : num_(f.num()), den_(f.den()), polynomial_(f.is_polynomial()) {
    if (polynomial_) scale_ = 1.0 / f.den().constant_term().get_d();
  }

  double operator()(const double* x, double pole_threshold) const {
    if (polynomial_) return num_(x) * scale_;
    const double d = den_(x);
    if (!(std::abs(d) >= pole_threshold)) {
      std::ostringstream os;
      os << "pole proximity: denominator " << d << " below " << pole_threshold;
      throw PoleError(os.str());
    }
    return num_(x) / d;
  }

 private:
  CompiledPoly num_, den_;
  bool polynomial_;
  double scale_ = 1.0;
};

// Field on R^m, optionally time dependent (time is variable m). The Jacobian
// is taken in the first m variables only.
class Field {
 public:
  Field(const std::vector<RatFunc>& comps, bool time_dependent, bool with_jacobian, double pole_threshold)
      : m_(comps.size()), time_(time_dependent), pole_(pole_threshold) {
    for (const auto& c : comps) comps_.emplace_back(c);
    if (with_jacobian)
      for (const auto& c : comps)
        for (std::size_t k = 0; k < m_; ++k) jac_.emplace_back(diff(c, k));
    buf_.resize(m_ + 1);
  }

  std::size_t dim() const { return m_; }

  void eval(double t, const double* z, double* out) {
    const double* x = point(t, z);
    for (std::size_t j = 0; j < m_; ++j) out[j] = comps_[j](x, pole_);
  }

  // out = A(z, t), row-major m x m
  void jacobian(double t, const double* z, double* out) {
    const double* x = point(t, z);
    for (std::size_t k = 0; k < jac_.size(); ++k) out[k] = jac_[k](x, pole_);
  }

 private:
  const double* point(double t, const double* z) {
    if (!time_) return z;
    std::copy(z, z + m_, buf_.begin());
    buf_[m_] = t;
    return buf_.data();
  }

  std::size_t m_;
  bool time_;
  double pole_;
  std::vector<CompiledRat> comps_, jac_;
  DVector buf_;
};

std::size_t step_count(double span, const FlowConfig& cfg) {
  const double raw = std::ceil(std::abs(span) / cfg.dt - 1e-9);
  if (!(raw <= static_cast<double>(cfg.max_steps)))
    throw DomainError("step count overflow: " + std::to_string(raw) + " > " + std::to_string(cfg.max_steps));
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

void check_escape(const DVector& y, std::size_t m, double radius) {
  for (std::size_t i = 0; i < m; ++i)
    if (!std::isfinite(y[i]) || std::abs(y[i]) > radius) throw VerificationError("flow escaped the chart region");
}

// One RK4 step of y' = f(t, y) in place.
template <class F>
void rk4_step(F&& f, double t, double h, DVector& y, DVector (&k)[4], DVector& tmp) {
  const std::size_t n = y.size();
  f(t, y.data(), k[0].data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k[0][i];
  f(t + 0.5 * h, tmp.data(), k[1].data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k[1][i];
  f(t + 0.5 * h, tmp.data(), k[2].data());
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k[2][i];
  f(t + h, tmp.data(), k[3].data());
  for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k[0][i] + 2 * k[1][i] + 2 * k[2][i] + k[3][i]);
}

// Integrates from t0 to t1; `visit(t, y)` runs after every step.
template <class F, class V>
void rk4(F&& f, DVector& y, double t0, double t1, const FlowConfig& cfg, V&& visit) {
  const std::size_t steps = step_count(t1 - t0, cfg);
  const double h = (t1 - t0) / static_cast<double>(steps);
  DVector k[4] = {DVector(y.size()), DVector(y.size()), DVector(y.size()), DVector(y.size())};
  DVector tmp(y.size());
  for (std::size_t s = 0; s < steps; ++s) {
    rk4_step(f, t0 + static_cast<double>(s) * h, h, y, k, tmp);
    visit(t0 + static_cast<double>(s + 1) * h, y);
  }
}

// State (z, J) with J' = A J, J(t0) = I prepended by the caller.
struct Variational {
  Field& field;
  DMatrix a;
  explicit Variational(Field& f) : field(f), a(f.dim(), f.dim()) {}

  void operator()(double t, const double* y, double* dy) {
    const std::size_t m = field.dim();
    field.eval(t, y, dy);
    field.jacobian(t, y, a.data.data());
    const double* j = y + m;
    double* dj = dy + m;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        double s = 0;
        for (std::size_t k = 0; k < m; ++k) s += a(r, k) * j[k * m + c];
        dj[r * m + c] = s;
      }
  }
};

DVector with_identity(const DVector& z) {
  const std::size_t m = z.size();
  DVector y(m + m * m, 0.0);
  std::copy(z.begin(), z.end(), y.begin());
  for (std::size_t i = 0; i < m; ++i) y[m + i * m + i] = 1.0;
  return y;
}

Eigen::MatrixXd jacobian_part(const DVector& y, std::size_t m) {
  Eigen::MatrixXd j(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) j(r, c) = y[m + r * m + c];
  return j;
}

Eigen::MatrixXd to_eigen(const DMatrix& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

DMatrix from_eigen(const Eigen::MatrixXd& e) {
  DMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return m;
}

void require_point(const DVector& x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw DomainError(std::string(what) + " has " + std::to_string(x.size()) + " coordinates, chart has " +
                      std::to_string(n));
}

std::vector<CompiledRat> compile_all(const std::vector<RatFunc>& fs) {
  std::vector<CompiledRat> out;
  for (const auto& f : fs) out.emplace_back(f);
  return out;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(dt > 0)) throw DomainError("flow config: dt must be positive");
  if (!(t_max > 0)) throw DomainError("flow config: t_max must be positive");
  if (dt > t_max) throw DomainError("flow config: dt exceeds t_max");
  if (!(tolerance > 0)) throw DomainError("flow config: tolerance must be positive");
  if (record_stride == 0) throw DomainError("flow config: record_stride must be positive");
}

double max_abs_diff(const DMatrix& a, const DMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t k = 0; k < a.data.size(); ++k) d = std::max(d, std::abs(a.data[k] - b.data[k]));
  return d;
}

DMatrix to_dmatrix(const QMatrix& m) {
  DMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
  return d;
}

DVector to_dvector(const QVector& v) {
  DVector d;
  d.reserve(v.size());
  for (const auto& q : v) d.push_back(q.get_d());
  return d;
}

double evaluate_numeric(const RatFunc& f, const DVector& x, double pole_threshold) {
  if (x.size() != f.nvars()) throw DomainError("point dimension does not match the expression");
  return CompiledRat(f)(x.data(), pole_threshold);
}

DMatrix evaluate_bivector_numeric(const MultiVec& pi, const DVector& x, double pole_threshold) {
  require_point(x, pi.dim(), "point");
  RMatrix p = bivector_matrix(pi);
  DMatrix d(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (!p(i, j).is_zero()) d(i, j) = CompiledRat(p(i, j))(x.data(), pole_threshold);
  return d;
}

Trajectory integrate_hamiltonian(const MultiVec& pi, const RatFunc& h, const DVector& x0, const FlowConfig& cfg,
                                 const std::vector<RatFunc>& casimirs) {
  cfg.validate();
  require_point(x0, pi.dim(), "initial point");
  Field field(hamiltonian_vf(pi, h).components(), false, false, cfg.pole_threshold);
  CompiledRat hc(h);
  auto cc = compile_all(casimirs);
  const double h0 = hc(x0.data(), cfg.pole_threshold);
  DVector c0;
  for (const auto& c : cc) c0.push_back(c(x0.data(), cfg.pole_threshold));

  Trajectory tr;
  tr.casimir_drifts.assign(cc.size(), 0.0);
  tr.times.push_back(0);
  tr.points.push_back(x0);
  DVector y = x0;
  std::size_t step = 0;
  auto f = [&](double t, const double* z, double* dz) { field.eval(t, z, dz); };
  rk4(f, y, 0.0, cfg.t_max, cfg, [&](double t, const DVector& z) {
    check_escape(z, z.size(), cfg.escape_radius);
    tr.h_drift = std::max(tr.h_drift, std::abs(hc(z.data(), cfg.pole_threshold) - h0));
    for (std::size_t k = 0; k < cc.size(); ++k)
      tr.casimir_drifts[k] = std::max(tr.casimir_drifts[k], std::abs(cc[k](z.data(), cfg.pole_threshold) - c0[k]));
    if (++step % cfg.record_stride == 0) {
      tr.times.push_back(t);
      tr.points.push_back(z);
    }
  });
  if (tr.times.back() != cfg.t_max) {
    tr.times.push_back(cfg.t_max);
    tr.points.push_back(y);
  }
  return tr;
}

std::vector<Segment> reversed(const std::vector<Segment>& schedule) {
  std::vector<Segment> r;
  for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) r.push_back({it->generator, -it->t});
  return r;
}

LeafTrace leaf_trace(const MultiVec& pi, const std::vector<RatFunc>& generators, const DVector& x0,
                     const std::vector<Segment>& schedule, const FlowConfig& cfg, const std::vector<RatFunc>& casimirs) {
  cfg.validate();
  require_point(x0, pi.dim(), "initial point");
  std::vector<std::optional<Field>> fields;
  for (const auto& g : generators) {
    MultiVec x = hamiltonian_vf(pi, g);
    if (x.is_zero())
      fields.emplace_back();
    else
      fields.emplace_back(std::in_place, x.components(), false, false, cfg.pole_threshold);
  }
  auto cc = compile_all(casimirs);
  DVector c0;
  for (const auto& c : cc) c0.push_back(c(x0.data(), cfg.pole_threshold));

  LeafTrace tr;
  tr.casimirs = casimirs;
  tr.casimir_drifts.assign(cc.size(), 0.0);
  auto record = [&](double t, const DVector& z) {
    DVector d;
    for (std::size_t k = 0; k < cc.size(); ++k) {
      d.push_back(std::abs(cc[k](z.data(), cfg.pole_threshold) - c0[k]));
      tr.casimir_drifts[k] = std::max(tr.casimir_drifts[k], d.back());
    }
    tr.times.push_back(t);
    tr.points.push_back(z);
    tr.drifts.push_back(std::move(d));
  };
  record(0.0, x0);

  DVector y = x0;
  double elapsed = 0;
  for (const auto& seg : schedule) {
    if (seg.generator >= generators.size())
      throw DomainError("schedule references generator " + std::to_string(seg.generator) + " of " +
                        std::to_string(generators.size()));
    if (!fields[seg.generator] || seg.t == 0) continue;
    tr.hamiltonians.push_back(generators[seg.generator]);
    Field& field = *fields[seg.generator];
    auto f = [&](double t, const double* z, double* dz) { field.eval(t, z, dz); };
    std::size_t step = 0;
    const double start = elapsed;
    rk4(f, y, 0.0, seg.t, cfg, [&](double t, const DVector& z) {
      check_escape(z, z.size(), cfg.escape_radius);
      if (++step % cfg.record_stride == 0) record(start + std::abs(t), z);
    });
    elapsed += std::abs(seg.t);
    if (tr.times.back() != elapsed) record(elapsed, y);
  }
  return tr;
}

void write_trace(std::ostream& os, const LeafTrace& trace) {
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    put(trace.times[i]);
    for (double x : trace.points[i]) os << ' ', put(x);
    for (double d : trace.drifts[i]) os << ' ', put(d);
    os << '\n';
  }
}

MoserReport moser_verify(const MultiVec& pi0, const DiffForm& alpha, const std::vector<double>& t_grid,
                         const std::vector<DVector>& samples, const FlowConfig& cfg) {
  cfg.validate();
  if (alpha.degree() != 1) throw DomainError("moser_verify needs a 1-form");
  require_same_chart(pi0.chart(), alpha.chart());
  const std::size_t n = pi0.dim();
  for (double t : t_grid)
    if (!(t > 0)) throw DomainError("moser grid times must be positive");
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());

  // Everything symbolic on (x, t): P_t = P (I + B_t P)^{-1}, B_t = -t dα.
  const std::size_t nv = n + 1;
  RatFunc t = RatFunc::variable(nv, n);
  RMatrix p = bivector_matrix(pi0);
  RMatrix b = two_form_matrix(exterior_derivative(alpha));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      p(i, j) = p(i, j).embed(nv);
      b(i, j) = -(t * b(i, j).embed(nv));
    }
  RMatrix shift = RMatrix::identity(n, t) + b * p;
  RatFunc det = determinant(shift);
  auto inv = inverse(shift);
  if (!inv) throw VerificationError("I + B_t P0 is singular identically");
  RMatrix pt = p * *inv;
  std::vector<RatFunc> x_comps(n, RatFunc(nv));
  std::vector<RatFunc> a = alpha.components();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x_comps[j] += a[i].embed(nv) * pt(i, j);

  CompiledRat det_c(det);
  std::vector<CompiledRat> pt_c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pt_c.emplace_back(pt(i, j));
  for (const auto& s : samples) {
    require_point(s, n, "sample");
    for (double tg : grid) {
      DVector xt = s;
      xt.push_back(tg);
      const double d = det_c(xt.data(), 0.0);
      if (!(std::abs(d) >= cfg.pole_threshold)) {
        std::ostringstream os;
        os << "I + B_t P0 singular at t = " << tg << ", sample (";
        for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << s[i];
        os << ")";
        throw VerificationError(os.str());
      }
    }
  }

  Field field(x_comps, true, true, cfg.pole_threshold);
  MoserReport rep;
  rep.deviations.assign(grid.size(), 0.0);
  for (const auto& s : samples) {
    Eigen::MatrixXd p0 = to_eigen(evaluate_bivector_numeric(pi0, s, cfg.pole_threshold));
    DVector y = with_identity(s);
    Variational var(field);
    double now = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (grid[g] > now) rk4(var, y, now, grid[g], cfg, [&](double, const DVector& z) { check_escape(z, n, cfg.escape_radius); });
      now = grid[g];
      Eigen::MatrixXd j = jacobian_part(y, n);
      Eigen::MatrixXd pushed = j * p0 * j.transpose();
      DVector xt(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
      xt.push_back(now);
      double dev = 0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const double target = pt_c[r * n + c](xt.data(), cfg.pole_threshold);
          dev = std::max(dev, std::abs(pushed(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) - target));
        }
      rep.deviations[g] = std::max(rep.deviations[g], dev);
      rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    ++rep.samples_checked;
  }
  return rep;
}

namespace {

RealizationSample realize_one(const std::vector<RatFunc>& spray, std::size_t n, const DVector& xi, std::size_t nodes,
                              const FlowConfig& cfg) {
  const std::size_t m = 2 * n;
  Field field(spray, false, true, cfg.pole_threshold);
  Variational var(field);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i) {
    w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n + i)) = 1;
    w(static_cast<Eigen::Index>(n + i), static_cast<Eigen::Index>(i)) = -1;
  }
  DVector y = with_identity(xi);
  const double h = 1.0 / static_cast<double>(nodes - 1);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(w.rows(), w.cols());
  for (std::size_t k = 0; k < nodes; ++k) {
    if (k > 0)
      rk4(var, y, static_cast<double>(k - 1) * h, static_cast<double>(k) * h, cfg,
          [&](double, const DVector& z) { check_escape(z, m, cfg.escape_radius); });
    Eigen::MatrixXd j = jacobian_part(y, m);
    const double weight = (k == 0 || k + 1 == nodes) ? 0.5 * h : h;
    acc += weight * (j.transpose() * w * j);
  }
  RealizationSample s;
  s.xi = xi;
  s.omega = from_eigen(acc);
  s.antisymmetry = (acc + acc.transpose()).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(acc);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1), smax = sv(0);
  s.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  s.nondegenerate = smin > cfg.tolerance * smax;
  return s;
}

}  // namespace

std::vector<RealizationSample> spray_realization(const MultiVec& pi, const std::vector<DVector>& samples,
                                                 std::size_t nodes, const FlowConfig& cfg) {
  cfg.validate();
  if (nodes < 2) throw DomainError("spray_realization needs at least 2 quadrature nodes");
  const std::size_t n = pi.dim(), m = 2 * n;
  for (const auto& s : samples) require_point(s, m, "cotangent sample");

  // x_j' = Σ_i ξ_i P_ij(x), ξ' = 0 on the chart (x, ξ)
  RMatrix p = bivector_matrix(pi);
  std::vector<RatFunc> spray(m, RatFunc(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!p(i, j).is_zero()) spray[j] += RatFunc::variable(m, n + i) * p(i, j).embed(m);

  std::vector<RealizationSample> out;
  if (cfg.parallel && samples.size() > 1) {
    std::vector<std::future<RealizationSample>> jobs;
    for (const auto& s : samples)
      jobs.push_back(std::async(std::launch::async, realize_one, std::cref(spray), n, std::cref(s), nodes, std::cref(cfg)));
    for (auto& j : jobs) out.push_back(j.get());
  } else {
    for (const auto& s : samples) out.push_back(realize_one(spray, n, s, nodes, cfg));
  }
  return out;
}

double realization_check(const std::vector<RealizationSample>& samples, const MultiVec& pi) {
  const std::size_t n = pi.dim();
  double worst = 0;
  for (const auto& s : samples) {
    if (s.omega.rows != 2 * n || s.xi.size() != 2 * n) throw DomainError("realization sample does not match the chart");
    if (!s.nondegenerate) throw VerificationError("degenerate realization form at a sample");
    Eigen::MatrixXd inv = to_eigen(s.omega).inverse();
    DVector x(s.xi.begin(), s.xi.begin() + static_cast<std::ptrdiff_t>(n));
    DMatrix base = evaluate_bivector_numeric(pi, x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - base(i, j)));
  }
  return worst;
}

}  // namespace poisskit
