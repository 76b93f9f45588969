#include "poisskit/poisson.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "poisskit/liealg.hpp"

namespace poisskit {

PoissonCheck is_poisson(const MultiVec& bivector) {
  if (bivector.degree() != 2 && !bivector.is_zero()) throw DomainError("is_poisson needs a bivector");
  PoissonCheck r;
  r.square = schouten(bivector, bivector);
  r.ok = r.square.is_zero();
  return r;
}

PoissonStructure::PoissonStructure(MultiVec pi) : pi_(std::move(pi)) {
  auto check = is_poisson(pi_);
  if (!check.ok) throw VerificationError("[pi,pi] = " + to_string(check.square) + " is not zero");
  verified_ = true;
}

PoissonStructure PoissonStructure::unchecked(MultiVec pi) {
  PoissonStructure s;
  s.pi_ = std::move(pi);
  return s;
}

namespace {

void require_bivector(const MultiVec& pi) {
  if (pi.degree() != 2) throw DomainError("bivector expected");
}

std::vector<RatFunc> gradient(const RatFunc& f, std::size_t n) {
  if (f.nvars() != n) throw DomainError("function is not on the chart");
  std::vector<RatFunc> g;
  g.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.push_back(diff(f, i));
  return g;
}

}  // namespace

RatFunc bracket(const MultiVec& pi, const RatFunc& f, const RatFunc& g) {
  require_bivector(pi);
  const std::size_t n = pi.dim();
  auto df = gradient(f, n);
  auto dg = gradient(g, n);
  RatFunc s(n);
  for (const auto& [t, c] : pi.coeffs()) {
    const auto i = t[0], j = t[1];
    RatFunc w = df[i] * dg[j] - df[j] * dg[i];
    if (!w.is_zero()) s += c * w;
  }
  return s;
}

MultiVec hamiltonian_vf(const MultiVec& pi, const RatFunc& f) {
  require_bivector(pi);
  const std::size_t n = pi.dim();
  auto df = gradient(f, n);
  std::vector<RatFunc> x(n, RatFunc(n));
  for (const auto& [t, c] : pi.coeffs()) {
    const auto i = t[0], j = t[1];
    // X^j += f_i P_ij, X^i += f_j P_ji
    if (!df[i].is_zero()) x[j] += df[i] * c;
    if (!df[j].is_zero()) x[i] -= df[j] * c;
  }
  return MultiVec::from_components(pi.chart_ptr(), x);
}

QVector sharp_at(const MultiVec& pi, std::span<const Rational> point, std::span<const Rational> covector) {
  QMatrix p = evaluate_bivector(pi, point);
  if (covector.size() != p.rows()) throw DomainError("covector dimension differs from chart");
  return p.transpose().apply(QVector(covector.begin(), covector.end()));
}

RatFunc jacobiator(const MultiVec& b, const RatFunc& f, const RatFunc& g, const RatFunc& h) {
  return bracket(b, f, bracket(b, g, h)) + bracket(b, h, bracket(b, f, g)) + bracket(b, g, bracket(b, h, f));
}

MultiVec jacobiator_trivector(const MultiVec& b) {
  require_bivector(b);
  return schouten(b, b) * RatFunc(b.dim(), make_rational(1, 2));
}

std::size_t rank_at(const MultiVec& pi, std::span<const Rational> point) {
  return rank(evaluate_bivector(pi, point));
}

CharFiber char_fiber(const MultiVec& pi, std::span<const Rational> point) {
  QMatrix p = evaluate_bivector(pi, point);
  const std::size_t n = p.rows();
  CharFiber f;
  f.base_point.assign(point.begin(), point.end());
  // independent rows of P are independent vectors π♯(dx_i)
  QMatrix pt = p.transpose();
  auto pivots = rref(pt);
  for (auto i : pivots) f.r_basis.push_back(p.row(i));
  const std::size_t r = pivots.size();
  f.omega = QMatrix(r, r, Rational(0));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) f.omega(a, b) = p(pivots[b], pivots[a]);
  (void)n;
  return f;
}

QMatrix reconstruct(const CharFiber& fiber, std::size_t dim) {
  const std::size_t r = fiber.r_basis.size();
  if (r == 0) return QMatrix(dim, dim, Rational(0));
  QMatrix u = QMatrix::from_cols(fiber.r_basis, dim);
  auto inv = inverse(fiber.omega);
  if (!inv) throw VerificationError("characteristic form is degenerate");
  return u * *inv * u.transpose();
}

DarbouxBasis darboux_basis_at(const MultiVec& pi, std::span<const Rational> point) {
  QMatrix p = evaluate_bivector(pi, point);
  const std::size_t n = p.rows();
  auto form = [&](const QVector& a, const QVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i] != 0 && b[j] != 0) s += a[i] * p(i, j) * b[j];
    return s;
  };
  auto axpy = [](QVector& y, const Rational& a, const QVector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  };

  std::vector<QVector> pool;
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n, Rational(0));
    e[i] = 1;
    pool.push_back(std::move(e));
  }
  std::vector<QVector> alphas, betas;
  // symplectic Gram-Schmidt on covectors
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    for (std::size_t a = 0; a < pool.size() && !hit; ++a)
      for (std::size_t b = a + 1; b < pool.size() && !hit; ++b)
        if (form(pool[a], pool[b]) != 0) hit = {a, b};
    if (!hit) break;
    QVector alpha = pool[hit->first];
    QVector beta = pool[hit->second];
    Rational w = form(alpha, beta);
    if (w < 0) {
      // keep unit pairs as signed-free as possible: swap instead of negating
      std::swap(alpha, beta);
      w = -w;
    }
    for (auto& x : beta) x /= w;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(hit->second));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(hit->first));
    for (auto& g : pool) {
      Rational gb = form(g, beta);
      Rational ga = form(g, alpha);
      axpy(g, -gb, alpha);
      axpy(g, ga, beta);
    }
    alphas.push_back(std::move(alpha));
    betas.push_back(std::move(beta));
  }
  std::vector<QVector> rows = alphas;
  rows.insert(rows.end(), betas.begin(), betas.end());
  rows.insert(rows.end(), pool.begin(), pool.end());
  QMatrix nmat = QMatrix::from_rows(rows, n);
  DarbouxBasis d;
  d.half_rank = alphas.size();
  auto inv = inverse(nmat);
  if (!inv) throw VerificationError("Darboux covector frame is singular");
  d.basis = *inv;
  d.normal_form = nmat * p * nmat.transpose();
  return d;
}

bool casimir_check(const MultiVec& pi, const RatFunc& f) { return hamiltonian_vf(pi, f).is_zero(); }

MultiVec modular_vf(const MultiVec& pi, const DiffForm& volume) {
  require_bivector(pi);
  require_same_chart(pi.chart(), volume.chart());
  const std::size_t n = pi.dim();
  if (volume.degree() != n) throw DomainError("volume form must have top degree");
  IndexTuple top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = i;
  RatFunc g = volume.coeff(top);
  if (g.is_zero()) throw DomainError("volume form vanishes identically");
  RMatrix p = bivector_matrix(pi);
  std::vector<RatFunc> x(n, RatFunc(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (p(i, j).is_zero()) continue;
      x[i] += diff(p(i, j), j);
      RatFunc gj = diff(g, j);
      if (!gj.is_zero()) x[i] += p(i, j) * gj / g;
    }
  return MultiVec::from_components(pi.chart_ptr(), x);
}

namespace {

void monomials_rec(std::size_t n, unsigned d, std::size_t var, Monomial& cur, std::vector<Monomial>& out) {
  if (var + 1 == n) {
    cur[var] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur[var] = e;
    monomials_rec(n, d - e, var + 1, cur, out);
  }
}

// degree-d monomials in n variables, greatest grlex first
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  monomials_rec(n, d, 0, cur, out);
  return out;
}

std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > n) return out;
  IndexTuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  for (;;) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

struct GradedSpace {
  std::vector<std::pair<IndexTuple, Monomial>> basis;
  std::map<std::pair<IndexTuple, Monomial>, std::size_t> index;
};

GradedSpace graded_space(std::size_t n, std::size_t k, long d) {
  GradedSpace s;
  if (d < 0) return s;
  for (const auto& t : increasing_tuples(n, k))
    for (const auto& m : monomials_of_degree(n, static_cast<unsigned>(d))) {
      s.index[{t, m}] = s.basis.size();
      s.basis.emplace_back(t, m);
    }
  return s;
}

QVector coordinates(const MultiVec& x, const GradedSpace& s) {
  QVector v(s.basis.size(), Rational(0));
  for (const auto& [t, c] : x.coeffs()) {
    if (!c.is_polynomial()) throw DomainError("non-polynomial coefficient in graded space");
    const Rational dc = c.den().constant_term();
    for (const auto& [m, a] : c.num().terms()) {
      auto it = s.index.find({t, m});
      if (it == s.index.end()) throw DomainError("coefficient leaves the graded space");
      v[it->second] = a / dc;
    }
  }
  return v;
}

MultiVec element(const ChartPtr& chart, std::size_t k, const GradedSpace& s, const QVector& v) {
  MultiVec x(chart, k);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) x.add(s.basis[i].first, RatFunc(Poly::monomial(s.basis[i].second, v[i])));
  return x;
}

// Matrix of d_π from (k, d) to (k+1, d+p-1), columns = source basis.
QMatrix differential_matrix(const MultiVec& pi, std::size_t k, long d, long p) {
  const std::size_t n = pi.dim();
  GradedSpace src = graded_space(n, k, d);
  GradedSpace dst = graded_space(n, k + 1, d + p - 1);
  QMatrix m(dst.basis.size(), src.basis.size(), Rational(0));
  for (std::size_t c = 0; c < src.basis.size(); ++c) {
    MultiVec x = MultiVec::basis(pi.chart_ptr(), src.basis[c].first, RatFunc(Poly::monomial(src.basis[c].second)));
    MultiVec y = schouten(pi, x);
    if (y.is_zero()) continue;
    QVector col = coordinates(y, dst);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = col[r];
  }
  return m;
}

std::optional<long> coefficient_degree(const MultiVec& pi) {
  std::optional<long> p;
  for (const auto& [t, c] : pi.coeffs()) {
    if (!c.is_polynomial()) return std::nullopt;
    auto h = c.num().homogeneous_degree();
    if (!h) return std::nullopt;
    if (p && *p != *h) return std::nullopt;
    p = *h;
  }
  return p ? p : std::optional<long>(0);
}

}  // namespace

std::vector<MultiVec> homogeneous_multivector_basis(const ChartPtr& chart, std::size_t k, unsigned d) {
  GradedSpace s = graded_space(chart->dim(), k, d);
  std::vector<MultiVec> out;
  for (const auto& [t, m] : s.basis) out.push_back(MultiVec::basis(chart, t, RatFunc(Poly::monomial(m))));
  return out;
}

ModularCertificate modular_class_at_degree(const MultiVec& pi, const DiffForm& volume, unsigned max_degree) {
  ModularCertificate cert;
  cert.modular_field = modular_vf(pi, volume);
  cert.max_degree = max_degree;
  const std::size_t n = pi.dim();
  std::vector<Monomial> monos;
  for (unsigned d = 1; d <= max_degree; ++d) {
    auto md = monomials_of_degree(n, d);
    monos.insert(monos.end(), md.begin(), md.end());
  }
  auto target = cert.modular_field.components();
  // equation j, cleared of the denominator of X_η^j, compared monomialwise
  std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries;
  std::vector<Rational> rhs;
  auto row_of = [&](std::size_t j, const Monomial& m) {
    auto [it, inserted] = rows.try_emplace({j, m}, rows.size());
    if (inserted) {
      entries.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [m, a] : target[j].num().terms()) rhs[row_of(j, m)] += a;
  for (std::size_t u = 0; u < monos.size(); ++u) {
    auto comps = hamiltonian_vf(pi, RatFunc(Poly::monomial(monos[u]))).components();
    for (std::size_t j = 0; j < n; ++j) {
      RatFunc scaled = comps[j] * RatFunc(target[j].den());
      if (scaled.is_zero()) continue;
      if (!scaled.is_polynomial()) throw DomainError("modular certificate needs polynomial Hamiltonian fields");
      const Rational dc = scaled.den().constant_term();
      for (const auto& [m, a] : scaled.num().terms()) entries[row_of(j, m)].emplace_back(u, a / dc);
    }
  }
  QMatrix a(rows.size(), monos.size(), Rational(0));
  for (std::size_t r = 0; r < entries.size(); ++r)
    for (const auto& [u, v] : entries[r]) a(r, u) += v;
  auto sol = solve(a, rhs, Rational(0));
  if (!sol) return cert;
  Poly f(n);
  for (std::size_t u = 0; u < monos.size(); ++u)
    if ((*sol)[u] != 0) f += Poly::monomial(monos[u], (*sol)[u]);
  cert.potential = RatFunc(f);
  return cert;
}

MultiVec d_pi(const PoissonStructure& pi, const MultiVec& x) {
  if (!pi.verified()) throw DomainError("d_pi needs a verified Poisson structure");
  return schouten(pi.pi(), x);
}

CohomologyReport cohomology(const PoissonStructure& pi, std::size_t k, unsigned d) {
  if (!pi.verified()) throw DomainError("cohomology needs a verified Poisson structure");
  const std::size_t n = pi.dim();
  if (k > n) throw DomainError("multivector degree exceeds chart dimension");
  auto p = coefficient_degree(pi.pi());
  if (!p) throw DomainError("unsupported: cohomology needs homogeneous polynomial coefficients");
  CohomologyReport rep;
  rep.degree = k;
  rep.poly_degree = d;
  const long dd = d;
  GradedSpace here = graded_space(n, k, dd);
  const bool zero_pi = pi.pi().is_zero();

  std::vector<QVector> kernel_basis;
  if (zero_pi) {
    for (std::size_t i = 0; i < here.basis.size(); ++i) {
      QVector e(here.basis.size(), Rational(0));
      e[i] = 1;
      kernel_basis.push_back(std::move(e));
    }
  } else {
    QMatrix dk = differential_matrix(pi.pi(), k, dd, *p);
    kernel_basis = kernel(dk, Rational(0));
  }
  rep.dim_kernel = kernel_basis.size();

  QMatrix image_rows(0, here.basis.size(), Rational(0));
  if (!zero_pi && k >= 1 && dd - *p + 1 >= 0) {
    QMatrix dprev = differential_matrix(pi.pi(), k - 1, dd - *p + 1, *p);
    image_rows = row_space(dprev.transpose());
  }
  rep.dim_image = image_rows.rows();
  if (rep.dim_image > rep.dim_kernel) throw VerificationError("d_pi does not square to zero");
  rep.dim_h = rep.dim_kernel - rep.dim_image;

  std::vector<QVector> span;
  for (std::size_t r = 0; r < image_rows.rows(); ++r) span.push_back(image_rows.row(r));
  std::size_t current = span.size();
  for (const auto& v : kernel_basis) {
    if (rep.representatives.size() == rep.dim_h) break;
    span.push_back(v);
    const std::size_t rk = rank(QMatrix::from_rows(span, here.basis.size()));
    if (rk > current) {
      current = rk;
      rep.representatives.push_back(element(pi.chart_ptr(), k, here, v));
    } else {
      span.pop_back();
    }
  }
  return rep;
}

std::string to_string(const CohomologyReport& r) {
  std::ostringstream os;
  os << "H^" << r.degree << " d=" << r.poly_degree << " kernel=" << r.dim_kernel << " image=" << r.dim_image
     << " dim=" << r.dim_h;
  for (const auto& rep : r.representatives) os << "\n  rep " << to_string(rep);
  return os.str();
}

GaugeResult gauge_transform(const MultiVec& pi, const DiffForm& b) {
  require_bivector(pi);
  require_same_chart(pi.chart(), b.chart());
  if (b.degree() != 2 && !b.is_zero()) throw DomainError("gauge transform needs a 2-form");
  DiffForm db = exterior_derivative(b);
  if (!db.is_zero()) throw VerificationError("B is not closed: dB = " + to_string(db));
  const std::size_t n = pi.dim();
  RMatrix p = bivector_matrix(pi);
  RMatrix bm = b.is_zero() ? RMatrix(n, n, RatFunc(n)) : two_form_matrix(b);
  RMatrix m = RMatrix::identity(n, RatFunc(n)) + bm * p;
  RatFunc det = determinant(m);
  if (det.is_zero()) throw DomainError("I + B P is singular everywhere");
  auto inv = inverse(m);
  if (!inv) throw DomainError("I + B P is singular everywhere");
  MultiVec pb = bivector_from_matrix(pi.chart_ptr(), p * *inv);
  return GaugeResult{PoissonStructure(std::move(pb)), det};
}

namespace {

std::vector<QVector> top_up_samples(const std::vector<QVector>& samples, std::size_t n, std::size_t want) {
  std::vector<QVector> out = samples;
  std::mt19937 rng(20240611u);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  while (out.size() < want) {
    QVector p(n);
    for (auto& x : p) {
      x = make_rational(num(rng), den(rng));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PoissonMapReport is_poisson_map(const PolyMap& phi, const MultiVec& pi1, const MultiVec& pi2,
                                const std::vector<QVector>& samples) {
  require_bivector(pi1);
  require_bivector(pi2);
  require_same_chart(*phi.source(), pi1.chart());
  require_same_chart(*phi.target(), pi2.chart());
  PoissonMapReport rep;
  RMatrix p1 = bivector_matrix(pi1);
  RMatrix p2 = bivector_matrix(pi2);
  auto polynomial = [](const RMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_polynomial()) return false;
    return true;
  };
  if (phi.is_polynomial() && polynomial(p1) && polynomial(p2)) {
    rep.symbolic = true;
    RMatrix j = phi.jacobian();
    RMatrix lhs = j * p1 * j.transpose();
    const std::size_t m = phi.target()->dim();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        RatFunc rhs = phi.pull(p2(a, b));
        if (!(lhs(a, b) == rhs)) {
          rep.detail = "entry (" + std::to_string(a) + "," + std::to_string(b) + "): " +
                       to_string(lhs(a, b), *phi.source()) + " vs " +
                       to_string(rhs, *phi.source());
          return rep;
        }
      }
    rep.ok = true;
    return rep;
  }
  auto pts = top_up_samples(samples, phi.source()->dim(), 25);
  for (const auto& x : pts) {
    QMatrix lhs, rhs;
    try {
      lhs = pushforward_bivector_at(phi, x, evaluate_bivector(pi1, x));
      rhs = evaluate_bivector(pi2, phi(x));
    } catch (const PoleError&) {
      if (rep.samples_checked < samples.size()) throw;
      continue;  // generated point landed on a pole
    }
    ++rep.samples_checked;
    if (!(lhs == rhs)) {
      rep.detail = "mismatch at sample " + std::to_string(rep.samples_checked - 1);
      return rep;
    }
  }
  rep.ok = true;
  rep.detail = "sampled evidence";
  return rep;
}

MultiVec top_power(const MultiVec& pi) {
  require_bivector(pi);
  const std::size_t n = pi.dim();
  if (n % 2 != 0) throw DomainError("top power needs an even-dimensional chart");
  MultiVec r = MultiVec::scalar(pi.chart_ptr(), RatFunc(n, Rational(1)));
  for (std::size_t i = 0; i < n / 2; ++i) r = wedge(r, pi);
  return r;
}

bool LogDegeneracyReport::log_symplectic() const {
  if (top_identically_zero || zero_locus.empty()) return false;
  return std::all_of(zero_locus.begin(), zero_locus.end(), [](const ZeroPoint& z) { return z.transversal; });
}

LogDegeneracyReport log_degeneracy_check(const MultiVec& pi, const std::vector<QVector>& samples) {
  MultiVec top = top_power(pi);
  const std::size_t n = pi.dim();
  IndexTuple all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  LogDegeneracyReport rep;
  rep.top_coefficient = top.coeff(all);
  rep.top_identically_zero = rep.top_coefficient.is_zero();
  if (rep.top_identically_zero) return rep;
  auto grad = gradient(rep.top_coefficient, n);
  for (const auto& x : samples) {
    if (eval(rep.top_coefficient, x) != 0) continue;
    bool transversal = false;
    for (const auto& g : grad)
      if (eval(g, x) != 0) transversal = true;
    rep.zero_locus.push_back({x, transversal});
  }
  return rep;
}

LieAlgebra isotropy_bracket_at(const MultiVec& pi, std::span<const Rational> point) {
  require_bivector(pi);
  const std::size_t n = pi.dim();
  QMatrix p = evaluate_bivector(pi, point);
  auto kern = kernel(p, Rational(0));
  const std::size_t r = kern.size();
  RMatrix sym = bivector_matrix(pi);
  std::vector<QMatrix> dp;
  for (std::size_t k = 0; k < n; ++k) {
    RMatrix d(n, n, RatFunc(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = diff(sym(i, j), k);
    dp.push_back(evaluate(d, point));
  }
  std::vector<std::vector<std::vector<Rational>>> c(r, std::vector<std::vector<Rational>>(r, QVector(r, Rational(0))));
  if (r == 0) return LieAlgebra::from_tensor(c);
  QMatrix kmat = QMatrix::from_cols(kern, n);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      QVector w(n, Rational(0));
      for (std::size_t k = 0; k < n; ++k) {
        auto v = dp[k].apply(kern[b]);
        for (std::size_t i = 0; i < n; ++i) w[k] += kern[a][i] * v[i];
      }
      auto x = solve(kmat, w, Rational(0));
      if (!x) throw VerificationError("linearized bracket leaves the conormal space");
      c[a][b] = *x;
    }
  return LieAlgebra::from_tensor(std::move(c));
}

MultiVec constant_bivector(const ChartPtr& chart, const QMatrix& m) {
  const std::size_t n = chart->dim();
  RMatrix r(n, n, RatFunc(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = RatFunc(n, m(i, j));
  return bivector_from_matrix(chart, r);
}

}  // namespace poisskit
