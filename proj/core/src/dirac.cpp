#include "poisskit/dirac.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "poisskit/error.hpp"

namespace poisskit {

namespace {

QVector left(const QMatrix& rows, std::size_t i, std::size_t n) {
  QVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = rows(i, j);
  return v;
}

QVector right(const QMatrix& rows, std::size_t i, std::size_t n) {
  QVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = rows(i, n + j);
  return v;
}

QVector concat(const QVector& a, const QVector& b) {
  QVector v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

QVector unit(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVector combine(const std::vector<QVector>& vs, const QVector& c, std::size_t n) {
  QVector out(n, Rational(0));
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (c[k] != 0)
      for (std::size_t j = 0; j < n; ++j) out[j] += c[k] * vs[k][j];
  return out;
}

QMatrix rows_matrix(const std::vector<QVector>& rows, std::size_t cols) {
  if (rows.empty()) return QMatrix(0, cols, Rational(0));
  return QMatrix::from_rows(rows, cols);
}

std::size_t span_dim(const std::vector<QVector>& vs, std::size_t n) { return rank(rows_matrix(vs, n)); }

RMatrix gradients(const std::vector<RatFunc>& psi, std::size_t n) {
  RMatrix g(psi.size(), n, RatFunc(n));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i].nvars() != n) throw DomainError("constraint is not on the ambient chart");
    for (std::size_t j = 0; j < n; ++j) g(i, j) = diff(psi[i], j);
  }
  return g;
}

}  // namespace

// ---- pointwise subspaces -------------------------------------------------

Rational pairing(const QVector& x, const QVector& alpha, const QVector& y, const QVector& beta) {
  return dot(beta, x) + dot(alpha, y);
}

bool is_lagrangian(std::size_t n, const QMatrix& rows) {
  if (rows.cols() != 2 * n) return false;
  if (rank(rows) != n) return false;
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = i; j < rows.rows(); ++j)
      if (pairing(left(rows, i, n), right(rows, i, n), left(rows, j, n), right(rows, j, n)) != 0) return false;
  return true;
}

LinearLagrangian::LinearLagrangian(std::size_t n, const QMatrix& rows) : n_(n) {
  if (rows.cols() != 2 * n) throw DomainError("rows must have length 2n");
  if (!is_lagrangian(n, rows)) throw VerificationError("subspace is not lagrangian: " + to_string(rows));
  basis_ = row_space(rows);
}

LinearLagrangian LinearLagrangian::tangent(std::size_t n) {
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(concat(unit(n, i), QVector(n, Rational(0))));
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

LinearLagrangian LinearLagrangian::cotangent(std::size_t n) {
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(concat(QVector(n, Rational(0)), unit(n, i)));
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

bool LinearLagrangian::contains(const QVector& x, const QVector& alpha) const {
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
  rows.push_back(concat(x, alpha));
  return rank(rows_matrix(rows, 2 * n_)) == n_;
}

std::string to_string(const LinearLagrangian& l) { return to_string(l.basis()); }

void PrintTo(const LinearLagrangian& l, std::ostream* os) { *os << to_string(l); }

LinearLagrangian graph_of_bivector(const QMatrix& p) {
  const std::size_t n = p.rows();
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(concat(p.row(i), unit(n, i)));
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

LinearLagrangian graph_of_2form(const QMatrix& b) {
  const std::size_t n = b.rows();
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(concat(unit(n, i), b.row(i)));
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

LinearLagrangian from_bivector_at(const MultiVec& pi, std::span<const Rational> point) {
  return graph_of_bivector(evaluate_bivector(pi, point));
}

LinearLagrangian from_2form_at(const DiffForm& omega, std::span<const Rational> point) {
  const std::size_t n = omega.dim();
  QMatrix w = omega.is_zero() ? QMatrix(n, n, Rational(0)) : evaluate(two_form_matrix(omega), point);
  return graph_of_2form(w);
}

LinearLagrangian backward_image(const LinearLagrangian& l, const QMatrix& a) {
  const std::size_t m = l.dim();
  const std::size_t n = a.cols();
  if (a.rows() != m) throw DomainError("linear map does not land in the subspace's vector space");
  const QMatrix& b = l.basis();
  // unknowns (X, c): A X - Σ c_k u_k = 0
  QMatrix sys(m, n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) sys(i, j) = a(i, j);
    for (std::size_t k = 0; k < m; ++k) sys(i, n + k) = -b(k, i);
  }
  std::vector<QVector> vs;
  for (std::size_t k = 0; k < m; ++k) vs.push_back(right(b, k, m));
  std::vector<QVector> rows;
  for (const auto& sol : kernel(sys, Rational(0))) {
    QVector x(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
    QVector c(sol.begin() + static_cast<std::ptrdiff_t>(n), sol.end());
    QVector beta = combine(vs, c, m);
    QVector pulled(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) pulled[j] += a(i, j) * beta[i];
    rows.push_back(concat(x, pulled));
  }
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

LinearLagrangian forward_image(const LinearLagrangian& l, const QMatrix& a) {
  const std::size_t n = l.dim();
  const std::size_t m = a.rows();
  if (a.cols() != n) throw DomainError("linear map does not start at the subspace's vector space");
  const QMatrix& b = l.basis();
  // unknowns (c, β): Σ c_k v_k - A^T β = 0
  QMatrix sys(n, n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) sys(j, k) = b(k, n + j);
    for (std::size_t i = 0; i < m; ++i) sys(j, n + i) = -a(i, j);
  }
  std::vector<QVector> us;
  for (std::size_t k = 0; k < n; ++k) us.push_back(left(b, k, n));
  std::vector<QVector> rows;
  for (const auto& sol : kernel(sys, Rational(0))) {
    QVector c(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
    QVector beta(sol.begin() + static_cast<std::ptrdiff_t>(n), sol.end());
    rows.push_back(concat(a.apply(combine(us, c, n)), beta));
  }
  return LinearLagrangian(m, rows_matrix(rows, 2 * m));
}

bool forward_matches(const PolyMap& phi, const MultiVec& pi1, const MultiVec& pi2, const std::vector<QVector>& samples) {
  if (samples.empty()) throw DomainError("forward_matches needs sample points");
  for (const auto& p : samples) {
    LinearLagrangian pushed = forward_image(from_bivector_at(pi1, p), phi.jacobian_at(p));
    if (!(pushed == from_bivector_at(pi2, phi(p)))) return false;
  }
  return true;
}

LinearLagrangian gauge_at(const LinearLagrangian& l, const QMatrix& b) {
  const std::size_t n = l.dim();
  if (b.rows() != n || b.cols() != n) throw DomainError("gauge matrix has the wrong size");
  if (!(b.transpose() == -b)) throw DomainError("gauge matrix is not antisymmetric");
  std::vector<QVector> rows;
  for (std::size_t k = 0; k < l.basis().rows(); ++k) {
    QVector x = left(l.basis(), k, n);
    QVector alpha = right(l.basis(), k, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) alpha[j] += x[i] * b(i, j);
    rows.push_back(concat(x, alpha));
  }
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

KernelRange kernel_and_range(const LinearLagrangian& l) {
  const std::size_t n = l.dim();
  const QMatrix& b = l.basis();
  std::vector<QVector> us, vs;
  for (std::size_t k = 0; k < b.rows(); ++k) {
    us.push_back(left(b, k, n));
    vs.push_back(right(b, k, n));
  }
  QMatrix ucols = rows_matrix(us, n).transpose();  // n x n, column k is u_k
  QMatrix vcols = rows_matrix(vs, n).transpose();
  KernelRange kr;
  for (const auto& c : kernel(vcols, Rational(0))) {
    QVector x = combine(us, c, n);
    kr.kernel.push_back(x);
  }
  kr.kernel = [&] {
    QMatrix r = row_space(rows_matrix(kr.kernel, n));
    std::vector<QVector> out;
    for (std::size_t i = 0; i < r.rows(); ++i) out.push_back(r.row(i));
    return out;
  }();
  for (const auto& c : kernel(ucols, Rational(0))) kr.annihilator.push_back(combine(vs, c, n));
  QMatrix rs = row_space(rows_matrix(us, n));
  std::vector<QVector> alphas;
  for (std::size_t a = 0; a < rs.rows(); ++a) {
    kr.range.push_back(rs.row(a));
    auto c = solve(ucols, rs.row(a), Rational(0));
    if (!c) throw VerificationError("range vector outside the projection");
    alphas.push_back(combine(vs, *c, n));
  }
  const std::size_t k = kr.range.size();
  kr.omega = QMatrix(k, k, Rational(0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) kr.omega(a, c) = dot(alphas[a], kr.range[c]);
  for (const auto& ann : kr.annihilator)
    for (const auto& r : kr.range)
      if (dot(ann, r) != 0) throw VerificationError("L ∩ V* does not annihilate the range");
  return kr;
}

LinearLagrangian reconstruct(const KernelRange& kr, std::size_t n) {
  const std::size_t k = kr.range.size();
  std::vector<QVector> rows;
  QMatrix rmat = rows_matrix(kr.range, n);
  for (std::size_t a = 0; a < k; ++a) {
    auto alpha = solve(rmat, kr.omega.row(a), Rational(0));
    if (!alpha) throw VerificationError("range vectors are dependent");
    rows.push_back(concat(kr.range[a], *alpha));
  }
  for (const auto& ann : kr.annihilator) rows.push_back(concat(QVector(n, Rational(0)), ann));
  return LinearLagrangian(n, rows_matrix(rows, 2 * n));
}

// ---- sections --------------------------------------------------------------

RatFunc pairing(const Section& a, const Section& b) { return pair(b.alpha, a.x) + pair(a.alpha, b.x); }

Section courant_dorfman(const Section& a, const Section& b) {
  require_same_chart(a.x.chart(), b.x.chart());
  MultiVec x = schouten(a.x, b.x);
  DiffForm alpha = lie_derivative(a.x, b.alpha) - contract(exterior_derivative(a.alpha), b.x);
  return {x, alpha};
}

Section operator+(const Section& a, const Section& b) { return {a.x + b.x, a.alpha + b.alpha}; }
Section operator-(const Section& a, const Section& b) { return {a.x - b.x, a.alpha - b.alpha}; }
Section operator*(const RatFunc& f, const Section& s) { return {s.x * f, s.alpha * f}; }
bool operator==(const Section& a, const Section& b) { return a.x == b.x && a.alpha == b.alpha; }

void PrintTo(const Section& s, std::ostream* os) { *os << '(' << to_string(s.x) << ", " << to_string(s.alpha) << ')'; }

DiracSectionFamily graph_sections(const MultiVec& pi) {
  DiracSectionFamily fam;
  fam.chart = pi.chart_ptr();
  fam.regular_locus = "everywhere (graph)";
  const std::size_t n = pi.dim();
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc xi = RatFunc::variable(n, i);
    fam.sections.push_back({hamiltonian_vf(pi, xi), differential(fam.chart, xi)});
  }
  return fam;
}

DiracSectionFamily graph_sections(const DiffForm& omega) {
  DiracSectionFamily fam;
  fam.chart = omega.chart_ptr();
  fam.regular_locus = "everywhere (graph)";
  const std::size_t n = omega.dim();
  for (std::size_t i = 0; i < n; ++i) {
    MultiVec e = MultiVec::basis(fam.chart, {i});
    DiffForm a = omega.is_zero() ? DiffForm(fam.chart, 1) : contract(omega, e);
    fam.sections.push_back({e, a});
  }
  return fam;
}

std::map<Triple, RatFunc> courant_tensor(const DiracSectionFamily& family) {
  const auto& s = family.sections;
  const std::size_t n = family.chart->dim();
  if (s.size() != n) throw DomainError("a section family needs exactly dim sections");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!pairing(s[i], s[j]).is_zero())
        throw VerificationError("sections " + std::to_string(i) + " and " + std::to_string(j) + " are not isotropic");
  for (const auto& p : family.samples) {
    std::vector<QVector> rows;
    for (const auto& e : s) {
      QVector v;
      for (std::size_t j = 0; j < n; ++j) v.push_back(eval(e.x.coeff({j}), p));
      for (std::size_t j = 0; j < n; ++j) v.push_back(eval(e.alpha.coeff({j}), p));
      rows.push_back(v);
    }
    if (rank(rows_matrix(rows, 2 * n)) != n) throw VerificationError("sections drop rank at a sample point");
  }
  std::map<Triple, RatFunc> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out[{i, j, k}] = pairing(courant_dorfman(s[i], s[j]), s[k]);
  return out;
}

bool is_integrable(const DiracSectionFamily& family) {
  auto t = courant_tensor(family);
  return std::all_of(t.begin(), t.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

// ---- constrained brackets ----------------------------------------------------

void ConstraintSystem::validate() const {
  const std::size_t n = ambient.dim();
  if (psi.size() != level.size()) throw DomainError("one level value per constraint is required");
  for (const auto& f : psi)
    if (f.nvars() != n) throw DomainError("constraint is not on the ambient chart");
  for (const auto& p : samples) {
    if (p.size() != n) throw DomainError("sample has the wrong dimension");
    for (std::size_t i = 0; i < psi.size(); ++i)
      if (eval(psi[i], p) != level[i]) throw DomainError("sample is not on the level set");
  }
  if (parametrization) {
    if (parametrization->target()->dim() != n) throw DomainError("parametrization does not land in the ambient chart");
    for (std::size_t i = 0; i < psi.size(); ++i) {
      RatFunc r = parametrization->pull(psi[i]);
      if (!(r == RatFunc(parametrization->source()->dim(), level[i])))
        throw DomainError("parametrization leaves the level set");
    }
  }
}

DiracBracket::DiracBracket(ConstraintSystem cs) : cs_(std::move(cs)) {
  cs_.validate();
  if (!cs_.has_route()) throw DomainError("restriction needs a parametrization or on-level samples");
  const std::size_t n = cs_.ambient.dim();
  const std::size_t k = cs_.psi.size();
  RMatrix p = bivector_matrix(cs_.ambient.pi());
  RMatrix g = gradients(cs_.psi, n);
  RMatrix gt = g.transpose();
  if (k == 0) {
    data_.c_upper = RMatrix(0, 0, RatFunc(n));
    data_.c_lower = data_.c_upper;
    p_dirac_ = p;
    return;
  }
  data_.c_upper = g * p * gt;
  auto inv = inverse(data_.c_upper);
  if (!inv) throw DomainError("not cosymplectic: c_upper = " + to_string(data_.c_upper, cs_.ambient.chart()));
  RatFunc det = determinant(data_.c_upper);
  if (cs_.parametrization && cs_.parametrization->pull(det).is_zero())
    throw DomainError("not cosymplectic along N: det c vanishes on the parametrization");
  for (const auto& s : cs_.samples)
    if (eval(det, s) == 0) throw DomainError("not cosymplectic at a sample point");
  data_.c_lower = *inv;
  p_dirac_ = p - p * gt * data_.c_lower * g * p;
}

RatFunc DiracBracket::ambient(const RatFunc& f, const RatFunc& g) const {
  const std::size_t n = cs_.ambient.dim();
  if (f.nvars() != n || g.nvars() != n) throw DomainError("function is not on the ambient chart");
  RatFunc s(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc fi = diff(f, i);
    if (fi.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (p_dirac_(i, j).is_zero()) continue;
      RatFunc gj = diff(g, j);
      if (!gj.is_zero()) s += fi * p_dirac_(i, j) * gj;
    }
  }
  return s;
}

RatFunc DiracBracket::restricted(const RatFunc& f, const RatFunc& g) const {
  if (!cs_.parametrization) throw DomainError("restriction needs a parametrization");
  return cs_.parametrization->pull(ambient(f, g));
}

QVector DiracBracket::at_samples(const RatFunc& f, const RatFunc& g) const {
  RatFunc b = ambient(f, g);
  QVector out;
  for (const auto& s : cs_.samples) out.push_back(eval(b, s));
  return out;
}

DiracBracket dirac_bracket(const ConstraintSystem& cs) { return DiracBracket(cs); }

SubmanifoldClass classify_submanifold(const ConstraintSystem& cs) {
  cs.validate();
  if (!cs.has_route()) throw DomainError("classification needs a parametrization or on-level samples");
  const std::size_t n = cs.ambient.dim();
  const MultiVec& pi = cs.ambient.pi();
  SubmanifoldClass out;
  out.sampled = !cs.parametrization;
  out.samples_checked = cs.samples.size();
  auto vanishes_on_n = [&](const RatFunc& f) {
    if (cs.parametrization && !cs.parametrization->pull(f).is_zero()) return false;
    if (!cs.parametrization)
      for (const auto& s : cs.samples)
        if (eval(f, s) != 0) return false;
    return true;
  };
  out.poisson = true;
  for (const auto& psi : cs.psi) {
    MultiVec x = hamiltonian_vf(pi, psi);
    for (std::size_t j = 0; j < n && out.poisson; ++j)
      if (!vanishes_on_n(x.coeff({j}))) out.poisson = false;
  }
  const std::size_t k = cs.psi.size();
  RMatrix c(k, k, RatFunc(n));
  out.coisotropic = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      c(i, j) = bracket(pi, cs.psi[i], cs.psi[j]);
      if (i < j && !vanishes_on_n(c(i, j))) out.coisotropic = false;
    }
  if (k == 0) {
    out.cosymplectic = true;
  } else {
    RatFunc det = determinant(c);
    out.cosymplectic = !det.is_zero();
    if (out.cosymplectic && cs.parametrization) out.cosymplectic = !cs.parametrization->pull(det).is_zero();
    for (const auto& s : cs.samples)
      if (out.cosymplectic && eval(det, s) == 0) out.cosymplectic = false;
  }
  return out;
}

namespace {

CoregularityReport finish(std::vector<std::size_t> dims) {
  CoregularityReport r;
  r.dims = std::move(dims);
  r.constant = std::adjacent_find(r.dims.begin(), r.dims.end(), std::not_equal_to<>()) == r.dims.end();
  return r;
}

void add_rows(std::vector<QVector>& out, const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
}

}  // namespace

CoregularityReport coregularity_check(const ConstraintSystem& cs) {
  cs.validate();
  if (cs.samples.size() < 2) throw DomainError("co-regularity needs at least two samples");
  const std::size_t n = cs.ambient.dim();
  RMatrix g = gradients(cs.psi, n);
  std::vector<std::size_t> dims;
  for (const auto& s : cs.samples) {
    std::vector<QVector> vs = kernel(evaluate(g, s), Rational(0));
    if (cs.psi.empty())
      for (std::size_t i = 0; i < n; ++i) vs.push_back(unit(n, i));
    add_rows(vs, evaluate_bivector(cs.ambient.pi(), s));
    dims.push_back(span_dim(vs, n));
  }
  return finish(std::move(dims));
}

CoregularityReport coregularity_check(const MultiVec& pi, const PolyMap& phi, const std::vector<QVector>& samples) {
  if (samples.size() < 2) throw DomainError("co-regularity needs at least two samples");
  const std::size_t n = pi.dim();
  if (phi.target()->dim() != n) throw DomainError("map does not land in the chart of the bivector");
  std::vector<std::size_t> dims;
  for (const auto& s : samples) {
    std::vector<QVector> vs;
    add_rows(vs, phi.jacobian_at(s).transpose());
    add_rows(vs, evaluate_bivector(pi, phi(s)));
    dims.push_back(span_dim(vs, n));
  }
  return finish(std::move(dims));
}

DualPairReport dual_pair_check(const DiffForm& omega, const PolyMap& phi1, const PolyMap& phi2, const MultiVec& pi1,
                               const MultiVec& pi2, const std::vector<QVector>& samples) {
  if (samples.empty()) throw DomainError("dual pair check needs sample points");
  const std::size_t s = omega.dim();
  if (phi1.source()->dim() != s || phi2.source()->dim() != s) throw DomainError("maps must start at the chart of omega");
  if (phi1.target()->dim() != pi1.dim() || phi2.target()->dim() != pi2.dim())
    throw DomainError("maps must land in the charts of the bivectors");
  DualPairReport rep;
  rep.dimension_ok = s == pi1.dim() + pi2.dim();
  if (!rep.dimension_ok) {
    rep.detail = "dim S != dim M1 + dim M2";
    return rep;
  }
  RMatrix w = omega.is_zero() ? RMatrix(s, s, RatFunc(s)) : two_form_matrix(omega);
  for (const auto& p : samples) {
    QMatrix wp = evaluate(w, p);
    if (s > 0 && determinant(wp) == 0) throw DomainError("omega is degenerate at a sample point");
    LinearLagrangian l1 = backward_image(from_bivector_at(pi1, phi1(p)), phi1.jacobian_at(p));
    LinearLagrangian l2 = gauge_at(backward_image(from_bivector_at(pi2, phi2(p)), phi2.jacobian_at(p)), wp);
    ++rep.samples_checked;
    if (!(l1 == l2)) {
      std::ostringstream os;
      os << "subspaces differ at sample " << rep.samples_checked - 1;
      rep.detail = os.str();
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

QMatrix transversal_induced_poisson_at(const ConstraintSystem& cs, std::span<const Rational> point) {
  cs.validate();
  const std::size_t n = cs.ambient.dim();
  const MultiVec& pi = cs.ambient.pi();
  if (!cs.parametrization) {
    if (!cs.psi.empty()) throw DomainError("induced structure needs a parametrization of N");
    return evaluate_bivector(pi, point);
  }
  const PolyMap& phi = *cs.parametrization;
  QVector x = phi(point);
  QMatrix p = evaluate_bivector(pi, x);
  QMatrix pd = p;
  const std::size_t k = cs.psi.size();
  if (k > 0) {
    QMatrix g = evaluate(gradients(cs.psi, n), x);
    QMatrix c = g * p * g.transpose();
    auto cinv = inverse(c);
    if (!cinv) throw VerificationError("cosymplectic condition fails at the point");
    pd = p - p * g.transpose() * (*cinv) * g * p;
  }
  QMatrix j = phi.jacobian_at(point);
  auto gram = inverse(j.transpose() * j);
  if (!gram) throw DomainError("parametrization is not an immersion at the point");
  QMatrix left_inv = (*gram) * j.transpose();
  QMatrix pn = left_inv * pd * left_inv.transpose();
  if (!(j * pn * j.transpose() == pd)) throw VerificationError("Dirac bivector is not tangent to N at the point");
  return pn;
}

std::vector<QVector> rational_sphere_points(std::size_t dim, std::size_t count, const Rational& radius) {
  if (dim < 2) throw DomainError("sphere points need dimension >= 2");
  std::vector<QVector> out;
  const std::size_t m = dim - 1;
  for (long shell = 0; out.size() < count; ++shell) {
    // integer points t with max |t_i| == shell, in lexicographic order
    std::vector<long> t(m, -shell);
    while (true) {
      long mx = 0;
      for (auto v : t) mx = std::max(mx, v < 0 ? -v : v);
      if (mx == shell) {
        Rational s = 0;
        for (auto v : t) s += Rational(v) * v;
        QVector x;
        for (auto v : t) x.push_back(radius * Rational(2 * v) / (s + 1));
        x.push_back(radius * (s - 1) / (s + 1));
        out.push_back(x);
        if (out.size() == count) break;
      }
      std::size_t i = 0;
      while (i < m && t[i] == shell) t[i++] = -shell;
      if (i == m) break;
      ++t[i];
    }
  }
  return out;
}

}  // namespace poisskit
