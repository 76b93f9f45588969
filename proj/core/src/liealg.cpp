#include "poisskit/liealg.hpp"

#include <sstream>

namespace poisskit {

namespace {

using Tensor = std::vector<std::vector<std::vector<Rational>>>;

std::string indices(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

}  // namespace

LieAlgebra LieAlgebra::from_tensor(Tensor c) {
  const std::size_t m = c.size();
  for (const auto& row : c) {
    if (row.size() != m) throw DomainError("structure constants must form an m x m x m array");
    for (const auto& v : row)
      if (v.size() != m) throw DomainError("structure constants must form an m x m x m array");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (c[i][j][k] != -c[j][i][k])
          throw VerificationError("antisymmetry fails at (i,j,k) = " + indices({i, j, k}));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t q = 0; q < m; ++q) {
          Rational s = 0;
          for (std::size_t l = 0; l < m; ++l)
            s += c[i][j][l] * c[l][k][q] + c[k][i][l] * c[l][j][q] + c[j][k][l] * c[l][i][q];
          if (s != 0)
            throw VerificationError("Jacobi identity fails at (i,j,k,m) = " + indices({i, j, k, q}) + ", sum " +
                                    to_string(s));
        }
  LieAlgebra g;
  g.dim_ = m;
  g.c_.reserve(m * m * m);
  for (auto& row : c)
    for (auto& v : row)
      for (auto& x : v) g.c_.push_back(std::move(x));
  return g;
}

LieAlgebra LieAlgebra::from_triples(std::size_t dim, const std::vector<StructureConstant>& triples) {
  Tensor c(dim, std::vector<QVector>(dim, QVector(dim, Rational(0))));
  std::vector<std::vector<std::vector<bool>>> seen(dim, std::vector<std::vector<bool>>(dim, std::vector<bool>(dim)));
  for (const auto& t : triples) {
    if (t.i >= dim || t.j >= dim || t.k >= dim) throw DomainError("structure constant index out of range");
    if (t.i == t.j && t.value != 0)
      throw VerificationError("antisymmetry fails at (i,j,k) = " + indices({t.i, t.j, t.k}));
    const bool clash = (seen[t.i][t.j][t.k] && c[t.i][t.j][t.k] != t.value) ||
                       (seen[t.j][t.i][t.k] && c[t.j][t.i][t.k] != -t.value);
    if (clash) throw VerificationError("antisymmetry fails at (i,j,k) = " + indices({t.i, t.j, t.k}));
    c[t.i][t.j][t.k] = t.value;
    c[t.j][t.i][t.k] = -t.value;
    seen[t.i][t.j][t.k] = seen[t.j][t.i][t.k] = true;
  }
  return from_tensor(std::move(c));
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return from_triples(dim, {}); }

LieAlgebra LieAlgebra::so3() { return from_triples(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}); }

LieAlgebra LieAlgebra::sl2r() { return from_triples(3, {{0, 1, 2, -1}, {1, 2, 0, 1}, {2, 0, 1, 1}}); }

LieAlgebra LieAlgebra::book() { return from_triples(3, {{0, 1, 1, 1}, {0, 2, 2, 1}}); }

LieAlgebra LieAlgebra::heisenberg() { return from_triples(3, {{0, 1, 2, 1}}); }

QVector LieAlgebra::bracket(const QVector& u, const QVector& v) const {
  if (u.size() != dim_ || v.size() != dim_) throw DomainError("vector not in the Lie algebra");
  QVector w(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t k = 0; k < dim_; ++k)
        if (c(i, j, k) != 0) w[k] += u[i] * v[j] * c(i, j, k);
    }
  }
  return w;
}

QMatrix LieAlgebra::ad(const QVector& u) const {
  QMatrix m(dim_, dim_, Rational(0));
  for (std::size_t j = 0; j < dim_; ++j) {
    QVector e(dim_, Rational(0));
    e[j] = 1;
    auto col = bracket(u, e);
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
  }
  return m;
}

AlgMultiVec::AlgMultiVec(std::shared_ptr<const LieAlgebra> parent, std::size_t degree)
    : parent_(std::move(parent)), degree_(degree) {
  if (!parent_) throw DomainError("null Lie algebra");
}

AlgMultiVec AlgMultiVec::basis(std::shared_ptr<const LieAlgebra> parent, IndexTuple idx, const Rational& c) {
  AlgMultiVec a(std::move(parent), idx.size());
  a.add(std::move(idx), c);
  return a;
}

AlgMultiVec AlgMultiVec::from_vector(std::shared_ptr<const LieAlgebra> parent, const QVector& v) {
  AlgMultiVec a(std::move(parent), 1);
  if (v.size() != a.dim()) throw DomainError("vector not in the Lie algebra");
  for (std::size_t i = 0; i < v.size(); ++i) a.add({i}, v[i]);
  return a;
}

Rational AlgMultiVec::coeff(const IndexTuple& sorted) const {
  auto it = coeffs_.find(sorted);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

QVector AlgMultiVec::to_vector() const {
  if (degree_ != 1) throw DomainError("to_vector needs degree 1");
  QVector v(dim(), Rational(0));
  for (const auto& [t, c] : coeffs_) v[t[0]] = c;
  return v;
}

void AlgMultiVec::add(IndexTuple idx, const Rational& c) {
  if (idx.size() != degree_) throw DomainError("index tuple length differs from degree");
  for (auto i : idx)
    if (i >= dim()) throw DomainError("index out of range");
  const int s = sort_with_sign(idx);
  if (s == 0 || c == 0) return;
  Rational& slot = coeffs_[idx];
  slot += s > 0 ? c : Rational(-c);
  if (slot == 0) coeffs_.erase(idx);
}

AlgMultiVec& AlgMultiVec::operator+=(const AlgMultiVec& o) {
  if (!(*parent_ == *o.parent_)) throw DomainError("Lie algebra mismatch");
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw DomainError("degree mismatch in sum");
  for (const auto& [t, c] : o.coeffs_) add(t, c);
  return *this;
}

AlgMultiVec& AlgMultiVec::operator-=(const AlgMultiVec& o) { return *this += o * Rational(-1); }

AlgMultiVec& AlgMultiVec::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [t, v] : coeffs_) v *= c;
  return *this;
}

AlgMultiVec wedge(const AlgMultiVec& a, const AlgMultiVec& b) {
  if (!(*a.parent() == *b.parent())) throw DomainError("Lie algebra mismatch");
  AlgMultiVec r(a.parent(), a.degree() + b.degree());
  if (r.degree() > a.dim()) return r;
  for (const auto& [ta, ca] : a.coeffs())
    for (const auto& [tb, cb] : b.coeffs()) {
      IndexTuple t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      r.add(std::move(t), ca * cb);
    }
  return r;
}

AlgMultiVec alg_schouten(const AlgMultiVec& a, const AlgMultiVec& b) {
  if (!(*a.parent() == *b.parent())) throw DomainError("Lie algebra mismatch");
  const LieAlgebra& g = *a.parent();
  const std::size_t k = a.degree(), l = b.degree();
  if (k == 0 || l == 0) return AlgMultiVec(a.parent(), k + l == 0 ? 0 : k + l - 1);
  AlgMultiVec r(a.parent(), k + l - 1);
  if (r.degree() > g.dim()) return r;
  for (const auto& [ta, ca] : a.coeffs())
    for (const auto& [tb, cb] : b.coeffs())
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < l; ++q)
          for (std::size_t m = 0; m < g.dim(); ++m) {
            const Rational& s = g.c(ta[p], tb[q], m);
            if (s == 0) continue;
            IndexTuple t{m};
            for (std::size_t i = 0; i < k; ++i)
              if (i != p) t.push_back(ta[i]);
            for (std::size_t j = 0; j < l; ++j)
              if (j != q) t.push_back(tb[j]);
            Rational c = ca * cb * s;
            r.add(std::move(t), (p + q) % 2 == 0 ? c : Rational(-c));
          }
  return r;
}

std::string to_string(const AlgMultiVec& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : a.coeffs()) {
    const bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string basis;
    for (std::size_t p = 0; p < t.size(); ++p) basis += (p ? "^e" : "e") + std::to_string(t[p] + 1);
    if (t.empty())
      os << to_string(mag);
    else if (mag == 1)
      os << basis;
    else
      os << to_string(mag) << ' ' << basis;
  }
  return os.str();
}

ChartPtr dual_chart(std::size_t dim) {
  static const std::vector<std::string> small = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back(dim <= 4 ? small[i] : "xi" + std::to_string(i + 1));
  return make_chart(std::move(names));
}

namespace {

ChartPtr chart_for(const LieAlgebra& g, ChartPtr chart) {
  if (!chart) return dual_chart(g.dim());
  if (chart->dim() != g.dim()) throw DomainError("chart dimension differs from the Lie algebra");
  return chart;
}

MultiVec linear_bivector(const LieAlgebra& g, const ChartPtr& chart) {
  const std::size_t m = g.dim();
  MultiVec pi(chart, 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Poly p(m);
      for (std::size_t k = 0; k < m; ++k)
        if (g.c(i, j, k) != 0) p += Poly::variable(m, k) * g.c(i, j, k);
      pi.set({i, j}, RatFunc(std::move(p)));
    }
  return pi;
}

}  // namespace

PoissonStructure lie_poisson(const LieAlgebra& g, ChartPtr chart) {
  return PoissonStructure(linear_bivector(g, chart_for(g, std::move(chart))));
}

MultiVec coadjoint_vf(const LieAlgebra& g, const QVector& u, ChartPtr chart) {
  chart = chart_for(g, std::move(chart));
  const std::size_t m = g.dim();
  if (u.size() != m) throw DomainError("vector not in the Lie algebra");
  std::vector<RatFunc> comps;
  // X^j = Σ_{i,k} u_i c_ijk ξ_k
  for (std::size_t j = 0; j < m; ++j) {
    Poly p(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t k = 0; k < m; ++k)
        if (g.c(i, j, k) != 0) p += Poly::variable(m, k) * (u[i] * g.c(i, j, k));
    }
    comps.emplace_back(std::move(p));
  }
  return MultiVec::from_components(chart, comps);
}

bool is_2cocycle(const LieAlgebra& g, const AlgMultiVec& lambda) {
  const std::size_t m = g.dim();
  if (lambda.degree() != 2 && !lambda.is_zero()) throw DomainError("2-cocycle check needs degree 2");
  auto lam = [&](std::size_t a, std::size_t b) -> Rational {
    if (a == b) return 0;
    return a < b ? lambda.coeff({a, b}) : Rational(-lambda.coeff({b, a}));
  };
  // λ(e_a, [e_b, e_c])
  auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
    Rational s = 0;
    for (std::size_t q = 0; q < m; ++q)
      if (g.c(b, c, q) != 0) s += lam(a, q) * g.c(b, c, q);
    return s;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (term(i, j, k) + term(j, k, i) + term(k, i, j) != 0) return false;
  return true;
}

PoissonStructure affine_poisson(const LieAlgebra& g, const AlgMultiVec& lambda, ChartPtr chart) {
  if (!is_2cocycle(g, lambda)) throw VerificationError("lambda = " + to_string(lambda) + " is not a 2-cocycle");
  chart = chart_for(g, std::move(chart));
  MultiVec pi = linear_bivector(g, chart);
  for (const auto& [t, c] : lambda.coeffs()) pi.add(t, RatFunc(g.dim(), c));
  return PoissonStructure(std::move(pi));
}

std::string to_string(CybClass c) {
  switch (c) {
    case CybClass::triangular:
      return "triangular";
    case CybClass::coboundary:
      return "coboundary";
    case CybClass::neither:
      break;
  }
  return "neither";
}

CybReport cyb_check(const LieAlgebra& g, const AlgMultiVec& r) {
  CybReport rep;
  rep.square = alg_schouten(r, r);
  if (rep.square.is_zero()) {
    rep.kind = CybClass::triangular;
    return rep;
  }
  for (std::size_t u = 0; u < g.dim(); ++u)
    if (!alg_schouten(AlgMultiVec::basis(r.parent(), {u}), rep.square).is_zero()) {
      rep.kind = CybClass::neither;
      return rep;
    }
  rep.kind = CybClass::coboundary;
  return rep;
}

Cobracket::Cobracket(std::shared_ptr<const LieAlgebra> parent, std::vector<AlgMultiVec> images)
    : parent_(std::move(parent)), images_(std::move(images)) {
  if (images_.size() != parent_->dim()) throw DomainError("cobracket needs one image per basis vector");
  for (const auto& im : images_)
    if (!im.is_zero() && im.degree() != 2) throw DomainError("cobracket images must be bivectors");
}

Cobracket Cobracket::zero(std::shared_ptr<const LieAlgebra> parent) {
  std::vector<AlgMultiVec> im(parent->dim(), AlgMultiVec(parent, 2));
  return Cobracket(parent, std::move(im));
}

Cobracket Cobracket::dual_to(std::shared_ptr<const LieAlgebra> parent, const LieAlgebra& dual) {
  const std::size_t m = parent->dim();
  if (dual.dim() != m) throw DomainError("dual algebra has the wrong dimension");
  std::vector<AlgMultiVec> im(m, AlgMultiVec(parent, 2));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (dual.c(i, j, k) != 0) im[k].add({i, j}, dual.c(i, j, k));
  return Cobracket(parent, std::move(im));
}

Cobracket Cobracket::coboundary(std::shared_ptr<const LieAlgebra> parent, const AlgMultiVec& r) {
  std::vector<AlgMultiVec> im;
  for (std::size_t u = 0; u < parent->dim(); ++u) {
    AlgMultiVec x = alg_schouten(AlgMultiVec::basis(parent, {u}), r);
    im.push_back(x.is_zero() ? AlgMultiVec(parent, 2) : x);
  }
  return Cobracket(parent, std::move(im));
}

AlgMultiVec Cobracket::apply(const QVector& u) const {
  AlgMultiVec r(parent_, 2);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) r += images_[i] * u[i];
  return r;
}

QMatrix Cobracket::matrix() const {
  const std::size_t m = parent_->dim();
  std::vector<IndexTuple> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) pairs.push_back({i, j});
  QMatrix d(m, pairs.size(), Rational(0));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t p = 0; p < pairs.size(); ++p) d(k, p) = images_[k].coeff(pairs[p]);
  return d;
}

BialgebraReport bialgebra_check(const LieAlgebra& g, const Cobracket& delta) {
  if (!(g == *delta.parent())) throw DomainError("cobracket lives on another Lie algebra");
  const std::size_t m = g.dim();
  BialgebraReport rep;
  Tensor d(m, std::vector<QVector>(m, QVector(m, Rational(0))));
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& [t, c] : delta.image(k).coeffs()) {
      d[t[0]][t[1]][k] = c;
      d[t[1]][t[0]][k] = -c;
    }
  try {
    (void)LieAlgebra::from_tensor(std::move(d));
    rep.dual_jacobi = true;
  } catch (const VerificationError&) {
    rep.dual_jacobi = false;
  }
  const auto& parent = delta.parent();
  rep.compat = true;
  for (std::size_t i = 0; i < m && rep.compat; ++i)
    for (std::size_t j = i + 1; j < m && rep.compat; ++j) {
      QVector ei(m, Rational(0)), ej(m, Rational(0));
      ei[i] = 1;
      ej[j] = 1;
      AlgMultiVec lhs = delta.apply(g.bracket(ei, ej));
      AlgMultiVec rhs = alg_schouten(AlgMultiVec::basis(parent, {i}), delta.image(j)) -
                        alg_schouten(AlgMultiVec::basis(parent, {j}), delta.image(i));
      if (!((lhs - rhs).is_zero())) rep.compat = false;
    }
  return rep;
}

QVector modular_character(const LieAlgebra& g) {
  QVector chi(g.dim(), Rational(0));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = 0; k < g.dim(); ++k) chi[i] += g.c(i, k, k);
  return chi;
}

MultiVec algebroid_dual_poisson(const ChartPtr& base, const RMatrix& rho,
                                const std::vector<std::vector<std::vector<RatFunc>>>& c) {
  const std::size_t n = base->dim();
  const std::size_t r = c.size();
  if (rho.rows() != n || (n > 0 && rho.cols() != r)) throw DomainError("anchor must be an n x r matrix");
  for (const auto& row : c) {
    if (row.size() != r) throw DomainError("bracket functions must form an r x r x r array");
    for (const auto& v : row)
      if (v.size() != r) throw DomainError("bracket functions must form an r x r x r array");
  }
  std::vector<std::string> names = base->names();
  for (std::size_t a = 0; a < r; ++a) names.push_back("xi" + std::to_string(a + 1));
  ChartPtr total = make_chart(std::move(names));
  const std::size_t N = n + r;
  auto lift = [&](const RatFunc& f) {
    if (f.nvars() != n) throw DomainError("algebroid data must be functions on the base chart");
    return f.embed(N, 0);
  };
  MultiVec pi(total, 2);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      RatFunc s(N);
      for (std::size_t k = 0; k < r; ++k)
        if (!c[a][b][k].is_zero()) s += lift(c[a][b][k]) * RatFunc::variable(N, n + k);
      pi.add({n + a, n + b}, s);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!rho(i, j).is_zero()) pi.add({i, n + j}, -lift(rho(i, j)));
  return pi;
}

bool is_lie_hom(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& t) {
  if (t.rows() != h.dim() || t.cols() != g.dim()) throw DomainError("map must be dim h x dim g");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      QVector ei(g.dim(), Rational(0)), ej(g.dim(), Rational(0));
      ei[i] = 1;
      ej[j] = 1;
      if (t.apply(g.bracket(ei, ej)) != h.bracket(t.col(i), t.col(j))) return false;
    }
  return true;
}

PolyMap dual_map(const QMatrix& t, ChartPtr h_chart, ChartPtr g_chart) {
  return PolyMap::linear(std::move(h_chart), std::move(g_chart), t.transpose());
}

namespace {

bool closed_under(const LieAlgebra& g, const std::vector<std::size_t>& s, bool ideal) {
  std::vector<bool> in(g.dim(), false);
  for (auto i : s) {
    if (i >= g.dim()) throw DomainError("basis index out of range");
    in[i] = true;
  }
  for (auto i : s)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (!ideal && !in[j]) continue;
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (!in[k] && g.c(i, j, k) != 0) return false;
    }
  return true;
}

}  // namespace

bool is_subalgebra(const LieAlgebra& g, const std::vector<std::size_t>& s) { return closed_under(g, s, false); }
bool is_ideal(const LieAlgebra& g, const std::vector<std::size_t>& s) { return closed_under(g, s, true); }

}  // namespace poisskit
