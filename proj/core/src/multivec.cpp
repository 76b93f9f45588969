#include "poisskit/multivec.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace poisskit {

ChartPtr make_chart(std::vector<std::string> names) { return std::make_shared<const Chart>(std::move(names)); }
ChartPtr make_chart(Chart chart) { return std::make_shared<const Chart>(std::move(chart)); }

int sort_with_sign(IndexTuple& t) {
  int sign = 1;
  // insertion sort; tuples are short
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw DomainError("chart mismatch");
}

namespace {

RatFunc zero_on(const Chart& c) { return RatFunc(c.dim()); }

// ξ_I with ξ_i removed, sign of the right derivative; 0 when i is absent.
int right_derivative(const IndexTuple& t, std::size_t i, IndexTuple& rest) {
  auto it = std::find(t.begin(), t.end(), i);
  if (it == t.end()) return 0;
  const auto pos = static_cast<std::size_t>(it - t.begin());
  rest = t;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
  return ((t.size() - 1 - pos) % 2 == 0) ? 1 : -1;
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// determinant of the k x k matrix entry(a, b)
template <class Entry>
RatFunc small_det(std::size_t k, std::size_t nvars, const Entry& entry) {
  if (k == 0) return RatFunc(nvars, Rational(1));
  RMatrix m(k, k, RatFunc(nvars));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) m(a, b) = entry(a, b);
  return determinant(m);
}

}  // namespace

template <class Kind>
Alternating<Kind>::Alternating(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw DomainError("null chart");
}

template <class Kind>
Alternating<Kind> Alternating<Kind>::scalar(ChartPtr chart, RatFunc f) {
  Alternating r(std::move(chart), 0);
  r.set({}, std::move(f));
  return r;
}

template <class Kind>
Alternating<Kind> Alternating<Kind>::basis(ChartPtr chart, IndexTuple indices, RatFunc c) {
  Alternating r(std::move(chart), indices.size());
  r.add(std::move(indices), c);
  return r;
}

template <class Kind>
Alternating<Kind> Alternating<Kind>::basis(ChartPtr chart, IndexTuple indices) {
  const std::size_t n = chart->dim();
  return basis(std::move(chart), std::move(indices), RatFunc(n, Rational(1)));
}

template <class Kind>
Alternating<Kind> Alternating<Kind>::from_components(ChartPtr chart, std::span<const RatFunc> comps) {
  if (comps.size() != chart->dim()) throw DomainError("component count differs from chart dimension");
  Alternating r(std::move(chart), 1);
  for (std::size_t i = 0; i < comps.size(); ++i) r.set({i}, comps[i]);
  return r;
}

template <class Kind>
RatFunc Alternating<Kind>::coeff(const IndexTuple& sorted) const {
  auto it = coeffs_.find(sorted);
  return it == coeffs_.end() ? zero_on(*chart_) : it->second;
}

template <class Kind>
void Alternating<Kind>::add(IndexTuple indices, const RatFunc& c) {
  if (indices.size() != degree_) throw DomainError("index tuple length differs from degree");
  for (auto i : indices)
    if (i >= dim()) throw DomainError("index out of range");
  const int s = sort_with_sign(indices);
  if (s == 0 || c.is_zero()) return;
  auto it = coeffs_.find(indices);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(indices), s > 0 ? c : -c);
    return;
  }
  if (s > 0)
    it->second += c;
  else
    it->second -= c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

template <class Kind>
void Alternating<Kind>::set(const IndexTuple& sorted, RatFunc c) {
  if (sorted.size() != degree_) throw DomainError("index tuple length differs from degree");
  if (c.is_zero())
    coeffs_.erase(sorted);
  else
    coeffs_[sorted] = std::move(c);
}

template <class Kind>
std::vector<RatFunc> Alternating<Kind>::components() const {
  if (degree_ != 1) throw DomainError("components() needs degree 1");
  std::vector<RatFunc> out(dim(), zero_on(*chart_));
  for (const auto& [t, c] : coeffs_) out[t[0]] = c;
  return out;
}

template <class Kind>
Alternating<Kind>& Alternating<Kind>::operator+=(const Alternating& o) {
  require_same_chart(*chart_, *o.chart_);
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (degree_ != o.degree_) throw DomainError("degree mismatch in sum");
  for (const auto& [t, c] : o.coeffs_) add(t, c);
  return *this;
}

template <class Kind>
Alternating<Kind>& Alternating<Kind>::operator-=(const Alternating& o) {
  return *this += -o;
}

template <class Kind>
Alternating<Kind>& Alternating<Kind>::operator*=(const RatFunc& f) {
  if (f.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
  }
  return *this;
}

template <class Kind>
Alternating<Kind> Alternating<Kind>::operator-() const {
  Alternating r = *this;
  for (auto& [t, c] : r.coeffs_) c = -c;
  return r;
}

template class Alternating<VectorKind>;
template class Alternating<FormKind>;

template <class Kind>
Alternating<Kind> wedge(const Alternating<Kind>& a, const Alternating<Kind>& b) {
  require_same_chart(a.chart(), b.chart());
  Alternating<Kind> r(a.chart_ptr(), a.degree() + b.degree());
  if (r.degree() > a.dim()) return r;
  for (const auto& [ta, ca] : a.coeffs())
    for (const auto& [tb, cb] : b.coeffs()) r.add(concat(ta, tb), ca * cb);
  return r;
}

template MultiVec wedge(const MultiVec&, const MultiVec&);
template DiffForm wedge(const DiffForm&, const DiffForm&);

DiffForm contract(const DiffForm& form, const MultiVec& vec) {
  require_same_chart(form.chart(), vec.chart());
  if (form.degree() == 0) throw DomainError("contraction of a 0-form");
  if (vec.degree() != 1) throw DomainError("contraction needs a vector field");
  DiffForm r(form.chart_ptr(), form.degree() - 1);
  for (const auto& [t, c] : form.coeffs())
    for (std::size_t p = 0; p < t.size(); ++p) {
      RatFunc x = vec.coeff({t[p]});
      if (x.is_zero()) continue;
      IndexTuple rest = t;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      r.add(std::move(rest), p % 2 == 0 ? c * x : -(c * x));
    }
  return r;
}

DiffForm exterior_derivative(const DiffForm& form) {
  DiffForm r(form.chart_ptr(), form.degree() + 1);
  if (r.degree() > form.dim()) return r;
  for (const auto& [t, c] : form.coeffs())
    for (std::size_t j = 0; j < form.dim(); ++j) {
      if (std::find(t.begin(), t.end(), j) != t.end()) continue;
      RatFunc dc = diff(c, j);
      if (dc.is_zero()) continue;
      IndexTuple u{j};
      u.insert(u.end(), t.begin(), t.end());
      r.add(std::move(u), dc);
    }
  return r;
}

DiffForm differential(const ChartPtr& chart, const RatFunc& f) {
  return exterior_derivative(DiffForm::scalar(chart, f));
}

MultiVec schouten(const MultiVec& x, const MultiVec& y) {
  require_same_chart(x.chart(), y.chart());
  const std::size_t k = x.degree();
  const std::size_t l = y.degree();
  if (k + l == 0) return MultiVec(x.chart_ptr(), 0);
  MultiVec r(x.chart_ptr(), k + l - 1);
  if (r.degree() > x.dim()) return r;
  // (k-1)(l-1) has the parity of (k+1)(l+1), also for k or l = 0
  const bool odd = ((k + 1) * (l + 1)) % 2 == 1;
  IndexTuple rest;
  for (const auto& [tx, cx] : x.coeffs())
    for (const auto& [ty, cy] : y.coeffs()) {
      for (auto i : tx) {
        RatFunc d = diff(cy, i);
        if (d.is_zero()) continue;
        const int s = right_derivative(tx, i, rest);
        RatFunc c = cx * d;
        r.add(concat(rest, ty), s > 0 ? c : -c);
      }
      for (auto i : ty) {
        RatFunc d = diff(cx, i);
        if (d.is_zero()) continue;
        const int s = right_derivative(ty, i, rest);
        RatFunc c = cy * d;
        // − (−1)^{(k−1)(l−1)} ∂^R Y/∂ξ_i ∧ ∂X/∂x_i
        r.add(concat(rest, tx), (s > 0) == odd ? c : -c);
      }
    }
  return r;
}

MultiVec lie_derivative(const MultiVec& x, const MultiVec& t) {
  if (x.degree() != 1) throw DomainError("Lie derivative along a non-vector field");
  return schouten(x, t);
}

DiffForm lie_derivative(const MultiVec& x, const DiffForm& t) {
  require_same_chart(x.chart(), t.chart());
  if (x.degree() != 1) throw DomainError("Lie derivative along a non-vector field");
  DiffForm r = contract(exterior_derivative(t), x);
  if (t.degree() > 0) r += exterior_derivative(contract(t, x));
  return r;
}

RatFunc pair(const MultiVec& m, std::span<const DiffForm> forms) {
  if (forms.size() != m.degree()) throw DomainError("pairing needs one form per degree");
  for (const auto& f : forms) {
    require_same_chart(m.chart(), f.chart());
    if (f.degree() != 1) throw DomainError("pairing needs 1-forms");
  }
  const std::size_t n = m.dim();
  RatFunc s(n);
  for (const auto& [t, c] : m.coeffs())
    s += c * small_det(t.size(), n, [&](std::size_t a, std::size_t b) { return forms[a].coeff({t[b]}); });
  return s;
}

RatFunc pair(const DiffForm& f, std::span<const MultiVec> vecs) {
  if (vecs.size() != f.degree()) throw DomainError("pairing needs one vector field per degree");
  for (const auto& v : vecs) {
    require_same_chart(f.chart(), v.chart());
    if (v.degree() != 1) throw DomainError("pairing needs vector fields");
  }
  const std::size_t n = f.dim();
  RatFunc s(n);
  for (const auto& [t, c] : f.coeffs())
    s += c * small_det(t.size(), n, [&](std::size_t a, std::size_t b) { return vecs[a].coeff({t[b]}); });
  return s;
}

RatFunc pair(const DiffForm& alpha, const MultiVec& x) {
  return pair(alpha, std::span<const MultiVec>(&x, 1));
}

namespace {

template <class Kind>
RMatrix to_matrix(const Alternating<Kind>& a) {
  if (a.degree() != 2) throw DomainError("matrix form needs degree 2");
  const std::size_t n = a.dim();
  RMatrix m(n, n, RatFunc(n));
  for (const auto& [t, c] : a.coeffs()) {
    m(t[0], t[1]) = c;
    m(t[1], t[0]) = -c;
  }
  return m;
}

template <class Kind>
Alternating<Kind> from_matrix(const ChartPtr& chart, const RMatrix& m) {
  const std::size_t n = chart->dim();
  if (m.rows() != n || m.cols() != n) throw DomainError("matrix size differs from chart dimension");
  Alternating<Kind> a(chart, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(m(i, j) == -m(j, i))) throw DomainError("matrix is not antisymmetric");
      a.set({i, j}, m(i, j));
    }
  return a;
}

}  // namespace

RMatrix bivector_matrix(const MultiVec& pi) { return to_matrix(pi); }
RMatrix two_form_matrix(const DiffForm& omega) { return to_matrix(omega); }
MultiVec bivector_from_matrix(const ChartPtr& chart, const RMatrix& m) { return from_matrix<VectorKind>(chart, m); }
DiffForm two_form_from_matrix(const ChartPtr& chart, const RMatrix& m) { return from_matrix<FormKind>(chart, m); }

QMatrix evaluate_bivector(const MultiVec& pi, std::span<const Rational> point) {
  if (pi.degree() != 2) throw DomainError("bivector expected");
  if (point.size() != pi.dim()) throw DomainError("point dimension differs from chart");
  const std::size_t n = pi.dim();
  QMatrix m(n, n, Rational(0));
  for (const auto& [t, c] : pi.coeffs()) {
    Rational v = eval(c, point);
    m(t[0], t[1]) = v;
    m(t[1], t[0]) = -v;
  }
  return m;
}

PolyMap::PolyMap(ChartPtr source, ChartPtr target, std::vector<RatFunc> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (components_.size() != target_->dim()) throw DomainError("component count differs from target dimension");
  for (const auto& c : components_)
    if (c.nvars() != source_->dim()) throw DomainError("map component not in source variables");
}

PolyMap PolyMap::identity(const ChartPtr& chart) {
  std::vector<RatFunc> comps;
  for (std::size_t i = 0; i < chart->dim(); ++i) comps.push_back(RatFunc::variable(chart->dim(), i));
  return PolyMap(chart, chart, std::move(comps));
}

PolyMap PolyMap::linear(ChartPtr source, ChartPtr target, const QMatrix& a) {
  const std::size_t m = source->dim();
  if (a.rows() != target->dim() || a.cols() != m) throw DomainError("linear map has wrong shape");
  std::vector<RatFunc> comps;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Poly p(m);
    for (std::size_t j = 0; j < m; ++j)
      if (a(i, j) != 0) p += Poly::variable(m, j) * a(i, j);
    comps.emplace_back(std::move(p));
  }
  return PolyMap(std::move(source), std::move(target), std::move(comps));
}

bool PolyMap::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(), [](const RatFunc& c) { return c.is_polynomial(); });
}

RMatrix PolyMap::jacobian() const {
  const std::size_t m = source_->dim();
  RMatrix j(components_.size(), m, RatFunc(m));
  for (std::size_t a = 0; a < components_.size(); ++a)
    for (std::size_t b = 0; b < m; ++b) j(a, b) = diff(components_[a], b);
  return j;
}

QMatrix PolyMap::jacobian_at(std::span<const Rational> point) const { return evaluate(jacobian(), point); }

QVector PolyMap::operator()(std::span<const Rational> point) const {
  if (point.size() != source_->dim()) throw DomainError("point dimension differs from source chart");
  QVector out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(eval(c, point));
  return out;
}

RatFunc PolyMap::pull(const RatFunc& f) const {
  if (f.nvars() != target_->dim()) throw DomainError("function not in target variables");
  return compose(f, components_);
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  require_same_chart(*outer.source(), *inner.target());
  std::vector<RatFunc> comps;
  for (const auto& c : outer.components()) comps.push_back(inner.pull(c));
  return PolyMap(inner.source(), outer.target(), std::move(comps));
}

DiffForm pullback_form(const PolyMap& phi, const DiffForm& form) {
  require_same_chart(*phi.target(), form.chart());
  const ChartPtr& src = phi.source();
  DiffForm r(src, form.degree());
  if (form.degree() > src->dim()) return r;
  std::vector<DiffForm> dphi;
  for (const auto& c : phi.components()) dphi.push_back(differential(src, c));
  for (const auto& [t, c] : form.coeffs()) {
    DiffForm term = DiffForm::scalar(src, phi.pull(c));
    for (auto i : t) {
      term = wedge(term, dphi[i]);
      if (term.is_zero()) break;
    }
    r += term;
  }
  return r;
}

QMatrix pushforward_bivector_at(const PolyMap& phi, std::span<const Rational> p, const QMatrix& pi_at_p) {
  QMatrix j = phi.jacobian_at(p);
  if (pi_at_p.rows() != j.cols() || pi_at_p.cols() != j.cols()) throw DomainError("bivector matrix has wrong size");
  return j * pi_at_p * j.transpose();
}

namespace {

template <class Kind>
std::string render(const Alternating<Kind>& a, const char* prefix) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : a.coeffs()) {
    std::string basis;
    for (std::size_t p = 0; p < t.size(); ++p) {
      if (p) basis += '^';
      basis += prefix + a.chart().name(t[p]);
    }
    std::string coeff = to_string(c, a.chart());
    bool negative = false;
    // a single-term numerator prints with a leading sign we can lift out
    if (c.is_polynomial() && c.num().term_count() == 1 && coeff.starts_with('-')) {
      negative = true;
      coeff = to_string(-c, a.chart());
    }
    const bool compound = !c.is_polynomial() || c.num().term_count() > 1;
    if (compound) coeff = "(" + coeff + ")";
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (t.empty()) {
      os << coeff;
    } else {
      if (coeff != "1") os << coeff << ' ';
      os << basis;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const MultiVec& m) { return render(m, "d/d"); }
std::string to_string(const DiffForm& f) { return render(f, "d"); }

}  // namespace poisskit
