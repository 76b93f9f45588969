#pragma once

// Alternating tensor calculus on a chart: multivector fields and
// differential forms with rational-function coefficients.
//
// Coefficients are keyed by strictly increasing index tuples; the zero
// object of any degree is the empty mapping. Products whose degree exceeds
// the chart dimension are the zero object, never an error.

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "poisskit/expr.hpp"
#include "poisskit/linalg.hpp"

namespace poisskit {

using IndexTuple = std::vector<std::size_t>;
using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);
ChartPtr make_chart(Chart chart);

/// Sorts `t` in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(IndexTuple& t);

struct VectorKind {};
struct FormKind {};

template <class Kind>
class Alternating {
 public:
  using CoeffMap = std::map<IndexTuple, RatFunc>;

  Alternating() = default;
  Alternating(ChartPtr chart, std::size_t degree);

  static Alternating scalar(ChartPtr chart, RatFunc f);
  /// A single basis element with coefficient `c`; `indices` need not be sorted.
  static Alternating basis(ChartPtr chart, IndexTuple indices, RatFunc c);
  static Alternating basis(ChartPtr chart, IndexTuple indices);
  /// Degree-1 object from its n components.
  static Alternating from_components(ChartPtr chart, std::span<const RatFunc> comps);

  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  const Chart& chart() const { return *chart_; }
  std::size_t dim() const { return chart_->dim(); }
  std::size_t degree() const noexcept { return degree_; }
  const CoeffMap& coeffs() const noexcept { return coeffs_; }
  RatFunc coeff(const IndexTuple& sorted) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Adds c * e_{indices}; unsorted indices are sorted with the induced sign.
  void add(IndexTuple indices, const RatFunc& c);
  void set(const IndexTuple& sorted, RatFunc c);

  /// Components of a degree-1 object.
  std::vector<RatFunc> components() const;

  Alternating& operator+=(const Alternating& o);
  Alternating& operator-=(const Alternating& o);
  Alternating& operator*=(const RatFunc& f);
  Alternating operator-() const;
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(Alternating a, const RatFunc& f) { return a *= f; }
  friend Alternating operator*(const RatFunc& f, Alternating a) { return a *= f; }
  /// Zero objects compare equal whatever their nominal degree.
  friend bool operator==(const Alternating& a, const Alternating& b) {
    if (a.is_zero() && b.is_zero()) return *a.chart_ == *b.chart_;
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_ && *a.chart_ == *b.chart_;
  }

  /// Applies `fn` to every coefficient.
  Alternating map_coefficients(const auto& fn) const {
    Alternating r(chart_, degree_);
    for (const auto& [t, c] : coeffs_) r.set(t, fn(c));
    return r;
  }

 private:
  ChartPtr chart_;
  std::size_t degree_ = 0;
  CoeffMap coeffs_;
};

using MultiVec = Alternating<VectorKind>;
using DiffForm = Alternating<FormKind>;

extern template class Alternating<VectorKind>;
extern template class Alternating<FormKind>;

void require_same_chart(const Chart& a, const Chart& b);

template <class Kind>
Alternating<Kind> wedge(const Alternating<Kind>& a, const Alternating<Kind>& b);

/// Interior product i_X form with i_X(a∧b) = (i_X a)∧b + (-1)^{deg a} a∧(i_X b).
DiffForm contract(const DiffForm& form, const MultiVec& vec);
DiffForm exterior_derivative(const DiffForm& form);
DiffForm differential(const ChartPtr& chart, const RatFunc& f);

/// Schouten bracket, degree k + l - 1 (negative degrees give zero).
MultiVec schouten(const MultiVec& x, const MultiVec& y);
/// Schouten bracket with a vector field on multivectors, Cartan's formula on forms.
MultiVec lie_derivative(const MultiVec& x, const MultiVec& t);
DiffForm lie_derivative(const MultiVec& x, const DiffForm& t);

/// Full evaluation: multivector of degree k on k one-forms.
RatFunc pair(const MultiVec& m, std::span<const DiffForm> forms);
/// Full evaluation: k-form on k vector fields.
RatFunc pair(const DiffForm& f, std::span<const MultiVec> vecs);
/// Pairing of a 1-form with a vector field.
RatFunc pair(const DiffForm& alpha, const MultiVec& x);

/// Antisymmetric coefficient matrix (entry (i,j) = coefficient on (i,j)).
RMatrix bivector_matrix(const MultiVec& pi);
RMatrix two_form_matrix(const DiffForm& omega);
MultiVec bivector_from_matrix(const ChartPtr& chart, const RMatrix& m);
DiffForm two_form_from_matrix(const ChartPtr& chart, const RMatrix& m);
QMatrix evaluate_bivector(const MultiVec& pi, std::span<const Rational> point);

/// Map between charts given by rational components in the source variables.
class PolyMap {
 public:
  PolyMap(ChartPtr source, ChartPtr target, std::vector<RatFunc> components);

  static PolyMap identity(const ChartPtr& chart);
  static PolyMap linear(ChartPtr source, ChartPtr target, const QMatrix& a);

  const ChartPtr& source() const noexcept { return source_; }
  const ChartPtr& target() const noexcept { return target_; }
  const std::vector<RatFunc>& components() const noexcept { return components_; }
  bool is_polynomial() const;

  /// Jacobian, target-dim by source-dim.
  RMatrix jacobian() const;
  QMatrix jacobian_at(std::span<const Rational> point) const;
  QVector operator()(std::span<const Rational> point) const;
  /// f o this.
  RatFunc pull(const RatFunc& f) const;

 private:
  ChartPtr source_;
  ChartPtr target_;
  std::vector<RatFunc> components_;
};

/// (outer o inner).
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

DiffForm pullback_form(const PolyMap& phi, const DiffForm& form);
/// J P J^T with J the Jacobian of phi at p.
QMatrix pushforward_bivector_at(const PolyMap& phi, std::span<const Rational> p, const QMatrix& pi_at_p);

/// Canonical text: `coeff d/dx^d/dy` for multivectors, `coeff dx^dy` for forms.
std::string to_string(const MultiVec& m);
std::string to_string(const DiffForm& f);

// test-framework printers
inline void PrintTo(const MultiVec& m, std::ostream* os) { *os << to_string(m); }
inline void PrintTo(const DiffForm& f, std::ostream* os) { *os << to_string(f); }

}  // namespace poisskit
