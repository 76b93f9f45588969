#pragma once

// Shared helpers for the unit tests: fixed-seed random generators for
// polynomials and multivectors, and short constructors.

#include <random>
#include <string>
#include <vector>

#include "poisskit/expr.hpp"
#include "poisskit/linalg.hpp"
#include "poisskit/multivec.hpp"

namespace poisskit::testing {

class Random {
 public:
  explicit Random(unsigned seed = 12345u) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int range = 5) { return make_rational(integer(-range, range), integer(1, 3)); }

  /// Polynomial of total degree <= max_degree with up to `terms` terms.
  Poly poly(std::size_t nvars, unsigned max_degree, int terms = 4) {
    Poly p(nvars);
    const int count = integer(0, terms);
    for (int t = 0; t < count; ++t) {
      Monomial m(nvars, 0);
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
      for (unsigned b = 0; b < budget && nvars > 0; ++b) ++m[static_cast<std::size_t>(integer(0, static_cast<int>(nvars) - 1))];
      p.add_term(m, rational());
    }
    return p;
  }

  MultiVec multivec(const ChartPtr& chart, std::size_t degree, unsigned coeff_degree = 2) {
    MultiVec x(chart, degree);
    const std::size_t n = chart->dim();
    if (degree > n) return x;
    const int count = integer(1, 3);
    for (int t = 0; t < count; ++t) {
      IndexTuple idx;
      for (std::size_t i = 0; i < n && idx.size() < degree; ++i)
        if (integer(0, 1) == 1 || n - i == degree - idx.size()) idx.push_back(i);
      x.add(idx, RatFunc(poly(n, coeff_degree, 3)));
    }
    return x;
  }

  DiffForm form(const ChartPtr& chart, std::size_t degree, unsigned coeff_degree = 2) {
    MultiVec m = multivec(chart, degree, coeff_degree);
    DiffForm f(chart, degree);
    for (const auto& [t, c] : m.coeffs()) f.set(t, c);
    return f;
  }

 private:
  std::mt19937 rng_;
};

inline RatFunc E(const std::string& text, const ChartPtr& chart) { return parse_expr(text, *chart); }

inline MultiVec vf(const ChartPtr& chart, const std::vector<std::string>& comps) {
  std::vector<RatFunc> c;
  for (const auto& s : comps) c.push_back(E(s, chart));
  return MultiVec::from_components(chart, c);
}

inline DiffForm one_form(const ChartPtr& chart, const std::vector<std::string>& comps) {
  std::vector<RatFunc> c;
  for (const auto& s : comps) c.push_back(E(s, chart));
  return DiffForm::from_components(chart, c);
}

/// Bivector from (i, j, expr) entries.
struct Entry {
  std::size_t i, j;
  std::string expr;
};

inline MultiVec bivector(const ChartPtr& chart, const std::vector<Entry>& entries) {
  MultiVec pi(chart, 2);
  for (const auto& e : entries) pi.add({e.i, e.j}, E(e.expr, chart));
  return pi;
}

inline QVector Q(std::initializer_list<long> xs) {
  QVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline QMatrix QM(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<QVector> r;
  std::size_t cols = 0;
  for (auto row : rows) {
    r.push_back(Q(row));
    cols = row.size();
  }
  return QMatrix::from_rows(r, cols);
}

}  // namespace poisskit::testing
