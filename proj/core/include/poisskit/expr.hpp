#pragma once

// Exact scalar algebra: rationals, multivariate polynomials over Q in
// graded-lex order, rational functions, and the expression parser.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poisskit/error.hpp"

namespace poisskit {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// n/d in lowest terms; d must be nonzero.
inline Rational make_rational(long n, long d) {
  Rational q{mpz_class(n), mpz_class(d)};
  q.canonicalize();
  return q;
}

/// Coordinate chart: an ordered list of distinct variable names.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> names);

  std::size_t dim() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Concatenation (x..., y...); names must stay distinct.
  Chart product(const Chart& other) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> names_;
};

/// Chart with names x1..xn.
Chart standard_chart(std::size_t n, std::string_view stem = "x");

using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

/// Graded lexicographic order, greatest first: higher total degree wins,
/// ties broken by the exponent of x_0, then x_1, ...
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Rational& c);

  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Monomial exps, const Rational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant coefficient (coefficient of the zero monomial).
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  /// Degree d when every term has total degree d (zero counts as homogeneous
  /// of any degree and reports nullopt through `degree()`).
  std::optional<int> homogeneous_degree() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned e) const;
  Poly derivative(std::size_t var) const;
  Rational eval(std::span<const Rational> point) const;

  /// Quotient when `d` divides this exactly, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& d) const;

  /// Same polynomial in a larger variable set; variable i maps to
  /// position offset + i.
  Poly embed(std::size_t nvars, std::size_t offset = 0) const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Monic gcd over Q (0 when both inputs are 0).
Poly gcd(const Poly& a, const Poly& b);

/// Rational function num/den. Canonical up to cancellation: the denominator
/// is always monic; common factors are cancelled when a gcd is cheap.
class RatFunc {
 public:
  RatFunc() : RatFunc(std::size_t{0}) {}
  explicit RatFunc(std::size_t nvars) : num_(nvars), den_(nvars, 1) {}
  RatFunc(std::size_t nvars, const Rational& c) : num_(nvars, c), den_(nvars, 1) {}
  RatFunc(Poly p);  // NOLINT(google-explicit-constructor): polynomials are rational functions
  RatFunc(Poly num, Poly den);

  static RatFunc variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return num_.nvars(); }
  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Value when constant.
  Rational constant_value() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  RatFunc operator-() const;
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  /// Cross-multiplication test: a/b == c/d iff ad - cb == 0.
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  RatFunc pow(unsigned e) const;
  RatFunc embed(std::size_t nvars, std::size_t offset = 0) const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

RatFunc diff(const RatFunc& e, std::size_t var);
/// Throws PoleError when the denominator vanishes at `point`.
Rational eval(const RatFunc& e, std::span<const Rational> point);
inline bool is_zero(const RatFunc& e) { return e.is_zero(); }

/// Substitutes `values[i]` for variable i. All values share one variable set.
RatFunc compose(const RatFunc& e, std::span<const RatFunc> values);

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := uint | ident | '(' expr ')'
RatFunc parse_expr(std::string_view text, const Chart& chart);
/// A constant expression such as "-3/4" or "(1+2)/5".
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_point(std::string_view comma_separated);

std::string to_string(const Poly& p, const Chart& chart);
std::string to_string(const RatFunc& e, const Chart& chart);

// test-framework printer; variables render as x1..xn
void PrintTo(const RatFunc& e, std::ostream* os);

}  // namespace poisskit
