#include "poisskit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace poisskit {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw DomainError("invalid chart variable name '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate chart variable name '" + n + "'");
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Chart Chart::product(const Chart& other) const {
  std::vector<std::string> all = names_;
  all.insert(all.end(), other.names_.begin(), other.names_.end());
  return Chart(std::move(all));
}

Chart standard_chart(std::size_t n, std::string_view stem) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(stem) + std::to_string(i + 1));
  return Chart(std::move(names));
}

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.emplace(Monomial(nvars, 0), c);
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DomainError("variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  return monomial(std::move(m));
}

Poly Poly::monomial(Monomial exps, const Rational& c) {
  Poly p(exps.size());
  if (c != 0) p.terms_.emplace(std::move(exps), c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = degree();
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(total_degree(m)) != d) return std::nullopt;
  return d;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw DomainError("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial variable-count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DomainError("polynomial variable-count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial variable-count mismatch");
  Poly r(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned e) const {
  Poly result(nvars_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) throw DomainError("derivative index out of range");
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    --dm[var];
    r.add_term(dm, c * m[var]);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  if (nvars_ != d.nvars_) throw DomainError("polynomial variable-count mismatch");
  Poly q(nvars_), r = *this;
  const Monomial& ld = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  Monomial t(nvars_);
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (lr[i] < ld[i]) return std::nullopt;
      t[i] = lr[i] - ld[i];
    }
    Poly step = Poly::monomial(t, r.leading_coefficient() / lc);
    q += step;
    r -= step * d;
  }
  return q;
}

Poly Poly::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw DomainError("embedding does not fit");
  Poly r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial big(nvars, 0);
    std::copy(m.begin(), m.end(), big.begin() + static_cast<std::ptrdiff_t>(offset));
    r.terms_.emplace(std::move(big), c);
  }
  return r;
}

// ---------------------------------------------------------------- gcd

namespace {

using Univariate = std::vector<Poly>;  // coefficients by power of the main variable

Univariate to_univariate(const Poly& p, std::size_t var) {
  Univariate u(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1, Poly(p.nvars()));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest[var] = 0;
    u[m[var]].add_term(rest, c);
  }
  return u;
}

Poly from_univariate(const Univariate& u, std::size_t var) {
  Poly r(u.front().nvars());
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (const auto& [m, c] : u[k].terms()) {
      Monomial mm = m;
      mm[var] = static_cast<unsigned>(k);
      r.add_term(mm, c);
    }
  }
  return r;
}

void trim(Univariate& u) {
  while (u.size() > 1 && u.back().is_zero()) u.pop_back();
}

bool is_zero(const Univariate& u) { return u.size() == 1 && u[0].is_zero(); }

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading_coefficient());
}

Poly content(const Univariate& u) {
  Poly g(u.front().nvars());
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Univariate primitive_part(const Univariate& u) {
  Poly c = content(u);
  if (c.is_zero()) return u;
  Univariate r;
  r.reserve(u.size());
  for (const auto& a : u) r.push_back(*a.divide_exact(c));
  // keep rational coefficients from growing along the remainder sequence
  Rational lc = r.back().leading_coefficient();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    for (auto& a : r) a *= inv;
  }
  return r;
}

Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (!is_zero(a) && a.size() - 1 >= db) {
    std::size_t shift = a.size() - 1 - db;
    Poly la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    a.pop_back();
    if (a.empty()) a.emplace_back(lb.nvars());
    trim(a);
  }
  return a;
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(a.nvars(), 1);

  // main variable: the highest index occurring in either input
  std::size_t var = 0;
  bool found = false;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      var = i;
      found = true;
      break;
    }
  }
  if (!found) return Poly(a.nvars(), 1);

  Univariate ua = to_univariate(a, var), ub = to_univariate(b, var);
  Poly cont = gcd(content(ua), content(ub));
  ua = primitive_part(ua);
  ub = primitive_part(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (!is_zero(ub)) {
    Univariate r = pseudo_remainder(ua, ub);
    ua = std::move(ub);
    ub = is_zero(r) ? r : primitive_part(r);
  }
  return make_monic(cont * from_univariate(ua, var));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("polynomial variable-count mismatch");
  return gcd_impl(a, b);
}

// ---------------------------------------------------------------- RatFunc

namespace {
constexpr int kGcdDegreeLimit = 8;
}

RatFunc::RatFunc(Poly p) : num_(std::move(p)), den_(num_.nvars(), 1) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.nvars() != den_.nvars()) throw DomainError("polynomial variable-count mismatch");
  normalize();
}

RatFunc RatFunc::variable(std::size_t nvars, std::size_t index) {
  return RatFunc(Poly::variable(nvars, index));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(num_.nvars(), 1);
    return;
  }
  if (den_.is_constant()) {
    Rational c = den_.constant_term();
    if (c != 1) num_ *= Rational(1) / c;
    den_ = Poly(num_.nvars(), 1);
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = std::move(*q);
    den_ = Poly(num_.nvars(), 1);
    return;
  }
  // common monomial factor
  Monomial low = num_.terms().begin()->first;
  for (const auto* p : {&num_, &den_})
    for (const auto& [m, c] : p->terms())
      for (std::size_t i = 0; i < low.size(); ++i) low[i] = std::min(low[i], m[i]);
  if (total_degree(low) > 0) {
    Poly mono = Poly::monomial(low);
    num_ = *num_.divide_exact(mono);
    den_ = *den_.divide_exact(mono);
  }
  if (num_.degree() <= kGcdDegreeLimit && den_.degree() <= kGcdDegreeLimit) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) den_ = Poly(num_.nvars(), 1);
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (nvars() != o.nvars()) throw DomainError("rational function variable-count mismatch");
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!is_polynomial()) normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (nvars() != o.nvars()) throw DomainError("rational function variable-count mismatch");
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  RatFunc inv(o.den_, o.num_);
  return *this *= inv;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.nvars() != b.nvars()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

RatFunc RatFunc::embed(std::size_t nvars, std::size_t offset) const {
  RatFunc r;
  r.num_ = num_.embed(nvars, offset);
  r.den_ = den_.embed(nvars, offset);
  return r;
}

RatFunc diff(const RatFunc& e, std::size_t var) {
  if (var >= e.nvars()) throw DomainError("derivative index out of range");
  if (e.is_polynomial()) return RatFunc(e.num().derivative(var) * (Rational(1) / e.den().constant_term()));
  Poly n = e.num().derivative(var) * e.den() - e.num() * e.den().derivative(var);
  return RatFunc(std::move(n), e.den() * e.den());
}

Rational eval(const RatFunc& e, std::span<const Rational> point) {
  Rational d = e.den().eval(point);
  if (d == 0) throw PoleError("denominator vanishes at evaluation point");
  return e.num().eval(point) / d;
}

namespace {

RatFunc compose_poly(const Poly& p, std::span<const RatFunc> values, std::size_t target_vars) {
  // cache powers per variable
  std::vector<std::vector<RatFunc>> powers(values.size());
  auto power = [&](std::size_t i, unsigned e) -> const RatFunc& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target_vars, Rational(1));
    while (cache.size() <= e) cache.push_back(cache.back() * values[i]);
    return cache[e];
  };
  RatFunc sum(target_vars);
  for (const auto& [m, c] : p.terms()) {
    RatFunc t(target_vars, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= power(i, m[i]);
    sum += t;
  }
  return sum;
}

}  // namespace

RatFunc compose(const RatFunc& e, std::span<const RatFunc> values) {
  if (values.size() != e.nvars()) throw DomainError("substitution has wrong arity");
  std::size_t target = values.empty() ? 0 : values.front().nvars();
  for (const auto& v : values)
    if (v.nvars() != target) throw DomainError("substitution values live in different charts");
  RatFunc n = compose_poly(e.num(), values, target);
  if (e.is_polynomial()) return n / RatFunc(target, e.den().constant_term());
  RatFunc d = compose_poly(e.den(), values, target);
  if (d.is_zero()) throw PoleError("denominator vanishes identically after substitution");
  return n / d;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  RatFunc parse() {
    RatFunc e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc e = term();
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  RatFunc term() {
    RatFunc e = factor();
    for (;;) {
      if (accept('*')) {
        e *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_ - 1;
        RatFunc d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  RatFunc factor() {
    if (accept('-')) return -factor();
    RatFunc a = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected nonnegative integer exponent", start);
      unsigned long e = std::stoul(digits);
      a = a.pow(static_cast<unsigned>(e));
    }
    return a;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  RatFunc atom() {
    skip_ws();
    const std::size_t n = chart_.dim();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RatFunc(n, Rational(read_digits()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view id = text_.substr(start, pos_ - start);
      auto idx = chart_.index_of(id);
      if (!idx) throw ParseError("unknown identifier '" + std::string(id) + "'", start);
      return RatFunc::variable(n, *idx);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expr(std::string_view text, const Chart& chart) { return Parser(text, chart).parse(); }

Rational parse_rational(std::string_view text) {
  static const Chart empty;
  RatFunc e = parse_expr(text, empty);
  return e.constant_value();
}

std::vector<Rational> parse_point(std::string_view comma_separated) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t end = comma_separated.find(',', start);
    if (end == std::string_view::npos) end = comma_separated.size();
    out.push_back(parse_rational(comma_separated.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::string monomial_text(const Monomial& m, const Chart& chart) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += chart.name(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const Poly& p, const Chart& chart) {
  if (p.nvars() != chart.dim()) throw DomainError("chart does not match polynomial");
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) s += '-';
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_text(m, chart);
    if (mono.empty()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += mono;
    }
  }
  return s;
}

std::string to_string(const RatFunc& e, const Chart& chart) {
  if (e.is_polynomial()) return to_string(e.num(), chart);
  std::string n = to_string(e.num(), chart);
  std::string d = to_string(e.den(), chart);
  if (e.num().term_count() > 1 || n.find('/') != std::string::npos) n = "(" + n + ")";
  return n + "/(" + d + ")";
}

void PrintTo(const RatFunc& e, std::ostream* os) { *os << to_string(e, standard_chart(e.nvars())); }

}  // namespace poisskit
