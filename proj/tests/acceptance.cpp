// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes inside its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "poisskit/dirac.hpp"
#include "poisskit/fixtures.hpp"
#include "poisskit/flow.hpp"
#include "poisskit/liealg.hpp"
#include "poisskit/poisson.hpp"
#include "support.hpp"

namespace poisskit {
namespace {

using testing::bivector;
using testing::E;
using testing::one_form;
using testing::Q;
using testing::QM;
using testing::Random;
using testing::vf;

// Collects the first few failures of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::size_t count() const { return count_; }
  std::string summary() const {
    std::string s = std::to_string(failed_) + " of " + std::to_string(count_) + " checks failed";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

int parity_sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

IndexTuple all_indices(std::size_t n) {
  IndexTuple t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(i);
  return t;
}

FlowConfig config(double dt, double t_max) {
  FlowConfig c;
  c.dt = dt;
  c.t_max = t_max;
  return c;
}

double sup_dist(const DVector& a, const DVector& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

template <class F>
void expect_throw_containing(Check& ck, F&& f, const std::string& needle, const std::string& what) {
  try {
    f();
    ck.expect(false, what + ": accepted");
  } catch (const Error& e) {
    ck.expect(std::string(e.what()).find(needle) != std::string::npos, what + ": message '" + e.what() + "'");
  }
}

// ---- 1 ----------------------------------------------------------------------

void golden(Check& ck) {
  MultiVec so3 = fixture("so3").pi;
  ck.expect(is_poisson(so3).ok, "so3 is not Poisson");
  ck.expect(casimir_check(so3, E("x^2 + y^2 + z^2", so3.chart_ptr())), "so3 Casimir");

  MultiVec sl2 = fixture("sl2r").pi;
  ck.expect(is_poisson(sl2).ok, "sl2r is not Poisson");
  ck.expect(casimir_check(sl2, E("x^2 + y^2 - z^2", sl2.chart_ptr())), "sl2r Casimir");

  // every coefficient is ±x or ±y, so π vanishes exactly on x = y = 0
  MultiVec book = fixture("book").pi;
  auto bc = book.chart_ptr();
  bool only_xy = !book.is_zero();
  for (const auto& [idx, c] : book.coeffs())
    only_xy = only_xy && (c == E("x", bc) || c == E("-x", bc) || c == E("y", bc) || c == E("-y", bc));
  ck.expect(only_xy, "book coefficients are not ±x, ±y");
  for (long z : {-3, 0, 2}) ck.expect(rank_at(book, Q({0, 0, z})) == 0, "book rank off zero on the z-axis");
  for (auto p : {Q({1, 0, 0}), Q({0, -2, 5}), Q({3, 1, -1})}) ck.expect(rank_at(book, p) == 2, "book rank drop off the axis");

  MultiVec s3 = fixture("s3_standard").pi;
  ck.expect(is_poisson(s3).ok, "S3 bracket is not Poisson");
  auto c4 = s3.chart_ptr();
  ConstraintSystem sphere{PoissonStructure(s3), {E("x^2 + y^2 + z^2 + w^2 - 1", c4)}, Q({0}),
                          rational_sphere_points(4, 30), std::nullopt};
  auto k = classify_submanifold(sphere);
  ck.expect(k.poisson && k.samples_checked >= 25, "3-sphere is not a Poisson submanifold at >= 25 points");

  MultiVec plane = fixture("r2_xdxdy").pi;
  auto pc = plane.chart_ptr();
  ck.expect(modular_vf(plane, DiffForm::basis(pc, {0, 1})) == vf(pc, {"0", "-1"}), "modular field of x dx^dy");

  for (const auto& g : {LieAlgebra::so3(), LieAlgebra::sl2r(), LieAlgebra::book(), LieAlgebra::heisenberg()}) {
    PoissonStructure lp = lie_poisson(g);
    auto c = lp.chart_ptr();
    std::vector<RatFunc> chi;
    for (const auto& v : modular_character(g)) chi.emplace_back(g.dim(), v);
    ck.expect(modular_vf(lp.pi(), DiffForm::basis(c, all_indices(g.dim()))) == MultiVec::from_components(c, chi),
              "modular field differs from the modular character");
  }
}

// ---- 2 ----------------------------------------------------------------------

void schouten_suite(Check& ck) {
  Random r(2024);
  std::vector<ChartPtr> charts = {make_chart({"x"}), make_chart({"x", "y"}), make_chart({"x", "y", "z"})};
  std::size_t multivectors = 0;
  for (const auto& c : charts) {
    auto sgn = [&](std::size_t a, std::size_t b) { return RatFunc(c->dim(), Rational(parity_sign((a + 1) * (b + 1)))); };
    for (int trial = 0; trial < 8; ++trial)
      for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t l = 0; l <= 2; ++l)
          for (std::size_t m = 0; m <= 2; ++m) {
            MultiVec x = r.multivec(c, k), y = r.multivec(c, l), z = r.multivec(c, m);
            multivectors += 3;
            ck.expect(schouten(x, y) == schouten(y, x) * (-sgn(k, l)), "graded antisymmetry");
            MultiVec jac = schouten(x, schouten(y, z)) * sgn(k, m);
            jac += schouten(y, schouten(z, x)) * sgn(l, k);
            jac += schouten(z, schouten(x, y)) * sgn(m, l);
            ck.expect(jac.is_zero(), "graded Jacobi");
            MultiVec rhs = wedge(schouten(x, y), z);
            rhs += wedge(y, schouten(x, z)) * RatFunc(c->dim(), Rational(parity_sign((k + 1) * l)));
            ck.expect(schouten(x, wedge(y, z)) == rhs, "Leibniz");
          }
  }
  ck.expect(multivectors >= 200, "fewer than 200 multivectors");

  auto c3 = charts[2];
  for (int trial = 0; trial < 20; ++trial) {
    MultiVec b = r.multivec(c3, 2);
    RatFunc f(r.poly(3, 2)), g(r.poly(3, 2)), h(r.poly(3, 2));
    std::vector<DiffForm> forms = {differential(c3, f), differential(c3, g), differential(c3, h)};
    ck.expect(pair(jacobiator_trivector(b), forms) == jacobiator(b, f, g, h), "jacobiator contraction");
  }
  std::vector<MultiVec> zoo;
  for (const auto& name : fixture_names()) zoo.push_back(fixture(name).pi);
  for (const auto& pi : zoo) {
    auto c = pi.chart_ptr();
    for (int trial = 0; trial < 3; ++trial) {
      RatFunc f(r.poly(c->dim(), 2)), g(r.poly(c->dim(), 2));
      ck.expect(schouten(hamiltonian_vf(pi, f), hamiltonian_vf(pi, g)) == hamiltonian_vf(pi, bracket(pi, f, g)),
                "[X_f, X_g] = X_{f,g}");
      ck.expect(schouten(pi, MultiVec::scalar(c, f)) == -hamiltonian_vf(pi, f), "[pi, f] = -X_f");
    }
  }
}

// ---- 3 ----------------------------------------------------------------------

void cohomology_suite(Check& ck) {
  PoissonStructure pi(fixture("r2_xdxdy").pi);
  auto c = pi.chart_ptr();
  std::size_t dims[3] = {0, 0, 0};
  std::vector<MultiVec> reps1;
  for (std::size_t k = 0; k <= 2; ++k)
    for (unsigned d = 0; d <= 6; ++d) {
      auto rep = cohomology(pi, k, d);
      dims[k] += rep.dim_h;
      if (k == 1) reps1.insert(reps1.end(), rep.representatives.begin(), rep.representatives.end());
    }
  ck.expect(dims[0] == 1, "dim H^0 = " + std::to_string(dims[0]));
  ck.expect(dims[1] == 1, "dim H^1 = " + std::to_string(dims[1]));
  ck.expect(dims[2] == 0, "dim H^2 = " + std::to_string(dims[2]));
  ck.expect(reps1.size() == 1 && reps1[0] == vf(c, {"0", "1"}), "H^1 representative is not d/dy");
}

// ---- 4 ----------------------------------------------------------------------

QMatrix random_antisymmetric(Random& r, std::size_t n) {
  QMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = r.rational();
      m(j, i) = -m(i, j);
    }
  return m;
}

void dirac_suite(Check& ck) {
  MultiVec plane = fixture("r2_xdxdy").pi;
  QMatrix incl = QM({{1}, {0}});
  for (long x : {1, -1})
    ck.expect(backward_image(from_bivector_at(plane, Q({x, 0})), incl) == LinearLagrangian::tangent(1),
              "backward image at x = " + std::to_string(x));
  ck.expect(backward_image(from_bivector_at(plane, Q({0, 0})), incl) == LinearLagrangian::cotangent(1),
            "backward image at x = 0");

  auto c3 = make_chart({"x", "y", "z"});
  DiracSectionFamily fam;
  fam.chart = c3;
  fam.sections = {{vf(c3, {"0", "1", "0"}), one_form(c3, {"z", "0", "0"})},
                  {vf(c3, {"1", "0", "0"}), one_form(c3, {"0", "-z", "0"})},
                  {MultiVec(c3, 1), one_form(c3, {"0", "0", "1"})}};
  fam.samples = {Q({0, 0, 0}), Q({1, 2, 3})};
  bool vanishes = true;
  for (const auto& [idx, v] : courant_tensor(fam)) vanishes = vanishes && v.is_zero();
  ck.expect(vanishes, "Courant tensor of the R^3 family");

  Random r(404);
  std::size_t pairs = 0;
  for (const auto& c : {make_chart({"x"}), make_chart({"x", "y"}), c3})
    for (int trial = 0; trial < 40; ++trial) {
      auto sec = [&] { return Section{r.multivec(c, 1, 2), r.form(c, 1, 2)}; };
      Section e1 = sec(), e2 = sec(), e3 = sec();
      Section sym = courant_dorfman(e1, e2) + courant_dorfman(e2, e1);
      ck.expect(sym.x.is_zero() && sym.alpha == differential(c, pairing(e1, e2)), "Courant property (i)");
      ck.expect(courant_dorfman(e1, courant_dorfman(e2, e3)) ==
                    courant_dorfman(courant_dorfman(e1, e2), e3) + courant_dorfman(e2, courant_dorfman(e1, e3)),
                "Courant property (ii)");
      RatFunc f(r.poly(c->dim(), 2));
      ck.expect(courant_dorfman(e1, f * e2) == pair(differential(c, f), e1.x) * e2 + f * courant_dorfman(e1, e2),
                "Courant property (iii)");
      ck.expect(pair(differential(c, pairing(e2, e3)), e1.x) ==
                    pairing(courant_dorfman(e1, e2), e3) + pairing(e2, courant_dorfman(e1, e3)),
                "Courant property (iv)");
      ++pairs;
    }
  ck.expect(pairs >= 100, "fewer than 100 pairs");

  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(r.integer(1, 4));
    LinearLagrangian l = graph_of_bivector(random_antisymmetric(r, n));
    QMatrix b1 = random_antisymmetric(r, n), b2 = random_antisymmetric(r, n);
    ck.expect(gauge_at(gauge_at(l, b1), b2) == gauge_at(l, b1 + b2), "gauge group law");
    ck.expect(gauge_at(gauge_at(l, b1), -b1) == l, "gauge inverse");
  }

  MultiVec can = canonical_bivector(2);
  auto c = can.chart_ptr();
  ChartPtr n = canonical_bivector(1).chart_ptr();
  ConstraintSystem cs{PoissonStructure(can), {E("q2", c), E("p2", c)}, Q({0, 0}), {}, std::nullopt};
  cs.parametrization = PolyMap(n, c, {E("q", n), E("0", n), E("p", n), E("0", n)});
  DiracBracket db(cs);
  MultiVec target = canonical_bivector(1);
  // ambient functions and their restrictions to N in the chart (q, p)
  struct Case {
    const char *f, *g, *fn, *gn;
  };
  for (const auto& k : {Case{"q1", "p1", "q", "p"}, Case{"q1^2 + p2", "p1*q1", "q^2", "p*q"},
                        Case{"p1^3 + q1*q2", "q1*p1^2 - p2^2", "p^3", "q*p^2"}})
    ck.expect(db.restricted(E(k.f, c), E(k.g, c)) == bracket(target, E(k.fn, n), E(k.gn, n)),
              std::string("Dirac bracket {") + k.f + ", " + k.g + "}");
  ck.expect(db.restricted(E("q1", c), E("q2", c)).is_zero() && db.restricted(E("p1", c), E("p2", c)).is_zero(),
            "constraints are not Casimirs of the Dirac bracket");
}

// ---- 5 ----------------------------------------------------------------------

void lie_suite(Check& ck) {
  auto so3 = std::make_shared<const LieAlgebra>(LieAlgebra::so3());
  auto rep = cyb_check(*so3, AlgMultiVec::basis(so3, {1, 2}, 2));
  ck.expect(rep.kind == CybClass::coboundary, "r = 2 e2^e3 is " + to_string(rep.kind));
  bool proportional = rep.square.degree() == 3 && rep.square.coeffs().size() == 1 && !rep.square.is_zero();
  ck.expect(proportional, "[r,r] = " + to_string(rep.square));

  auto b = bialgebra_check(*so3, Cobracket::dual_to(so3, LieAlgebra::book()));
  ck.expect(b.dual_jacobi, "so3 with the book cobracket: dual Jacobi");
  ck.expect(b.compat, "so3 with the book cobracket: compatibility");

  struct Hom {
    LieAlgebra g, h;
    QMatrix t;
  };
  LieAlgebra diamond = LieAlgebra::from_triples(4, {{3, 0, 0, 1}, {3, 1, 1, -1}, {0, 1, 2, 1}});
  std::vector<Hom> homs = {
      {LieAlgebra::so3(), LieAlgebra::so3(), QM({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})},
      {LieAlgebra::so3(), LieAlgebra::so3(), QMatrix::identity(3, Rational(0))},
      {LieAlgebra::heisenberg(), LieAlgebra::abelian(2), QM({{1, 0, 0}, {0, 1, 0}})},
      {diamond, LieAlgebra::abelian(1), QM({{0, 0, 0, 1}})},
      {LieAlgebra::heisenberg(), diamond, QM({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}})},
  };
  for (const auto& h : homs) {
    ck.expect(is_lie_hom(h.g, h.h, h.t), "not a Lie homomorphism");
    ChartPtr gc = dual_chart(h.g.dim()), hc = dual_chart(h.h.dim());
    auto pm = is_poisson_map(dual_map(h.t, hc, gc), lie_poisson(h.h, hc).pi(), lie_poisson(h.g, gc).pi());
    ck.expect(pm.ok && pm.symbolic, "dual map is not a Poisson map: " + pm.detail);
  }
}

// ---- 6 ----------------------------------------------------------------------

void flow_suite(Check& ck) {
  char buf[96];
  MultiVec so3 = fixture("so3").pi;
  auto c = so3.chart_ptr();
  const double norm = std::sqrt(1.02);
  auto tr = integrate_hamiltonian(so3, E("x^2/2 + y^2/4 + z^2/6", c), {1 / norm, 0.1 / norm, 0.1 / norm},
                                  config(1e-3, 10), {E("x^2 + y^2 + z^2", c)});
  std::snprintf(buf, sizeof buf, "rigid body Casimir drift %.3e", tr.casimir_drifts.at(0));
  ck.expect(tr.casimir_drifts.at(0) < 1e-8, buf);

  std::vector<RatFunc> gens = {E("x", c), E("y", c), E("z", c)};
  std::vector<Segment> sched = {{0, 0.7}, {1, 1.3}, {2, -0.4}, {0, 2.0}, {1, -0.9}, {2, 1.1}};
  auto leaf = leaf_trace(so3, gens, {1, 0, 0}, sched, config(1e-3, 1));
  double worst = 0;
  for (const auto& p : leaf.points) worst = std::max(worst, std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1));
  std::snprintf(buf, sizeof buf, "leaf trace leaves the sphere by %.3e", worst);
  ck.expect(worst < 1e-6 && sup_dist(leaf.points.front(), leaf.points.back()) > 0.1, buf);

  MultiVec can = canonical_bivector(1);
  auto h = E("(p^2 + q^2)/2", can.chart_ptr());
  auto err = [&](double dt) {
    auto t = integrate_hamiltonian(can, h, {1, 0.5}, config(dt, 10));
    return sup_dist(t.points.back(), {std::cos(10.0) + 0.5 * std::sin(10.0), 0.5 * std::cos(10.0) - std::sin(10.0)});
  };
  const double ratio = err(0.1) / err(0.05);
  std::snprintf(buf, sizeof buf, "RK4 convergence factor %.3f", ratio);
  ck.expect(std::abs(ratio - 16) <= 2, buf);

  auto c2 = make_chart({"x", "y"});
  std::vector<DVector> square;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) square.push_back({0.1 + 0.25 * i, 0.1 + 0.25 * j});
  auto mos = moser_verify(bivector(c2, {{0, 1, "1"}}), one_form(c2, {"0", "x^2"}), {0.25, 0.5, 1.0}, square,
                          config(1e-3, 1));
  std::snprintf(buf, sizeof buf, "Moser deviation %.3e", mos.max_deviation);
  ck.expect(mos.max_deviation < 1e-6, buf);

  auto zero = spray_realization(MultiVec(c2, 2), {{0.3, 0.1, 2, -1}, {-1, 4, 0.5, 0.25}}, 8, config(1e-3, 1));
  DMatrix wcan(4, 4);
  wcan(0, 2) = wcan(1, 3) = 1;
  wcan(2, 0) = wcan(3, 1) = -1;
  for (const auto& s : zero) {
    std::snprintf(buf, sizeof buf, "zero-structure spray differs from the canonical form by %.3e",
                  max_abs_diff(s.omega, wcan));
    ck.expect(max_abs_diff(s.omega, wcan) < 1e-8, buf);
  }

  std::vector<DVector> samples = {{1, 0, 0, 0.05, -0.02, 0.03}, {1, 0, 0, 0.1, 0.0, -0.1}, {0.5, 0.5, 0.2, 0.02, 0.04, 0}};
  auto rs = spray_realization(so3, samples, 64, config(1e-3, 1));
  const double dev = realization_check(rs, so3);
  std::snprintf(buf, sizeof buf, "so3 realization deviation %.3e", dev);
  ck.expect(dev < 1e-5, buf);
}

// ---- 7 ----------------------------------------------------------------------

void negative_paths(Check& ck) {
  expect_throw_containing(
      ck, [] { LieAlgebra::from_triples(3, {{0, 1, 1, 1}, {0, 2, 2, 1}, {1, 2, 0, 1}}); }, "(i,j,k,m) = ",
      "broken structure constants");

  MultiVec so3 = fixture("so3").pi;
  auto c = so3.chart_ptr();
  expect_throw_containing(
      ck, [&] { gauge_transform(so3, DiffForm::basis(c, {0, 1}, E("z", c))); }, "not closed", "non-closed B");

  ConstraintSystem cs{PoissonStructure(so3), {E("x", c)}, Q({0}), {Q({0, 1, 0}), Q({0, 0, 1})}, std::nullopt};
  expect_throw_containing(
      ck, [&] { DiracBracket db(cs); }, "c_upper = [0]", "non-cosymplectic constraint");
}

struct Criterion {
  const char* label;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace poisskit

int main() {
  using namespace poisskit;
  const std::vector<Criterion> criteria = {
      {"golden answers", 10, golden},
      {"Schouten and bracket properties", 60, schouten_suite},
      {"cohomology of x dx^dy", 10, cohomology_suite},
      {"Dirac structures and constraints", 60, dirac_suite},
      {"Lie algebras and bialgebras", 10, lie_suite},
      {"numeric flows", 120, flow_suite},
      {"negative paths", 10, negative_paths},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < cr.budget_s;
    const bool ok = ck.ok() && in_time;
    if (!ok) ++failed;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << cr.label << " (" << ck.count() << " checks, ";
    line.precision(3);
    line << std::fixed << secs << " s of " << cr.budget_s << " s)";
    if (!ck.ok()) line << ": " << ck.summary();
    if (!in_time) line << ": over the time budget";
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
