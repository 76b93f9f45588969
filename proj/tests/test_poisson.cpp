#include "poisskit/poisson.hpp"

#include <gtest/gtest.h>

#include <map>

#include "poisskit/fixtures.hpp"
#include "poisskit/liealg.hpp"
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

MultiVec so3() { return fixture("so3").pi; }

TEST(Fixtures, ZooIsPoisson) {
  for (const auto& name : fixture_names()) {
    auto f = fixture(name);
    EXPECT_TRUE(is_poisson(f.pi).ok) << name;
  }
  EXPECT_THROW(fixture("nope"), DomainError);
  EXPECT_TRUE(is_poisson(canonical_bivector(3)).ok);
}

TEST(Bracket, Examples) {
  MultiVec can = canonical_bivector(1);
  auto c = can.chart_ptr();
  EXPECT_EQ(bracket(can, E("p", c), E("q", c)), E("1", c));
  RatFunc f = E("q^2*p + 3*p", c);
  EXPECT_TRUE(bracket(can, f, f).is_zero());
  MultiVec s = so3();
  auto sc = s.chart_ptr();
  EXPECT_EQ(bracket(s, E("x", sc), E("y", sc)), E("z", sc));
  EXPECT_EQ(bracket(s, E("y", sc), E("z", sc)), E("x", sc));
  EXPECT_EQ(bracket(s, E("z", sc), E("x", sc)), E("y", sc));
}

TEST(Bracket, ChartMismatch) {
  MultiVec s = so3();
  // expressions carry only their variable count
  ChartPtr other = make_chart({"a", "b"});
  EXPECT_THROW(bracket(s, E("a", other), E("b", other)), DomainError);
}

TEST(HamiltonianVf, Examples) {
  MultiVec can = canonical_bivector(1);
  auto c = can.chart_ptr();
  EXPECT_EQ(hamiltonian_vf(can, E("p", c)), vf(c, {"1", "0"}));
  EXPECT_TRUE(hamiltonian_vf(can, E("7/3", c)).is_zero());
  MultiVec s = so3();
  EXPECT_TRUE(hamiltonian_vf(s, E("(x^2+y^2+z^2)/2", s.chart_ptr())).is_zero());
}

TEST(SharpAt, Examples) {
  MultiVec zero(make_chart({"x", "y", "z"}), 2);
  EXPECT_EQ(sharp_at(zero, Q({1, 2, 3}), Q({1, 1, 1})), Q({0, 0, 0}));
  MultiVec can = canonical_bivector(1);
  EXPECT_EQ(sharp_at(can, Q({5, -2}), Q({0, 1})), Q({1, 0}));
  // P(0,0,1) = [[0,1,0],[-1,0,0],[0,0,0]]; row x of P is the image of dx.
  EXPECT_EQ(sharp_at(so3(), Q({0, 0, 1}), Q({1, 0, 0})), Q({0, 1, 0}));
  auto c = make_chart({"x", "y"});
  MultiVec polar = bivector(c, {{0, 1, "1/x"}});
  EXPECT_THROW(sharp_at(polar, Q({0, 1}), Q({1, 0})), PoleError);
}

TEST(IsPoisson, ConstantBivectorsAreAlwaysPoisson) {
  Random r(21);
  auto chart = make_chart({"a", "b", "c", "d", "e"});
  for (int trial = 0; trial < 20; ++trial) {
    MultiVec pi(chart, 2);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) pi.add({i, j}, RatFunc(5, r.rational()));
    EXPECT_TRUE(is_poisson(pi).ok);
  }
}

TEST(IsPoisson, EveryPlanarBivector) {
  Random r(22);
  auto chart = make_chart({"x", "y"});
  for (int trial = 0; trial < 30; ++trial) {
    MultiVec pi = r.multivec(chart, 2, 4);
    EXPECT_TRUE(is_poisson(pi).ok) << to_string(pi);
  }
}

TEST(IsPoisson, StandardSphereStructure) {
  auto check = is_poisson(fixture("s3_standard").pi);
  EXPECT_TRUE(check.ok);
  EXPECT_TRUE(check.square.is_zero());
}

TEST(IsPoisson, FailureCarriesTrivector) {
  auto c = make_chart({"x", "y", "z"});
  MultiVec b = bivector(c, {{0, 1, "x"}, {1, 2, "y"}, {2, 0, "z"}});
  auto check = is_poisson(b);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.square.degree(), 3u);
  EXPECT_EQ(check.square.coeff({0, 1, 2}), E("2*x + 2*y + 2*z", c));
  EXPECT_THROW(PoissonStructure{b}, VerificationError);
  EXPECT_FALSE(PoissonStructure::unchecked(b).verified());
}

TEST(Jacobiator, NonPoissonExample) {
  auto c = make_chart({"x", "y", "z"});
  MultiVec b = bivector(c, {{0, 1, "x"}, {1, 2, "y"}, {2, 0, "z"}});
  // {x,{y,z}} + {z,{x,y}} + {y,{z,x}} = {x,y} + {z,x} + {y,z}
  const RatFunc expected = E("x + y + z", c);
  EXPECT_EQ(jacobiator(b, E("x", c), E("y", c), E("z", c)), expected);
  MultiVec t = jacobiator_trivector(b);
  EXPECT_EQ(t.coeff({0, 1, 2}), expected);
  EXPECT_TRUE(jacobiator(b, E("x", c), E("y^2", c), E("5", c)).is_zero());
}

TEST(Jacobiator, TrivectorContractsToScalar) {
  Random r(23);
  auto c = make_chart({"x", "y", "z"});
  for (int trial = 0; trial < 15; ++trial) {
    MultiVec b = r.multivec(c, 2, 2);
    RatFunc f(r.poly(3, 2)), g(r.poly(3, 2)), h(r.poly(3, 2));
    std::vector<DiffForm> forms = {differential(c, f), differential(c, g), differential(c, h)};
    EXPECT_EQ(pair(jacobiator_trivector(b), forms), jacobiator(b, f, g, h));
  }
}

TEST(RankAt, Examples) {
  EXPECT_EQ(rank_at(canonical_bivector(1), Q({3, 4})), 2u);
  EXPECT_EQ(rank_at(canonical_bivector(2), Q({0, 0, 0, 0})), 4u);
  EXPECT_EQ(rank_at(so3(), Q({0, 0, 0})), 0u);
  EXPECT_EQ(rank_at(so3(), Q({1, 0, 0})), 2u);
  EXPECT_EQ(rank_at(fixture("book").pi, Q({0, 0, 5})), 0u);
  EXPECT_EQ(rank_at(fixture("book").pi, Q({1, 0, 5})), 2u);
}

TEST(CharFiber, ZeroStructure) {
  MultiVec zero(make_chart({"x", "y"}), 2);
  auto fib = char_fiber(zero, Q({1, 1}));
  EXPECT_TRUE(fib.r_basis.empty());
  EXPECT_EQ(fib.omega.rows(), 0u);
}

TEST(CharFiber, Canonical) {
  MultiVec can = canonical_bivector(1);
  auto fib = char_fiber(can, Q({0, 0}));
  ASSERT_EQ(fib.r_basis.size(), 2u);
  // R is everything; Ω inverts the evaluated matrix up to the transpose.
  QMatrix p = evaluate_bivector(can, Q({0, 0}));
  EXPECT_EQ(reconstruct(fib, 2), p);
  EXPECT_EQ(fib.omega, QM({{0, 1}, {-1, 0}}));
}

TEST(CharFiber, So3AtNorthPole) {
  auto fib = char_fiber(so3(), Q({0, 0, 1}));
  ASSERT_EQ(fib.r_basis.size(), 2u);
  // image of dx is ∂y, image of dy is -∂x; Ω(u_a,u_b) = P(i_b, i_a)
  EXPECT_EQ(fib.r_basis[0], Q({0, 1, 0}));
  EXPECT_EQ(fib.r_basis[1], Q({-1, 0, 0}));
  EXPECT_EQ(fib.omega, QM({{0, -1}, {1, 0}}));
  EXPECT_EQ(reconstruct(fib, 3), evaluate_bivector(so3(), Q({0, 0, 1})));
}

TEST(CharFiber, ReconstructionProperty) {
  Random r(24);
  for (const auto& name : fixture_names()) {
    MultiVec pi = fixture(name).pi;
    for (int trial = 0; trial < 5; ++trial) {
      QVector x;
      for (std::size_t i = 0; i < pi.dim(); ++i) x.push_back(r.rational());
      auto fib = char_fiber(pi, x);
      EXPECT_EQ(fib.omega.rows(), rank_at(pi, x));
      EXPECT_EQ(fib.omega.transpose(), -fib.omega);
      EXPECT_EQ(reconstruct(fib, pi.dim()), evaluate_bivector(pi, x)) << name;
    }
  }
}

TEST(Darboux, Canonical) {
  auto db = darboux_basis_at(canonical_bivector(1), Q({0, 0}));
  EXPECT_EQ(db.half_rank, 1u);
  EXPECT_EQ(db.basis, QM({{0, 1}, {1, 0}}));
  EXPECT_EQ(db.normal_form, QM({{0, 1}, {-1, 0}}));
}

TEST(Darboux, Zero) {
  MultiVec zero(make_chart({"x", "y", "z"}), 2);
  auto db = darboux_basis_at(zero, Q({1, 2, 3}));
  EXPECT_EQ(db.half_rank, 0u);
  EXPECT_TRUE(db.normal_form.is_zero());
}

TEST(Darboux, So3AtNorthPole) {
  auto db = darboux_basis_at(so3(), Q({0, 0, 1}));
  EXPECT_EQ(db.half_rank, 1u);
  EXPECT_EQ(db.basis, QM({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(db.normal_form, QM({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}));
}

QMatrix standard_block(std::size_t n, std::size_t k) {
  QMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    m(i, k + i) = 1;
    m(k + i, i) = -1;
  }
  return m;
}

TEST(Darboux, NormalFormProperty) {
  Random r(25);
  std::vector<MultiVec> zoo;
  for (const auto& name : fixture_names()) zoo.push_back(fixture(name).pi);
  zoo.push_back(canonical_bivector(2));
  for (const auto& pi : zoo) {
    for (int trial = 0; trial < 5; ++trial) {
      QVector x;
      for (std::size_t i = 0; i < pi.dim(); ++i) x.push_back(r.rational());
      auto db = darboux_basis_at(pi, x);
      const std::size_t n = pi.dim();
      EXPECT_EQ(2 * db.half_rank, rank_at(pi, x));
      EXPECT_EQ(db.normal_form, standard_block(n, db.half_rank));
      // matrix of π in the new basis, computed independently
      QMatrix p = evaluate_bivector(pi, x);
      auto inv = inverse(db.basis);
      ASSERT_TRUE(inv);
      EXPECT_EQ((*inv) * p * inv->transpose(), db.normal_form);
    }
  }
}

TEST(Casimir, Examples) {
  MultiVec sl = fixture("sl2r").pi;
  EXPECT_TRUE(casimir_check(sl, E("x^2 + y^2 - z^2", sl.chart_ptr())));
  EXPECT_FALSE(casimir_check(sl, E("x^2 + y^2 + z^2", sl.chart_ptr())));
  MultiVec can = canonical_bivector(1);
  EXPECT_FALSE(casimir_check(can, E("q", can.chart_ptr())));
  auto c = make_chart({"x", "y"});
  EXPECT_TRUE(casimir_check(MultiVec(c, 2), E("x^3*y - 4", c)));
  MultiVec s = so3();
  EXPECT_TRUE(casimir_check(s, E("x^2 + y^2 + z^2", s.chart_ptr())));
}

TEST(Modular, PlaneExample) {
  MultiVec pi = fixture("r2_xdxdy").pi;
  auto c = pi.chart_ptr();
  DiffForm vol = DiffForm::basis(c, {0, 1});
  EXPECT_EQ(modular_vf(pi, vol), vf(c, {"0", "-1"}));
  EXPECT_THROW(modular_vf(pi, DiffForm(c, 2)), DomainError);
  EXPECT_THROW(modular_vf(pi, DiffForm::basis(c, {0})), DomainError);
}

TEST(Modular, SymplecticIsUnimodular) {
  for (std::size_t n : {1u, 2u}) {
    MultiVec can = canonical_bivector(n);
    IndexTuple all;
    for (std::size_t i = 0; i < 2 * n; ++i) all.push_back(i);
    EXPECT_TRUE(modular_vf(can, DiffForm::basis(can.chart_ptr(), all)).is_zero());
    auto cert = modular_class_at_degree(can, DiffForm::basis(can.chart_ptr(), all), 2);
    EXPECT_TRUE(cert.trivial_at_degree());
  }
}

TEST(Modular, PlaneClassNotTrivialAtDegree) {
  MultiVec pi = fixture("r2_xdxdy").pi;
  auto cert = modular_class_at_degree(pi, DiffForm::basis(pi.chart_ptr(), {0, 1}), 4);
  EXPECT_FALSE(cert.trivial_at_degree());
  EXPECT_EQ(cert.modular_field, vf(pi.chart_ptr(), {"0", "-1"}));
}

TEST(Modular, ChangeOfVolume) {
  Random r(26);
  std::vector<MultiVec> zoo = {so3(), fixture("book").pi, fixture("r2_xdxdy").pi, fixture("s2_bruhat").pi};
  for (const auto& pi : zoo) {
    auto c = pi.chart_ptr();
    const std::size_t n = pi.dim();
    IndexTuple all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(i);
    DiffForm eta = DiffForm::basis(c, all);
    for (int trial = 0; trial < 3; ++trial) {
      // positive: 1 + sum of squares
      RatFunc f(n, Rational(1));
      for (std::size_t i = 0; i < n; ++i) {
        RatFunc lin(r.poly(n, 1, 2));
        f += lin * lin;
      }
      DiffForm eta2 = eta * f;
      MultiVec lhs = modular_vf(pi, eta) - modular_vf(pi, eta2);
      MultiVec rhs = hamiltonian_vf(pi, f) * (RatFunc(n, Rational(1)) / f);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Modular, FieldIsPoisson) {
  std::vector<MultiVec> zoo;
  for (const auto& name : fixture_names()) zoo.push_back(fixture(name).pi);
  for (const auto& pi : zoo) {
    IndexTuple all;
    for (std::size_t i = 0; i < pi.dim(); ++i) all.push_back(i);
    MultiVec x = modular_vf(pi, DiffForm::basis(pi.chart_ptr(), all));
    EXPECT_TRUE(d_pi(PoissonStructure(pi), x).is_zero());
  }
}

TEST(DPi, Examples) {
  PoissonStructure s(so3());
  auto c = s.chart_ptr();
  RatFunc f = E("x*y + z^2", c);
  EXPECT_EQ(d_pi(s, MultiVec::scalar(c, f)), -hamiltonian_vf(s.pi(), f));
  EXPECT_TRUE(d_pi(s, s.pi()).is_zero());
  PoissonStructure plane(fixture("r2_xdxdy").pi);
  EXPECT_TRUE(d_pi(plane, vf(plane.chart_ptr(), {"0", "1"})).is_zero());
  EXPECT_FALSE(d_pi(plane, vf(plane.chart_ptr(), {"1", "0"})).is_zero());
}

TEST(DPi, RefusesUnverified) {
  auto c = make_chart({"x", "y", "z"});
  MultiVec b = bivector(c, {{0, 1, "x"}, {1, 2, "y"}, {2, 0, "z"}});
  EXPECT_THROW(d_pi(PoissonStructure::unchecked(b), vf(c, {"1", "0", "0"})), DomainError);
}

TEST(DPi, SquaresToZero) {
  Random r(27);
  std::vector<PoissonStructure> zoo = {PoissonStructure(so3()), PoissonStructure(fixture("s3_standard").pi),
                                       PoissonStructure(fixture("book").pi)};
  for (const auto& ps : zoo)
    for (std::size_t k = 0; k <= 2; ++k)
      for (int trial = 0; trial < 4; ++trial) {
        MultiVec x = r.multivec(ps.chart_ptr(), k, 2);
        EXPECT_TRUE(d_pi(ps, d_pi(ps, x)).is_zero());
      }
}

TEST(Cohomology, PlaneExampleTruncated) {
  PoissonStructure pi(fixture("r2_xdxdy").pi);
  std::size_t h0 = 0, h1 = 0, h2 = 0;
  std::vector<MultiVec> reps1;
  for (unsigned d = 0; d <= 6; ++d) {
    auto r0 = cohomology(pi, 0, d);
    auto r1 = cohomology(pi, 1, d);
    auto r2 = cohomology(pi, 2, d);
    for (const auto* r : {&r0, &r1, &r2}) EXPECT_EQ(r->dim_h, r->dim_kernel - r->dim_image);
    h0 += r0.dim_h;
    h1 += r1.dim_h;
    h2 += r2.dim_h;
    reps1.insert(reps1.end(), r1.representatives.begin(), r1.representatives.end());
  }
  EXPECT_EQ(h0, 1u);
  EXPECT_EQ(h1, 1u);
  EXPECT_EQ(h2, 0u);
  ASSERT_EQ(reps1.size(), 1u);
  EXPECT_EQ(reps1[0], vf(pi.chart_ptr(), {"0", "1"}));
}

TEST(Cohomology, ZeroStructure) {
  PoissonStructure zero(MultiVec(make_chart({"x", "y", "z"}), 2));
  for (std::size_t k = 0; k <= 3; ++k)
    for (unsigned d = 0; d <= 2; ++d) {
      auto rep = cohomology(zero, k, d);
      EXPECT_EQ(rep.dim_image, 0u);
      EXPECT_EQ(rep.dim_h, homogeneous_multivector_basis(zero.chart_ptr(), k, d).size());
    }
}

TEST(Cohomology, CanonicalHasOnlyConstantCasimirs) {
  PoissonStructure can(canonical_bivector(1));
  EXPECT_EQ(cohomology(can, 0, 0).dim_h, 1u);
  for (unsigned d = 1; d <= 5; ++d) EXPECT_EQ(cohomology(can, 0, d).dim_h, 0u) << d;
}

TEST(Cohomology, RejectsInhomogeneous) {
  auto c = make_chart({"x", "y"});
  PoissonStructure pi(bivector(c, {{0, 1, "x + x^2"}}));
  EXPECT_THROW(cohomology(pi, 1, 1), DomainError);
}

// Casimirs of degree d found by a direct linear solve on homogeneous polynomials.
std::size_t casimir_dimension(const MultiVec& pi, unsigned d) {
  auto basis = homogeneous_multivector_basis(pi.chart_ptr(), 0, d);
  std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  for (const auto& b : basis) {
    MultiVec x = hamiltonian_vf(pi, b.coeff({}));
    std::vector<std::pair<std::size_t, Rational>> col;
    for (const auto& [idx, c] : x.coeffs())
      for (const auto& [m, a] : c.num().terms()) {
        auto key = std::make_pair(idx[0], m);
        auto it = rows.emplace(key, rows.size()).first;
        col.emplace_back(it->second, a);
      }
    cols.push_back(col);
  }
  QMatrix m(rows.size(), basis.size(), Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, a] : cols[j]) m(i, j) += a;
  return basis.size() - rank(m);
}

TEST(Cohomology, DegreeZeroMatchesCasimirs) {
  for (const char* name : {"so3", "sl2r", "book", "heisenberg", "s3_standard"}) {
    PoissonStructure pi(fixture(name).pi);
    for (unsigned d = 0; d <= 4; ++d) EXPECT_EQ(cohomology(pi, 0, d).dim_h, casimir_dimension(pi.pi(), d)) << name;
  }
}

TEST(Cohomology, ReportText) {
  PoissonStructure pi(fixture("r2_xdxdy").pi);
  EXPECT_EQ(to_string(cohomology(pi, 1, 0)), "H^1 d=0 kernel=1 image=0 dim=1\n  rep d/dy");
}

TEST(Gauge, ZeroIsIdentity) {
  MultiVec s = so3();
  auto g = gauge_transform(s, DiffForm(s.chart_ptr(), 2));
  EXPECT_EQ(g.pi.pi(), s);
}

TEST(Gauge, CanonicalConstantShift) {
  MultiVec can = canonical_bivector(1);
  auto c = can.chart_ptr();
  // P = [[0,-1],[1,0]], B = [[0,2],[-2,0]]: BP = 2I, P_B = P/3
  auto g = gauge_transform(can, DiffForm::basis(c, {0, 1}, E("2", c)));
  EXPECT_EQ(g.pi.pi(), can * E("1/3", c));
  EXPECT_EQ(g.determinant, E("9", c));
  EXPECT_THROW(gauge_transform(can, DiffForm::basis(c, {0, 1}, E("-1", c))), DomainError);
}

TEST(Gauge, RejectsNonClosed) {
  MultiVec s = so3();
  auto c = s.chart_ptr();
  EXPECT_THROW(gauge_transform(s, DiffForm::basis(c, {0, 1}, E("z", c))), VerificationError);
}

TEST(Gauge, Involution) {
  Random r(28);
  std::vector<MultiVec> zoo = {so3(), canonical_bivector(1), fixture("heisenberg").pi};
  for (const auto& pi : zoo) {
    auto c = pi.chart_ptr();
    for (int trial = 0; trial < 3; ++trial) {
      DiffForm b = exterior_derivative(r.form(c, 1, 2));
      if (b.is_zero()) continue;
      auto once = gauge_transform(pi, b);
      EXPECT_TRUE(once.pi.verified());
      auto back = gauge_transform(once.pi.pi(), -b);
      EXPECT_EQ(back.pi.pi(), pi) << to_string(b);
    }
  }
}

TEST(PoissonMap, ProjectionFromProduct) {
  ChartPtr prod = make_chart({"x", "y", "z", "u", "v"});
  MultiVec pi = bivector(prod, {{0, 1, "z"}, {1, 2, "x"}, {2, 0, "y"}, {3, 4, "1"}});
  MultiVec s = so3();
  PolyMap proj(prod, s.chart_ptr(), {E("x", prod), E("y", prod), E("z", prod)});
  auto rep = is_poisson_map(proj, pi, s);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.symbolic);
}

TEST(PoissonMap, Identity) {
  MultiVec s = fixture("s3_standard").pi;
  EXPECT_TRUE(is_poisson_map(PolyMap::identity(s.chart_ptr()), s, s).ok);
}

TEST(PoissonMap, DiagonalIsNot) {
  MultiVec can = canonical_bivector(1);
  auto c = can.chart_ptr();
  ChartPtr twice = make_chart({"a", "b", "u", "v"});
  MultiVec prod = bivector(twice, {{0, 1, "-1"}, {2, 3, "-1"}});
  PolyMap diag(c, twice, {E("q", c), E("p", c), E("q", c), E("p", c)});
  auto rep = is_poisson_map(diag, can, prod);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(rep.symbolic);
}

TEST(PoissonMap, RationalCoefficientsAreSampled) {
  auto c = make_chart({"x", "y"});
  MultiVec pi = bivector(c, {{0, 1, "1/(1 + x^2)"}});
  auto rep = is_poisson_map(PolyMap::identity(c), pi, pi);
  EXPECT_TRUE(rep.ok);
  EXPECT_FALSE(rep.symbolic);
  EXPECT_GE(rep.samples_checked, 25u);
  MultiVec other = bivector(c, {{0, 1, "2/(1 + x^2)"}});
  EXPECT_FALSE(is_poisson_map(PolyMap::identity(c), pi, other).ok);
}

TEST(TopPower, Canonical) {
  auto rep = log_degeneracy_check(canonical_bivector(1), {Q({0, 0}), Q({1, 2})});
  EXPECT_EQ(rep.top_coefficient, RatFunc(2, Rational(-1)));
  EXPECT_TRUE(rep.zero_locus.empty());
  EXPECT_THROW(top_power(so3()), DomainError);
}

TEST(TopPower, LogSymplectic) {
  auto c = make_chart({"y1", "y2", "q", "p"});
  MultiVec pi = bivector(c, {{0, 1, "y1"}, {2, 3, "-1"}});
  std::vector<QVector> samples;
  for (long a = -2; a <= 2; ++a) samples.push_back(Q({0, a, 1, a * a}));
  samples.push_back(Q({1, 1, 1, 1}));
  auto rep = log_degeneracy_check(pi, samples);
  EXPECT_EQ(rep.top_coefficient, E("-2*y1", c));
  EXPECT_EQ(rep.zero_locus.size(), 5u);
  EXPECT_TRUE(rep.log_symplectic());
}

TEST(TopPower, DoubleZeroIsNotLog) {
  auto c = make_chart({"x", "y"});
  auto rep = log_degeneracy_check(bivector(c, {{0, 1, "x^2"}}), {Q({0, 0}), Q({0, 3})});
  EXPECT_EQ(rep.top_coefficient, E("x^2", c));
  ASSERT_EQ(rep.zero_locus.size(), 2u);
  EXPECT_FALSE(rep.zero_locus[0].transversal);
  EXPECT_FALSE(rep.log_symplectic());
}

TEST(Isotropy, So3AtOrigin) { EXPECT_EQ(isotropy_bracket_at(so3(), Q({0, 0, 0})), LieAlgebra::so3()); }

TEST(Isotropy, CanonicalIsTrivial) { EXPECT_EQ(isotropy_bracket_at(canonical_bivector(1), Q({1, 1})).dim(), 0u); }

TEST(Isotropy, QuadraticVanishingIsAbelian) {
  auto c = make_chart({"x", "y"});
  EXPECT_EQ(isotropy_bracket_at(bivector(c, {{0, 1, "x^2 + y^2"}}), Q({0, 0})), LieAlgebra::abelian(2));
}

TEST(Isotropy, SphereStructureAtOrigin) {
  // quadratic everywhere, so the linearization at 0 vanishes
  EXPECT_EQ(isotropy_bracket_at(fixture("s3_standard").pi, Q({0, 0, 0, 0})), LieAlgebra::abelian(4));
}

class PoissonProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(PoissonProperties, JacobiAntisymmetryLeibniz) {
  MultiVec pi = fixture(GetParam()).pi;
  const std::size_t n = pi.dim();
  Random r(29);
  for (int trial = 0; trial < 12; ++trial) {
    RatFunc f(r.poly(n, 2)), g(r.poly(n, 2)), h(r.poly(n, 2));
    EXPECT_TRUE(jacobiator(pi, f, g, h).is_zero());
    EXPECT_EQ(bracket(pi, f, g), -bracket(pi, g, f));
    EXPECT_EQ(bracket(pi, f, g * h), bracket(pi, f, g) * h + g * bracket(pi, f, h));
    EXPECT_EQ(bracket(pi, f, g), pair(differential(pi.chart_ptr(), g), hamiltonian_vf(pi, f)));
  }
}

TEST_P(PoissonProperties, HamiltonianFieldsFormAHomomorphism) {
  MultiVec pi = fixture(GetParam()).pi;
  const std::size_t n = pi.dim();
  Random r(30);
  for (int trial = 0; trial < 8; ++trial) {
    RatFunc f(r.poly(n, 2)), g(r.poly(n, 2));
    EXPECT_EQ(schouten(hamiltonian_vf(pi, f), hamiltonian_vf(pi, g)), hamiltonian_vf(pi, bracket(pi, f, g)));
  }
}

INSTANTIATE_TEST_SUITE_P(Zoo, PoissonProperties, ::testing::ValuesIn(fixture_names()));

}  // namespace
}  // namespace poisskit
