#pragma once

// Finite-dimensional Lie algebras given by structure constants
// [e_i, e_j] = Σ_k c_ijk e_k, the algebraic Schouten calculus on ∧g, and the
// linear Poisson structures they induce.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poisskit/poisson.hpp"

namespace poisskit {

struct StructureConstant {
  std::size_t i, j, k;
  Rational value;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Full tensor c[i][j][k]; checks antisymmetry and Jacobi, throwing
  /// VerificationError that names the violating indices.
  static LieAlgebra from_tensor(std::vector<std::vector<std::vector<Rational>>> c);
  /// Sparse triples with antisymmetric completion; conflicting pairs are an error.
  static LieAlgebra from_triples(std::size_t dim, const std::vector<StructureConstant>& triples);

  static LieAlgebra abelian(std::size_t dim);
  static LieAlgebra so3();
  /// [e1,e2] = -e3, [e2,e3] = e1, [e3,e1] = e2.
  static LieAlgebra sl2r();
  /// sb(2,C): [e1,e2] = e2, [e1,e3] = e3.
  static LieAlgebra book();
  /// [e1,e2] = e3.
  static LieAlgebra heisenberg();

  std::size_t dim() const noexcept { return dim_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  QVector bracket(const QVector& u, const QVector& v) const;
  /// Matrix of ad_u acting on column vectors.
  QMatrix ad(const QVector& u) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

/// Element of ∧^k g with rational coefficients on increasing index tuples.
class AlgMultiVec {
 public:
  AlgMultiVec() = default;
  AlgMultiVec(std::shared_ptr<const LieAlgebra> parent, std::size_t degree);

  static AlgMultiVec basis(std::shared_ptr<const LieAlgebra> parent, IndexTuple indices, const Rational& c = 1);
  static AlgMultiVec from_vector(std::shared_ptr<const LieAlgebra> parent, const QVector& v);

  const std::shared_ptr<const LieAlgebra>& parent() const noexcept { return parent_; }
  std::size_t dim() const { return parent_->dim(); }
  std::size_t degree() const noexcept { return degree_; }
  const std::map<IndexTuple, Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(const IndexTuple& sorted) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  QVector to_vector() const;  // degree 1 only

  void add(IndexTuple indices, const Rational& c);

  AlgMultiVec& operator+=(const AlgMultiVec& o);
  AlgMultiVec& operator-=(const AlgMultiVec& o);
  AlgMultiVec& operator*=(const Rational& c);
  friend AlgMultiVec operator+(AlgMultiVec a, const AlgMultiVec& b) { return a += b; }
  friend AlgMultiVec operator-(AlgMultiVec a, const AlgMultiVec& b) { return a -= b; }
  friend AlgMultiVec operator*(AlgMultiVec a, const Rational& c) { return a *= c; }
  friend AlgMultiVec operator*(const Rational& c, AlgMultiVec a) { return a *= c; }
  friend bool operator==(const AlgMultiVec& a, const AlgMultiVec& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::shared_ptr<const LieAlgebra> parent_;
  std::size_t degree_ = 0;
  std::map<IndexTuple, Rational> coeffs_;
};

AlgMultiVec wedge(const AlgMultiVec& a, const AlgMultiVec& b);
/// Schouten bracket on ∧g extending the Lie bracket:
/// [X1^..^Xk, Y1^..^Yl] = Σ (-1)^{i+j} [Xi,Yj] ^ X1..^Xi..Xk ^ Y1..^Yj..Yl.
AlgMultiVec alg_schouten(const AlgMultiVec& a, const AlgMultiVec& b);
/// Names basis elements e1, e2, ...
std::string to_string(const AlgMultiVec& a);

/// Multivector chart used for g*: x,y,z(,w) up to dimension 4, xi1.. beyond.
ChartPtr dual_chart(std::size_t dim);

PoissonStructure lie_poisson(const LieAlgebra& g, ChartPtr chart = nullptr);
MultiVec coadjoint_vf(const LieAlgebra& g, const QVector& u, ChartPtr chart = nullptr);

/// λ ∈ ∧²g* given by its coefficients on e_i* ^ e_j*.
bool is_2cocycle(const LieAlgebra& g, const AlgMultiVec& lambda);
PoissonStructure affine_poisson(const LieAlgebra& g, const AlgMultiVec& lambda, ChartPtr chart = nullptr);

enum class CybClass { triangular, coboundary, neither };
std::string to_string(CybClass c);

struct CybReport {
  CybClass kind = CybClass::neither;
  AlgMultiVec square;  // [r,r]
};

CybReport cyb_check(const LieAlgebra& g, const AlgMultiVec& r);

/// δ: g → ∧²g, stored as the images of the basis vectors.
class Cobracket {
 public:
  Cobracket(std::shared_ptr<const LieAlgebra> parent, std::vector<AlgMultiVec> images);
  static Cobracket zero(std::shared_ptr<const LieAlgebra> parent);
  /// Transpose of a bracket on g*: δ(e_k) = Σ_{i<j} d_ijk e_i^e_j.
  static Cobracket dual_to(std::shared_ptr<const LieAlgebra> parent, const LieAlgebra& dual);
  /// δ(u) = [u, r].
  static Cobracket coboundary(std::shared_ptr<const LieAlgebra> parent, const AlgMultiVec& r);

  const std::shared_ptr<const LieAlgebra>& parent() const noexcept { return parent_; }
  const AlgMultiVec& image(std::size_t i) const { return images_.at(i); }
  AlgMultiVec apply(const QVector& u) const;
  /// m x (m choose 2) matrix; column order follows increasing pairs.
  QMatrix matrix() const;

 private:
  std::shared_ptr<const LieAlgebra> parent_;
  std::vector<AlgMultiVec> images_;
};

struct BialgebraReport {
  bool dual_jacobi = false;
  bool compat = false;
};

BialgebraReport bialgebra_check(const LieAlgebra& g, const Cobracket& delta);

/// χ(e_i) = Tr(ad_{e_i}).
QVector modular_character(const LieAlgebra& g);

/// π = Σ_{i<j} (Σ_k c_ijk(x) ξ_k) ∂ξi^∂ξj − Σ ρ_ij(x) ∂xi^∂ξj on the chart
/// (base coordinates, xi1..xir). rho is n x r, c is r x r x r; all entries are
/// functions on the base chart.
MultiVec algebroid_dual_poisson(const ChartPtr& base, const RMatrix& rho,
                                const std::vector<std::vector<std::vector<RatFunc>>>& c);

/// T: g → h (dim h x dim g); exact check of T[u,v] = [Tu,Tv] on basis pairs.
bool is_lie_hom(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& t);
/// T^T as a linear map h* → g* between the given charts.
PolyMap dual_map(const QMatrix& t, ChartPtr h_chart, ChartPtr g_chart);

bool is_subalgebra(const LieAlgebra& g, const std::vector<std::size_t>& basis_subset);
bool is_ideal(const LieAlgebra& g, const std::vector<std::size_t>& basis_subset);

}  // namespace poisskit
