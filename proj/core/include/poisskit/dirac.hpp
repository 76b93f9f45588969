#pragma once

// Dirac geometry on a chart. Pointwise objects live in V ⊕ V* with
// coordinates (X_1..X_n, α_1..α_n); the pairing is <(X,α),(Y,β)> = β(X) + α(Y).

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poisskit/poisson.hpp"

namespace poisskit {

/// Lagrangian subspace of V ⊕ V*, stored as its canonical row-echelon basis.
class LinearLagrangian {
 public:
  LinearLagrangian() = default;
  /// Rows of length 2n spanning the subspace; throws VerificationError
  /// unless they span a lagrangian subspace.
  LinearLagrangian(std::size_t n, const QMatrix& rows);

  /// V ⊕ 0 and 0 ⊕ V*.
  static LinearLagrangian tangent(std::size_t n);
  static LinearLagrangian cotangent(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  const QMatrix& basis() const noexcept { return basis_; }
  /// Does (X, α) lie in L?
  bool contains(const QVector& x, const QVector& alpha) const;

  friend bool operator==(const LinearLagrangian& a, const LinearLagrangian& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_ = 0;
  QMatrix basis_;
};

std::string to_string(const LinearLagrangian& l);
void PrintTo(const LinearLagrangian& l, std::ostream* os);

/// Rank n and pairwise vanishing pairing.
bool is_lagrangian(std::size_t n, const QMatrix& rows);
Rational pairing(const QVector& x, const QVector& alpha, const QVector& y, const QVector& beta);

/// Graph of π♯: {(π♯α, α)}.
LinearLagrangian from_bivector_at(const MultiVec& pi, std::span<const Rational> point);
/// Graph of ω♭: {(X, i_X ω)}.
LinearLagrangian from_2form_at(const DiffForm& omega, std::span<const Rational> point);
/// Graph of a constant bivector matrix P (entry (i,j) = π(dx_i, dx_j)).
LinearLagrangian graph_of_bivector(const QMatrix& p);
LinearLagrangian graph_of_2form(const QMatrix& b);

/// A: V_src → V_tgt as a (dim tgt) x (dim src) matrix.
/// {(X, A^T β) | (AX, β) ∈ L}
LinearLagrangian backward_image(const LinearLagrangian& l, const QMatrix& a);
/// {(AX, β) | (X, A^T β) ∈ L}
LinearLagrangian forward_image(const LinearLagrangian& l, const QMatrix& a);
/// Is dφ(graph π1 at p) = graph π2 at φ(p) for every sample p?
bool forward_matches(const PolyMap& phi, const MultiVec& pi1, const MultiVec& pi2, const std::vector<QVector>& samples);

/// τ_B(X, α) = (X, α + i_X B) for an antisymmetric matrix B.
LinearLagrangian gauge_at(const LinearLagrangian& l, const QMatrix& b);

struct KernelRange {
  std::vector<QVector> kernel;       // L ∩ (V ⊕ 0)
  std::vector<QVector> range;        // projection of L to V
  QMatrix omega;                     // Ω(r_a, r_b) = α_a(r_b)
  std::vector<QVector> annihilator;  // L ∩ (0 ⊕ V*), equal to Ann(range)
};

KernelRange kernel_and_range(const LinearLagrangian& l);
/// L rebuilt from (R, Ω, Ann R).
LinearLagrangian reconstruct(const KernelRange& kr, std::size_t n);

/// Section (X, α) of TM ⊕ T*M.
struct Section {
  MultiVec x;
  DiffForm alpha;
};

RatFunc pairing(const Section& a, const Section& b);
/// ([X,Y], L_X β − i_Y dα)
Section courant_dorfman(const Section& a, const Section& b);
Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section operator*(const RatFunc& f, const Section& s);
bool operator==(const Section& a, const Section& b);
void PrintTo(const Section& s, std::ostream* os);

struct DiracSectionFamily {
  ChartPtr chart;
  std::vector<Section> sections;
  std::string regular_locus = "everywhere";
  std::vector<QVector> samples;  // points where the rank is checked
};

/// (dx_i^♯, dx_i) for i = 1..n.
DiracSectionFamily graph_sections(const MultiVec& pi);
/// (∂_i, i_{∂_i} ω) for i = 1..n.
DiracSectionFamily graph_sections(const DiffForm& omega);

using Triple = std::array<std::size_t, 3>;

/// Υ(e_i, e_j, e_k) = <[[e_i, e_j]], e_k> for i < j < k. Throws
/// VerificationError when the sections are not pairwise isotropic or the rank
/// drops at a sample.
std::map<Triple, RatFunc> courant_tensor(const DiracSectionFamily& family);
bool is_integrable(const DiracSectionFamily& family);

/// N = {ψ = r} inside an ambient Poisson chart.
struct ConstraintSystem {
  PoissonStructure ambient;
  std::vector<RatFunc> psi;
  QVector level;
  std::vector<QVector> samples;
  std::optional<PolyMap> parametrization;

  /// Checks sample and parametrization consistency; throws DomainError.
  void validate() const;
  bool has_route() const { return parametrization.has_value() || !samples.empty(); }
};

struct DiracBracketData {
  RMatrix c_upper;  // {ψ_i, ψ_j}
  RMatrix c_lower;  // inverse of c_upper
};

class DiracBracket {
 public:
  /// Throws DomainError when c_upper is singular or no restriction route exists.
  explicit DiracBracket(ConstraintSystem cs);

  const ConstraintSystem& system() const noexcept { return cs_; }
  const DiracBracketData& data() const noexcept { return data_; }

  /// {f,g} − Σ {f,ψ_i} c_ij {ψ_j,g} on the ambient chart, before restriction.
  RatFunc ambient(const RatFunc& f, const RatFunc& g) const;
  /// Restriction through the parametrization (a function on its source chart).
  RatFunc restricted(const RatFunc& f, const RatFunc& g) const;
  /// Values at the on-level samples.
  QVector at_samples(const RatFunc& f, const RatFunc& g) const;
  /// Coefficient matrix of the ambient Dirac bivector.
  const RMatrix& matrix() const noexcept { return p_dirac_; }

 private:
  ConstraintSystem cs_;
  DiracBracketData data_;
  RMatrix p_dirac_;
};

DiracBracket dirac_bracket(const ConstraintSystem& cs);

struct SubmanifoldClass {
  bool poisson = false;
  bool coisotropic = false;
  bool cosymplectic = false;
  bool sampled = false;  // true when only sample evaluation was available
  std::size_t samples_checked = 0;
};

SubmanifoldClass classify_submanifold(const ConstraintSystem& cs);

struct CoregularityReport {
  std::vector<std::size_t> dims;  // dim(TN + R) per sample
  bool constant = false;
};

/// Submanifold version: dim(TN + R) across the samples of the system.
CoregularityReport coregularity_check(const ConstraintSystem& cs);
/// Map version: dim(Im dφ + R_{φ(p)}) across source samples.
CoregularityReport coregularity_check(const MultiVec& pi, const PolyMap& phi, const std::vector<QVector>& samples);

struct DualPairReport {
  bool ok = false;
  bool dimension_ok = false;
  std::size_t samples_checked = 0;
  std::string detail;
};

/// dim S = dim M1 + dim M2 and φ1^! L_{π1} = τ_ω(φ2^! L_{π2}) at every sample.
DualPairReport dual_pair_check(const DiffForm& omega, const PolyMap& phi1, const PolyMap& phi2, const MultiVec& pi1,
                               const MultiVec& pi2, const std::vector<QVector>& samples);

/// Matrix of the induced structure π_N at a point. With a parametrization the
/// point and the result are in its source coordinates; without one the system
/// must have no constraints and π itself is returned.
QMatrix transversal_induced_poisson_at(const ConstraintSystem& cs, std::span<const Rational> point);

/// Rational points on the unit sphere in R^dim via inverse stereographic
/// projection of small integer points; deterministic, pairwise distinct.
std::vector<QVector> rational_sphere_points(std::size_t dim, std::size_t count, const Rational& radius = 1);

}  // namespace poisskit
