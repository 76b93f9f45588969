#pragma once

// Poisson-structure analysis on a chart. Matrix convention: entry (i,j) of
// the coefficient matrix P is {x_i, x_j}, and π♯(α)_j = Σ_i α_i P_ij, so that
// X_f = π♯(df) and {f,g} = dg(X_f).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "poisskit/multivec.hpp"

namespace poisskit {

class LieAlgebra;

struct PoissonCheck {
  bool ok = false;
  MultiVec square;  // [b,b], zero when ok
};

PoissonCheck is_poisson(const MultiVec& bivector);

/// Bivector together with the outcome of the [π,π] = 0 check.
class PoissonStructure {
 public:
  PoissonStructure() = default;
  /// Runs the check; throws VerificationError with the trivector when it fails.
  explicit PoissonStructure(MultiVec pi);
  static PoissonStructure unchecked(MultiVec pi);

  const MultiVec& pi() const noexcept { return pi_; }
  bool verified() const noexcept { return verified_; }
  const ChartPtr& chart_ptr() const noexcept { return pi_.chart_ptr(); }
  const Chart& chart() const { return pi_.chart(); }
  std::size_t dim() const { return pi_.dim(); }

 private:
  MultiVec pi_;
  bool verified_ = false;
};

RatFunc bracket(const MultiVec& pi, const RatFunc& f, const RatFunc& g);
MultiVec hamiltonian_vf(const MultiVec& pi, const RatFunc& f);
QVector sharp_at(const MultiVec& pi, std::span<const Rational> point, std::span<const Rational> covector);

RatFunc jacobiator(const MultiVec& b, const RatFunc& f, const RatFunc& g, const RatFunc& h);
/// (1/2)[b,b].
MultiVec jacobiator_trivector(const MultiVec& b);

std::size_t rank_at(const MultiVec& pi, std::span<const Rational> point);

struct CharFiber {
  QVector base_point;
  std::vector<QVector> r_basis;  // π♯(dx_i) for a maximal independent set of i
  QMatrix omega;                 // Ω(u_a, u_b) = π(β_b, α_a) when u = π♯α
};

CharFiber char_fiber(const MultiVec& pi, std::span<const Rational> point);
/// π at the base point rebuilt from (R, Ω).
QMatrix reconstruct(const CharFiber& fiber, std::size_t dim);

struct DarbouxBasis {
  std::size_t half_rank = 0;  // k
  /// Columns e_1..e_k, f_1..f_k, then the kernel directions.
  QMatrix basis;
  /// π in that basis: [[0, I_k, 0], [-I_k, 0, 0], [0, 0, 0]].
  QMatrix normal_form;
};

DarbouxBasis darboux_basis_at(const MultiVec& pi, std::span<const Rational> point);

bool casimir_check(const MultiVec& pi, const RatFunc& f);

/// Modular vector field for η = g dx_1^...^dx_n.
MultiVec modular_vf(const MultiVec& pi, const DiffForm& volume);

/// Bounded unimodularity certificate: a polynomial f of degree <= max_degree
/// with X_η = X_f, if one exists.
struct ModularCertificate {
  MultiVec modular_field;
  unsigned max_degree = 0;
  std::optional<RatFunc> potential;
  bool trivial_at_degree() const { return potential.has_value(); }
};

ModularCertificate modular_class_at_degree(const MultiVec& pi, const DiffForm& volume, unsigned max_degree);

/// d_π X = [π, X]; refuses unverified structures.
MultiVec d_pi(const PoissonStructure& pi, const MultiVec& x);

struct CohomologyReport {
  std::size_t degree = 0;      // k
  unsigned poly_degree = 0;    // d
  std::size_t dim_kernel = 0;
  std::size_t dim_image = 0;
  std::size_t dim_h = 0;
  std::vector<MultiVec> representatives;
};

/// H^k at coefficient degree d for π with homogeneous polynomial coefficients.
CohomologyReport cohomology(const PoissonStructure& pi, std::size_t k, unsigned d);
std::string to_string(const CohomologyReport& r);

/// Basis of k-vectors whose coefficients are degree-d monomials.
std::vector<MultiVec> homogeneous_multivector_basis(const ChartPtr& chart, std::size_t k, unsigned d);

struct GaugeResult {
  PoissonStructure pi;
  RatFunc determinant;  // det(I + B P); its zero set is the pole locus
};

/// π_B with P_B = P (I + B P)^{-1}. Requires dB = 0.
GaugeResult gauge_transform(const MultiVec& pi, const DiffForm& b);

struct PoissonMapReport {
  bool ok = false;
  bool symbolic = false;  // false: sampled evidence only
  std::size_t samples_checked = 0;
  std::string detail;
};

/// Checks dφ P1 dφ^T = P2∘φ. Exact when everything is polynomial; otherwise
/// evaluated at the samples, topped up to 25 deterministic points.
PoissonMapReport is_poisson_map(const PolyMap& phi, const MultiVec& pi1, const MultiVec& pi2,
                                const std::vector<QVector>& samples = {});

/// Raw n-fold wedge π^n on a 2n-dimensional chart (no 1/n!).
MultiVec top_power(const MultiVec& pi);

struct LogDegeneracyReport {
  RatFunc top_coefficient;
  struct ZeroPoint {
    QVector point;
    bool transversal;  // gradient of the top coefficient nonzero there
  };
  std::vector<ZeroPoint> zero_locus;
  bool top_identically_zero = false;
  bool log_symplectic() const;
};

LogDegeneracyReport log_degeneracy_check(const MultiVec& pi, const std::vector<QVector>& samples);

/// Transverse Lie algebra at a point: the kernel of π♯ with
/// [df, dg] = d{f,g} read off the linearization.
LieAlgebra isotropy_bracket_at(const MultiVec& pi, std::span<const Rational> point);

/// Constant-coefficient bivector from a matrix (convenience for fixtures).
MultiVec constant_bivector(const ChartPtr& chart, const QMatrix& m);

}  // namespace poisskit
