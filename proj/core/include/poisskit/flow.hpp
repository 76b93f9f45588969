#pragma once

// Numerics. Symbolic data is converted to doubles on entry; every integrator
// is fixed-step classical RK4 so traces are reproducible bit for bit.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "poisskit/multivec.hpp"

namespace poisskit {

struct FlowConfig {
  double dt = 1e-3;
  double t_max = 1.0;
  double tolerance = 1e-6;
  double pole_threshold = 1e-12;  // |denominator| below this aborts
  double escape_radius = 1e8;
  std::size_t max_steps = 50'000'000;
  std::size_t record_stride = 1;  // keep every k-th step in trajectories
  bool parallel = false;          // spray samples on separate threads

  /// Throws DomainError on dt <= 0, t_max <= 0, dt > t_max or tolerance <= 0.
  void validate() const;
};

using DVector = std::vector<double>;

/// Row-major dense matrix of doubles.
struct DMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  DMatrix() = default;
  DMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// max |a_ij - b_ij|; infinity on shape mismatch.
double max_abs_diff(const DMatrix& a, const DMatrix& b);
DMatrix to_dmatrix(const QMatrix& m);
DVector to_dvector(const QVector& v);

/// Evaluates a RatFunc in doubles; PoleError when |den| < pole_threshold.
double evaluate_numeric(const RatFunc& f, const DVector& x, double pole_threshold = 1e-12);
DMatrix evaluate_bivector_numeric(const MultiVec& pi, const DVector& x, double pole_threshold = 1e-12);

struct Trajectory {
  std::vector<double> times;
  std::vector<DVector> points;
  double h_drift = 0;                  // max |H(x_t) - H(x_0)|
  std::vector<double> casimir_drifts;  // same, per supplied function
};

/// RK4 trajectory of X_H = π♯dH on [0, cfg.t_max].
Trajectory integrate_hamiltonian(const MultiVec& pi, const RatFunc& h, const DVector& x0, const FlowConfig& cfg,
                                 const std::vector<RatFunc>& casimirs = {});

struct Segment {
  std::size_t generator;
  double t;  // negative runs the flow backwards
};

/// The schedule undone: segments in reverse order with negated times.
std::vector<Segment> reversed(const std::vector<Segment>& schedule);

struct LeafTrace {
  std::vector<double> times;  // accumulated |t|
  std::vector<DVector> points;
  std::vector<RatFunc> hamiltonians;   // generator of each non-trivial segment
  std::vector<RatFunc> casimirs;
  std::vector<DVector> drifts;         // per point, |f(x) - f(x_0)| per casimir
  std::vector<double> casimir_drifts;  // max over the trace
};

/// Composes Hamiltonian flows. Segments whose field vanishes identically are
/// skipped, so π = 0 yields the single point x0.
LeafTrace leaf_trace(const MultiVec& pi, const std::vector<RatFunc>& generators, const DVector& x0,
                     const std::vector<Segment>& schedule, const FlowConfig& cfg,
                     const std::vector<RatFunc>& casimirs = {});

/// One line per point: t x_1 .. x_n drift_1 .. drift_k, 17 significant digits.
void write_trace(std::ostream& os, const LeafTrace& trace);

struct MoserReport {
  double max_deviation = 0;
  std::vector<double> deviations;  // per grid time, max over samples
  std::size_t samples_checked = 0;
};

/// Flows X_t = π_t♯α, where π_t is π0 gauged by B_t = -t dα, and compares the
/// pushforward of π0 with π_t at each grid time. VerificationError when
/// I + B_t P0 is singular at a sample and grid time.
MoserReport moser_verify(const MultiVec& pi0, const DiffForm& alpha, const std::vector<double>& t_grid,
                         const std::vector<DVector>& samples, const FlowConfig& cfg);

struct RealizationSample {
  DVector xi;      // (x, ξ) in the cotangent chart
  DMatrix omega;   // 2n x 2n
  double antisymmetry = 0;  // max |ω + ω^T|
  double condition = 0;     // σ_max / σ_min
  bool nondegenerate = false;
};

/// ω = ∫_0^1 φ_t^* ω_can dt for the spray Y = (π♯ξ)^i ∂_{x_i} of the flat
/// connection, with ω_can = Σ dx_i ∧ dξ_i. Jacobians come from variational
/// equations; the t-integral is the trapezoid rule on `nodes` equally spaced
/// points (nodes >= 2). VerificationError when the flow leaves escape_radius.
std::vector<RealizationSample> spray_realization(const MultiVec& pi, const std::vector<DVector>& samples,
                                                 std::size_t nodes, const FlowConfig& cfg);

/// max entrywise |(ω^{-1})_{x block} - P(x)| over the samples; VerificationError
/// on a degenerate ω.
double realization_check(const std::vector<RealizationSample>& samples, const MultiVec& pi);

}  // namespace poisskit
