#pragma once

#include "trajnyq/geometry.hpp"
#include "trajnyq/trajectory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace trajnyq {

struct Atom {
  Vec omega;
  Complex c;
};

/// f(r) = sum_k c_k exp(i <omega_k, r>).
struct AtomField {
  int dim = 0;
  std::vector<Atom> atoms;
  std::optional<ConvexBody> omega_ref;
  double margin = 0.0;  // guaranteed slack of every atom inside omega_ref

  double coefficient_l1() const;
};

/// Validates distinct frequencies (separation > 1e-9) and, when a body is given, that every
/// frequency lies inside it with at least `margin` slack.
AtomField make_atom_field(int dim, std::vector<Atom> atoms, std::optional<ConvexBody> omega_ref = std::nullopt,
                          double margin = 0.0);

/// Seeded random field: atoms by rejection sampling inside omega shrunk by margin * W(omega),
/// coefficients complex Gaussian with E|c|^2 = 1.
AtomField make_field(const ConvexBody& omega, int n_atoms, double margin, std::uint64_t seed);

Complex evaluate(const AtomField& field, const Vec& r);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

/// Frequencies seen along a line with direction v: [min, max] of <omega, v>.
Interval restriction_band(const ConvexBody& omega, const Direction& v);
Interval restriction_band(const AtomField& field, const Direction& v);
/// Support of the field restricted to a plane spanned by the orthonormal columns of A.
ConvexBody restriction_band(const ConvexBody& omega, const Mat& A);

struct SampleBatch {
  std::vector<SamplePoint> points;
  std::vector<Complex> values;
  TrajectorySet set;
  double eps = 0.0;
};

/// Largest along-path pitch that keeps samples on every path of the set unaliased.
double max_path_pitch(const AtomField& field, const TrajectorySet& set);

SampleBatch sample_on_set(const AtomField& field, const TrajectorySet& set, const Window& window, double eps);

/// Linear relations g[i][line] = sum_{m on line} tau(i, m) v(m) over a finite index set in Z^N,
/// where line is the axis-i line through m and tau(i, m) = exp(i <base + U m, w_i>).
struct AliasSystem {
  Vec base;
  Mat U;               // d x N, columns are the reciprocal vectors
  std::vector<Vec> w;  // per-part offsets
  std::vector<IndexVec> indices;                   // sorted, lattice-convex
  std::vector<std::map<IndexVec, Complex>> g;      // per part, keyed by line_key
  std::vector<IndexVec> occupied;                  // indices that carry atoms
  std::vector<std::size_t> atom_ids;               // field atom behind each occupied index

  int parts() const { return static_cast<int>(U.cols()); }
  Complex tau(int part, const IndexVec& m) const;
  /// m with coordinate `part` zeroed; identifies the axis-part line through m.
  static IndexVec line_key(const IndexVec& m, int part);

  /// System whose right-hand sides are generated by the given coefficients.
  static AliasSystem from_coefficients(const Vec& base, const Mat& U, const std::vector<Vec>& w,
                                       std::vector<IndexVec> indices, const std::vector<Complex>& v);
};

/// Dense relation matrix: one row per (part, line), one column per index.
struct DenseRelations {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd g;
};
DenseRelations relation_matrix(const AliasSystem& system);

/// Integer points of the convex hull of the given points.
std::vector<IndexVec> lattice_hull(const std::vector<IndexVec>& points);
bool is_lattice_convex(const std::vector<IndexVec>& points);
/// Corner m of some translate m + {0,1}^N contained in the set, if any.
std::optional<IndexVec> find_unit_cell(const std::vector<IndexVec>& points);

/// Reciprocal vectors and offsets of a line or hyperplane union, one column per part.
struct PartLattice {
  Mat U;
  std::vector<Vec> w;
};
PartLattice part_lattice(const TrajectorySet& set);

/// Groups atoms into cosets modulo U Z^N and builds one system per coset. The right-hand
/// sides are the exact aliased sums of the field's coefficients.
std::vector<AliasSystem> alias_atoms(const AtomField& field, const TrajectorySet& set);

/// Peeling decoder; returns v aligned with system.indices.
std::vector<Complex> unfold_decode(const AliasSystem& system);

struct Reconstruction {
  AtomField estimate;
  double sup_error = 0.0;
  double rms_error = 0.0;
  bool certified = false;
  std::size_t samples = 0;
};

/// Samples the field on a line or hyperplane union (or uniform lines in R^d), recovers the
/// aliased sums per path family by least squares, unfolds them and reports errors on a probe
/// grid of probe_grid^d points inside the window ball.
Reconstruction reconstruct_and_error(const AtomField& field, const TrajectorySet& set, const Window& window,
                                     double eps, int probe_grid = 64);

struct CircleSeries {
  double a = 0.0;
  double nu = 0.0;
  int kbar = 0;
  std::vector<Complex> coeffs;  // s_k for k = -kbar..kbar

  Complex coefficient(int k) const { return coeffs[static_cast<std::size_t>(k + kbar)]; }
  /// Truncated series sum_k s_k exp(i k nu t).
  Complex operator()(double t) const;
};

/// Fourier series of t -> f(a cos(nu t), a sin(nu t)). Coefficients are chosen so that the
/// full series reproduces f on the circle: s_k = sum c i^k J_k(a|omega|) exp(-i k beta),
/// beta = atan2(omega_y, omega_x). kbar defaults to ceil(1 + a sup|omega|), using the
/// circumradius of omega_ref when present.
CircleSeries circle_series(const AtomField& field, double a, double nu, std::optional<int> kbar = std::nullopt);

/// Field vanishing on every path of the union:
/// exp(-i <s, r>) prod_i sin(<u_i, r - w_i> / 2).
AtomField null_field(const TrajectorySet& set, const Vec& shift);
/// Field vanishing on every line of a uniform set in R^d: sin(<y, r - w>), y = sum m_i u_i / 2.
AtomField null_field(const UniformLinesD& set, const IndexVec& m);

}  // namespace trajnyq
