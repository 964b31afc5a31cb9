#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"
#include "ycalc/types.hpp"

namespace ycalc {

/// Two-parameter germ Gamma_{s,t} with values in R^dim, for s <= t.
struct Germ {
  std::size_t dim = 1;
  std::function<Vec(double s, double t)> eval;
};

struct SewOptions {
  unsigned refine_levels = 12;
  /// Relative Cauchy tolerance: stop once the sup-norm change between
  /// consecutive levels is below tolerance * (1 + sup of the output).
  double tolerance = 1e-9;
  /// Stop refining as soon as the tolerance is met. Solvers disable this so
  /// that every fixed-point iteration uses the same partition.
  bool early_stop = true;
  /// Throw RegularityError when the deltas stop shrinking.
  bool check_cauchy = true;
};

/// Output of the sewing engine. `path` is t_i -> sum over the refined
/// partition of [t_0, t_i]; `cell_increments` holds the per-cell sums.
struct SewResult {
  Path path;
  Mat cell_increments;
  double last_refinement_delta = 0.0;
  unsigned levels_used = 0;
  bool converged = false;
  /// deltas[l-1] = sup-norm change between level l-1 and level l.
  std::vector<double> deltas;
};

SewResult sew(const Germ& gamma, const Grid& grid, unsigned refine_levels);
SewResult sew(const Germ& gamma, const Grid& grid, const SewOptions& options);

/// max over node triples s < u < t of |Gamma_{s,t} - Gamma_{s,u} - Gamma_{u,t}| / |t-s|^beta.
/// Exact enumeration up to kExactDefectCells cells; above that every pair on
/// a geometric gap ladder is paired with its midpoint and three seeded
/// interior points.
double defect_norm(const Germ& gamma, const Grid& grid, double beta);
inline constexpr std::size_t kExactDefectCells = 512;

/// (1 - 2^{1-beta})^{-1}, the dyadic sewing constant for beta > 1.
double sewing_constant(double beta);

struct SewingBoundRow {
  double s, t, lhs, rhs, ratio;
};

struct SewingBoundReport {
  double beta = 0.0;
  double constant = 0.0;
  double defect = 0.0;
  double max_ratio = 0.0;
  bool passed = true;
  std::optional<SewingBoundRow> violation;
  std::vector<SewingBoundRow> rows;

  /// Columns s,t,lhs,rhs,ratio.
  CsvTable table() const;
};

/// For every node pair checks |J(Gamma)_{s,t} - Gamma_{s,t}| against
/// constant * defect_norm * |t-s|^beta, with J computed by `sew`.
SewingBoundReport check_sewing_bound(const Germ& gamma, const Grid& grid, double beta,
                                     unsigned refine_levels);

namespace detail {

/// Germ restricted to one base cell; `cell` indexes the base partition.
using CellGerm = std::function<Vec(std::size_t cell, double s, double t)>;

struct CellSewing {
  Mat cells;  // dim x n
  std::vector<double> deltas;
  unsigned levels_used = 0;
  bool converged = false;
};

/// Sums of the germ over each base cell split into 2^level pieces.
Mat cell_sums(std::size_t dim, std::span<const double> nodes, const CellGerm& germ,
              unsigned level);

/// Level-by-level refinement with the Cauchy bookkeeping of `sew`.
CellSewing sew_cells(std::size_t dim, std::span<const double> nodes, const CellGerm& germ,
                     const SewOptions& options);

/// Cumulative sums of cell increments, starting at zero.
Mat cumulate(const Mat& cells);

}  // namespace detail

}  // namespace ycalc
