#ifndef DISCLOSURE_EXPERIMENTS_HPP_
#define DISCLOSURE_EXPERIMENTS_HPP_

// Parameter sweeps: patience-enhancement maps over two free parameters, and
// the optimal-versus-benchmark utility curve over the delay cost.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "disclosure/benchmarks.hpp"
#include "disclosure/model.hpp"
#include "disclosure/parallel.hpp"
#include "disclosure/solver.hpp"

namespace disclosure {

enum class SweepAxis { kPriorGood, kHazard, kDelayCost };

inline const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPriorGood: return "mu";
    case SweepAxis::kHazard: return "q";
    case SweepAxis::kDelayCost: return "c";
  }
  return "?";
}

inline std::optional<SweepAxis> parse_axis(const std::string& name) {
  if (name == "mu") return SweepAxis::kPriorGood;
  if (name == "q") return SweepAxis::kHazard;
  if (name == "c") return SweepAxis::kDelayCost;
  return std::nullopt;
}

struct PatienceCell {
  int row = 0;  // index along the first free axis
  int col = 0;  // index along the second free axis
  ModelParams params;
  int tau_no = 1;
  int n_p_star = 1;
  double q_star = 0.0;
  int eta = 0;
  // tau_no = T+1: the uninformed detector never declares. eta is reported
  // as 0 and the cell falls in no threshold bucket.
  bool never_declares = false;
};

inline constexpr std::array<int, 4> kPatienceThresholds{1, 4, 7, 10};

struct PatienceSweep {
  SweepAxis fixed_axis;
  double fixed_value;
  int grid_n;
  int horizon;
  std::vector<PatienceCell> cells;  // row-major
  std::array<double, 4> percent_at_least{};  // share of cells with eta >= 1, 4, 7, 10
  int never_declares_count = 0;
};

// The two free axes in row/column order for a given fixed axis.
inline std::array<SweepAxis, 2> free_axes(SweepAxis fixed) {
  switch (fixed) {
    case SweepAxis::kDelayCost: return {SweepAxis::kPriorGood, SweepAxis::kHazard};
    case SweepAxis::kHazard: return {SweepAxis::kPriorGood, SweepAxis::kDelayCost};
    case SweepAxis::kPriorGood: return {SweepAxis::kHazard, SweepAxis::kDelayCost};
  }
  return {SweepAxis::kPriorGood, SweepAxis::kHazard};
}

// Interior grid point i of n on (0, 1): (i + 1) / (n + 1).
inline double open_grid_point(int i, int n) { return (i + 1.0) / (n + 1.0); }

inline PatienceCell patience_cell(const ModelParams& params) {
  PatienceCell cell;
  cell.params = params;
  cell.tau_no = tau_no(params);
  const SolveResult opt = algorithm1_fast(params);
  cell.n_p_star = opt.mechanism.threshold();
  cell.q_star = opt.mechanism.bad_silence();
  cell.never_declares = cell.tau_no == params.horizon + 1;
  cell.eta = cell.never_declares ? 0 : cell.n_p_star - cell.tau_no;
  return cell;
}

inline PatienceSweep patience_sweep(SweepAxis fixed, double fixed_value, int grid_n,
                                    int horizon, unsigned workers = 1) {
  if (grid_n < 2) throw ParameterError("grid", "grid size must be at least 2");
  if (!(fixed_value >= 0.0 && fixed_value <= 1.0)) {
    throw ParameterError("fix", "fixed value must lie in [0, 1]");
  }
  if (horizon < 1) throw ParameterError("T", "horizon must be positive");
  PatienceSweep sweep{fixed, fixed_value, grid_n, horizon, {}, {}, 0};
  const auto axes = free_axes(fixed);
  const std::size_t n = static_cast<std::size_t>(grid_n) * grid_n;
  sweep.cells.resize(n);
  parallel_for(n, workers, [&](std::size_t idx) {
    const int row = static_cast<int>(idx / grid_n);
    const int col = static_cast<int>(idx % grid_n);
    ModelParams p{0.0, 0.0, horizon, 0.0};
    auto assign = [&p](SweepAxis axis, double v) {
      switch (axis) {
        case SweepAxis::kPriorGood: p.prior_good = v; break;
        case SweepAxis::kHazard: p.hazard = v; break;
        case SweepAxis::kDelayCost: p.delay_cost = v; break;
      }
    };
    assign(fixed, fixed_value);
    assign(axes[0], open_grid_point(row, grid_n));
    assign(axes[1], open_grid_point(col, grid_n));
    PatienceCell cell = patience_cell(p);
    cell.row = row;
    cell.col = col;
    sweep.cells[idx] = cell;
  });

  std::array<int, 4> counts{};
  for (const auto& cell : sweep.cells) {
    if (cell.never_declares) ++sweep.never_declares_count;
    for (std::size_t k = 0; k < kPatienceThresholds.size(); ++k) {
      if (!cell.never_declares && cell.eta >= kPatienceThresholds[k]) ++counts[k];
    }
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    sweep.percent_at_least[k] = 100.0 * counts[k] / static_cast<double>(n);
  }
  return sweep;
}

struct ComparisonPoint {
  double c = 0.0;
  double optimal = 0.0;
  double no_info = 0.0;
  double full_info = 0.0;
  double static_ = 0.0;
  double static_rho = 0.0;
  // 100 (optimal - best benchmark) / best benchmark; nullopt when the best
  // benchmark is 0.
  std::optional<double> improvement_pct;

  double best_benchmark() const { return std::max({no_info, full_info, static_}); }
};

inline ComparisonPoint compare_at(const ModelParams& params) {
  ComparisonPoint point;
  point.c = params.delay_cost;
  point.optimal = algorithm1(params).optimal_utility;
  const BenchmarkSuite bench = compute_benchmarks(params);
  point.no_info = bench.no_info_utility;
  point.full_info = bench.full_info_utility;
  point.static_ = bench.static_utility;
  point.static_rho = bench.static_rho_hat;
  const double best = point.best_benchmark();
  if (best > 0.0) point.improvement_pct = 100.0 * (point.optimal - best) / best;
  return point;
}

inline std::vector<ComparisonPoint> utility_vs_c(const ModelParams& base,
                                                 const std::vector<double>& c_grid,
                                                 unsigned workers = 1) {
  for (double c : c_grid) {
    if (!(c >= 0.0 && c <= 1.0)) throw ParameterError("c", "delay-cost grid must lie in [0, 1]");
  }
  std::vector<ComparisonPoint> points(c_grid.size());
  parallel_for(c_grid.size(), workers, [&](std::size_t i) {
    ModelParams p = base;
    p.delay_cost = c_grid[i];
    points[i] = compare_at(p);
  });
  return points;
}

// points evenly spaced values on [0, 1], endpoints included.
inline std::vector<double> unit_grid(int points) {
  if (points < 2) throw ParameterError("points", "need at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

}  // namespace disclosure

#endif  // DISCLOSURE_EXPERIMENTS_HPP_
