#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "p4/confusion.hpp"
#include "p4/error.hpp"
#include "p4/metrics.hpp"

namespace p4eval {

/// Deterministic "simulated classifier": a population split by class balance
/// and the per-class hit rates.
struct SimulationSpec {
  Count population = 10000;
  double pos_fraction = 0.5;  // actual positives / population, in (0,1)
  double tpr = 1.0;           // TP / actual positives
  double tnr = 1.0;           // TN / actual negatives
};

namespace detail {

// Half away from zero.
inline Count round_count(double x) { return static_cast<Count>(std::llround(x)); }

inline void check_unit(double v, std::string_view name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(Errc::InvalidArgument,
                std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

}  // namespace detail

inline void validate(const SimulationSpec& spec) {
  if (spec.population < 1) throw Error(Errc::InvalidArgument, "population must be >= 1");
  if (!(spec.pos_fraction > 0.0 && spec.pos_fraction < 1.0)) {
    throw Error(Errc::InvalidArgument,
                "positive fraction must lie in (0,1), got " + std::to_string(spec.pos_fraction));
  }
  detail::check_unit(spec.tpr, "tpr");
  detail::check_unit(spec.tnr, "tnr");
}

/// Rounds actual positives first, then TP and TN; FN and FP are remainders.
inline ConfusionMatrix confusion_from_rates(const SimulationSpec& spec) {
  validate(spec);
  const Count ap = detail::round_count(spec.pos_fraction * static_cast<double>(spec.population));
  const Count an = spec.population - ap;
  if (ap <= 0 || an <= 0) {
    throw Error(Errc::DegeneratePopulation,
                "population of " + std::to_string(spec.population) + " with positive fraction " +
                    std::to_string(spec.pos_fraction) + " leaves one class empty");
  }
  const Count tp = detail::round_count(spec.tpr * static_cast<double>(ap));
  const Count tn = detail::round_count(spec.tnr * static_cast<double>(an));
  return ConfusionMatrix::from_counts(tp, an - tn, ap - tp, tn);
}

struct SweepPoint {
  double parameter;
  ConfusionMatrix matrix;
  MetricReport report;
};

struct SweepSeries {
  std::string varying;  // "pos_fraction" or "tpr"
  std::vector<SweepPoint> points;
};

/// k / denominator for k in [first, last]. Exact decimal grid points, so
/// mirror values (x, 1 - x) produce mirror counts.
inline std::vector<double> decimal_grid(int first, int last, int denominator = 100) {
  std::vector<double> grid;
  for (int k = first; k <= last; ++k) grid.push_back(static_cast<double>(k) / denominator);
  return grid;
}

inline std::vector<double> default_balance_grid() { return decimal_grid(1, 99); }
inline std::vector<double> default_tpr_grid() { return decimal_grid(0, 100); }

namespace detail {

inline void check_increasing(std::span<const double> grid) {
  if (grid.empty()) throw Error(Errc::BadGrid, "parameter grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(Errc::BadGrid, "grid must be strictly increasing");
  }
}

template <class MakeSpec>
SweepSeries run_series(std::string varying, std::span<const double> grid, MakeSpec make_spec) {
  check_increasing(grid);
  SweepSeries series{std::move(varying), {}};
  series.points.reserve(grid.size());
  for (double x : grid) {
    const ConfusionMatrix m = confusion_from_rates(make_spec(x));
    series.points.push_back({x, m, evaluate_all(m)});
  }
  return series;
}

}  // namespace detail

/// Metrics as a function of class balance, with fixed TPR and TNR.
inline SweepSeries balance_sweep(Count population, double tpr, double tnr,
                                 std::span<const double> grid) {
  return detail::run_series("pos_fraction", grid, [&](double x) {
    return SimulationSpec{population, x, tpr, tnr};
  });
}

/// Metrics as a function of TPR, with fixed class balance and TNR.
inline SweepSeries tpr_sweep(Count population, double pos_fraction, double tnr,
                             std::span<const double> grid) {
  return detail::run_series("tpr", grid, [&](double x) {
    return SimulationSpec{population, pos_fraction, x, tnr};
  });
}

struct NamedCase {
  std::string_view name;
  ConfusionMatrix matrix;
};

/// The four edge-case matrices: alarming precision, NPV, recall, specificity.
inline std::vector<NamedCase> paper_cases() {
  return {
      {"C1", ConfusionMatrix::from_counts(45, 995, 5, 8955)},
      {"C2", ConfusionMatrix::from_counts(8955, 5, 995, 45)},
      {"C3", ConfusionMatrix::from_counts(50, 9, 950, 8991)},
      {"C4", ConfusionMatrix::from_counts(8991, 950, 9, 50)},
  };
}

/// Simulation parameters that regenerate paper_cases() in order.
inline std::vector<SimulationSpec> paper_case_specs() {
  return {
      {10000, 0.005, 0.9, 0.9},
      {10000, 0.995, 0.9, 0.9},
      {10000, 0.10, 0.05, 0.999},
      {10000, 0.90, 0.999, 0.05},
  };
}

}  // namespace p4eval
