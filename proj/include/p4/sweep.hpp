#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "p4/confusion.hpp"
#include "p4/error.hpp"
#include "p4/metrics.hpp"

namespace p4eval {

struct CurvePoint {
  double tau;
  ConfusionMatrix matrix;
  MetricReport report;
};

/// Per-threshold confusion matrices and reports, ordered by increasing tau.
struct ThresholdCurve {
  std::vector<CurvePoint> points;

  std::vector<double> taus() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.tau);
    return out;
  }
};

namespace detail {

// Snap to 12 decimals so that i*delta lands on the double nearest the decimal
// value (7 * 0.01 -> 0.07, not 0.07000000000000001). Grids with steps delta
// and delta/2 then share bit-identical taus.
inline double snap_tau(double x) { return std::round(x * 1e12) / 1e12; }

}  // namespace detail

/// tau0, tau0 + delta, ... up to tau_n, which is always the final grid point.
inline std::vector<double> threshold_grid(double tau0, double tau_n, double delta) {
  if (!(delta > 0.0)) throw Error(Errc::BadGrid, "delta must be positive");
  if (!(tau0 >= 0.0 && tau_n <= 1.0 && tau0 < tau_n)) {
    throw Error(Errc::BadGrid, "need 0 <= tau0 < tau_n <= 1");
  }
  std::vector<double> grid;
  constexpr double kSlack = 1e-9;
  for (long k = 0;; ++k) {
    const double t = detail::snap_tau(tau0 + static_cast<double>(k) * delta);
    if (t >= tau_n - kSlack) break;
    grid.push_back(t);
  }
  grid.push_back(tau_n);
  return grid;
}

inline ThresholdCurve threshold_sweep(std::span<const ScoredSample> samples, double tau0 = 0.0,
                                      double tau_n = 1.0, double delta = 0.01) {
  if (samples.empty()) throw Error(Errc::EmptyInput, "no scored samples");
  ThresholdCurve curve;
  for (double tau : threshold_grid(tau0, tau_n, delta)) {
    const ConfusionMatrix m = classify_at_threshold(samples, tau);
    curve.points.push_back({tau, m, evaluate_all(m)});
  }
  return curve;
}

enum class PairedMetric { F1, P4 };

constexpr std::string_view pair_name(PairedMetric y) noexcept {
  return y == PairedMetric::F1 ? "mcc-f1" : "mcc-p4";
}

/// One point of an MCC-F1 or MCC-P4 curve: x = MCC', y = F1 or P4.
struct PairedCurvePoint {
  double tau;
  MetricValue x;
  MetricValue y;

  /// Points with an Undefined coordinate are kept for export only.
  bool flagged() const noexcept { return !x || !y; }
};

inline std::vector<PairedCurvePoint> paired_curve(const ThresholdCurve& curve, PairedMetric y) {
  std::vector<PairedCurvePoint> out;
  out.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    out.push_back({p.tau, p.report.mcc_scaled, y == PairedMetric::F1 ? p.report.f1 : p.report.p4});
  }
  return out;
}

struct OptimalThreshold {
  double tau;
  double distance;  // to the ideal corner (1, 1)
  PairedMetric metric_pair;
};

/// Closest fully Defined point to (1, 1); ties go to the smallest tau, so the
/// result does not depend on point order.
inline OptimalThreshold optimal_threshold(std::span<const PairedCurvePoint> paired,
                                          PairedMetric metric_pair) {
  std::optional<OptimalThreshold> best;
  for (const auto& p : paired) {
    if (p.flagged()) continue;
    const double d = std::hypot(1.0 - p.x.value(), 1.0 - p.y.value());
    if (!best || d < best->distance || (d == best->distance && p.tau < best->tau)) {
      best = OptimalThreshold{p.tau, d, metric_pair};
    }
  }
  if (!best) throw Error(Errc::NoDefinedPoints, "no curve point has both metrics defined");
  return *best;
}

inline OptimalThreshold optimal_threshold(const ThresholdCurve& curve, PairedMetric y) {
  return optimal_threshold(paired_curve(curve, y), y);
}

}  // namespace p4eval
