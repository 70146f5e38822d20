#pragma once

#include <concepts>
#include <cstdint>
#include <ranges>
#include <string>

#include "p4/error.hpp"

namespace p4eval {

using Count = std::int64_t;

enum class Label : bool { Negative = false, Positive = true };

constexpr Label swap(Label label) noexcept {
  return label == Label::Positive ? Label::Negative : Label::Positive;
}

/// A classifier output: probability of the positive class plus the true label.
struct ScoredSample {
  double score = 0.0;
  Label label = Label::Negative;

  friend bool operator==(const ScoredSample&, const ScoredSample&) = default;
};

/// 2x2 binary confusion matrix with exact integer counts.
///
/// Layout follows the shortened form
///   [ TP  FP ]
///   [ FN  TN ]
/// where columns are actual classes and rows are predicted classes. A matrix
/// always holds at least one sample; use from_counts() to build one.
class ConfusionMatrix {
 public:
  static ConfusionMatrix from_counts(Count tp, Count fp, Count fn, Count tn) {
    if (tp < 0 || fp < 0 || fn < 0 || tn < 0) {
      throw Error(Errc::NegativeCount,
                  "confusion counts must be non-negative (got " + std::to_string(tp) + "," +
                      std::to_string(fp) + "," + std::to_string(fn) + "," + std::to_string(tn) +
                      ")");
    }
    if (tp + fp + fn + tn == 0) throw Error(Errc::EmptyMatrix, "all four counts are zero");
    return ConfusionMatrix(tp, fp, fn, tn);
  }

  constexpr Count tp() const noexcept { return tp_; }
  constexpr Count fp() const noexcept { return fp_; }
  constexpr Count fn() const noexcept { return fn_; }
  constexpr Count tn() const noexcept { return tn_; }

  constexpr Count actual_positives() const noexcept { return tp_ + fn_; }
  constexpr Count actual_negatives() const noexcept { return fp_ + tn_; }
  constexpr Count predicted_positives() const noexcept { return tp_ + fp_; }
  constexpr Count predicted_negatives() const noexcept { return fn_ + tn_; }
  constexpr Count population() const noexcept { return tp_ + fp_ + fn_ + tn_; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  constexpr ConfusionMatrix(Count tp, Count fp, Count fn, Count tn) noexcept
      : tp_(tp), fp_(fp), fn_(fn), tn_(tn) {}

  Count tp_;
  Count fp_;
  Count fn_;
  Count tn_;
};

inline ConfusionMatrix from_counts(Count tp, Count fp, Count fn, Count tn) {
  return ConfusionMatrix::from_counts(tp, fp, fn, tn);
}

/// Relabels positives as negatives: TP<->TN, FP<->FN.
inline ConfusionMatrix swap_labels(const ConfusionMatrix& c) {
  return ConfusionMatrix::from_counts(c.tn(), c.fn(), c.fp(), c.tp());
}

/// Positivity predicate shared by every threshold operation: strictly above tau.
constexpr bool predicted_positive(double score, double tau) noexcept { return score > tau; }

inline void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(Errc::InvalidArgument, "threshold must lie in [0,1], got " + std::to_string(tau));
  }
}

template <std::ranges::input_range R>
  requires std::same_as<std::ranges::range_value_t<R>, ScoredSample>
ConfusionMatrix classify_at_threshold(const R& samples, double tau) {
  check_tau(tau);
  Count tp = 0, fp = 0, fn = 0, tn = 0;
  for (const ScoredSample& s : samples) {
    const bool positive = s.label == Label::Positive;
    if (predicted_positive(s.score, tau)) {
      ++(positive ? tp : fp);
    } else {
      ++(positive ? fn : tn);
    }
  }
  if (tp + fp + fn + tn == 0) throw Error(Errc::EmptyInput, "no samples to classify");
  return ConfusionMatrix::from_counts(tp, fp, fn, tn);
}

}  // namespace p4eval
