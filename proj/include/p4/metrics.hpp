#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>

#include "p4/confusion.hpp"
#include "p4/error.hpp"

namespace p4eval {

enum class MetricRange { Unit, Signed };  // [0,1] and [-1,1]

constexpr double lower_bound(MetricRange r) noexcept { return r == MetricRange::Unit ? 0.0 : -1.0; }

/// A metric result: either a real number in its declared range or Undefined
/// (the metric's own formula hit 0/0). Undefined is never coerced to 0 or 1.
class MetricValue {
 public:
  static constexpr MetricValue defined(double v, MetricRange range) noexcept {
    return MetricValue(v, range);
  }
  static constexpr MetricValue undefined(MetricRange range) noexcept { return MetricValue(range); }

  constexpr bool is_defined() const noexcept { return value_.has_value(); }
  constexpr explicit operator bool() const noexcept { return is_defined(); }
  constexpr MetricRange range() const noexcept { return range_; }

  // Throws std::bad_optional_access when Undefined.
  constexpr double value() const { return value_.value(); }
  constexpr double value_or_nan() const noexcept {
    return value_.value_or(std::numeric_limits<double>::quiet_NaN());
  }

  /// Same Defined/Undefined state and, when Defined, |a-b| <= tol.
  bool near(const MetricValue& other, double tol) const noexcept {
    if (is_defined() != other.is_defined()) return false;
    return !is_defined() || std::abs(*value_ - *other.value_) <= tol;
  }

  friend constexpr bool operator==(const MetricValue&, const MetricValue&) = default;

 private:
  constexpr MetricValue(double v, MetricRange range) noexcept : value_(v), range_(range) {}
  constexpr explicit MetricValue(MetricRange range) noexcept : range_(range) {}

  std::optional<double> value_;
  MetricRange range_;
};

namespace detail {

__extension__ using Int128 = __int128;

inline MetricValue ratio(Count num, Count den, MetricRange range = MetricRange::Unit) {
  if (den == 0) return MetricValue::undefined(range);
  return MetricValue::defined(static_cast<double>(num) / static_cast<double>(den), range);
}

inline MetricValue ratio128(Int128 num, Int128 den) {
  if (den == 0) return MetricValue::undefined(MetricRange::Unit);
  return MetricValue::defined(
      static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)),
      MetricRange::Unit);
}

// a + b - 1, Undefined if either operand is. Addition order is irrelevant for
// IEEE doubles, so the label-swapped pair gives a bit-identical result.
inline MetricValue sum_minus_one(const MetricValue& a, const MetricValue& b) {
  if (!a || !b) return MetricValue::undefined(MetricRange::Signed);
  return MetricValue::defined(a.value() + b.value() - 1.0, MetricRange::Signed);
}

}  // namespace detail

struct BasicRates {
  MetricValue prec;  // P(actual + | classified +)
  MetricValue rec;   // P(classified + | actual +)
  MetricValue spec;  // P(classified - | actual -)
  MetricValue npv;   // P(actual - | classified -)
};

inline BasicRates basic_rates(const ConfusionMatrix& c) {
  return {detail::ratio(c.tp(), c.tp() + c.fp()), detail::ratio(c.tp(), c.tp() + c.fn()),
          detail::ratio(c.tn(), c.tn() + c.fp()), detail::ratio(c.tn(), c.tn() + c.fn())};
}

inline MetricValue precision(const ConfusionMatrix& c) { return basic_rates(c).prec; }
inline MetricValue recall(const ConfusionMatrix& c) { return basic_rates(c).rec; }
inline MetricValue specificity(const ConfusionMatrix& c) { return basic_rates(c).spec; }
inline MetricValue npv(const ConfusionMatrix& c) { return basic_rates(c).npv; }

/// F1 = 2TP / (2TP + FP + FN). Stays Defined (= 0) when TP = 0 but FP+FN > 0.
inline MetricValue f1(const ConfusionMatrix& c) {
  return detail::ratio(2 * c.tp(), 2 * c.tp() + c.fp() + c.fn());
}

/// P4, the harmonic mean of precision, recall, specificity and NPV, evaluated
/// in closed form:
///
///   P4 = 4 TP TN / (4 TP TN + (TP + TN)(FP + FN))
///
/// The closed form is the limit of the harmonic mean when one rate is zero,
/// so P4 is 0 (not Undefined) whenever TP or TN is zero and some error count
/// is non-zero. It is Undefined only for matrices with no errors and TP*TN = 0.
inline MetricValue p4(const ConfusionMatrix& c) {
  using detail::Int128;
  const Int128 num = Int128{4} * c.tp() * c.tn();
  const Int128 den = num + Int128{c.tp() + c.tn()} * (c.fp() + c.fn());
  return detail::ratio128(num, den);
}

inline MetricValue youden(const ConfusionMatrix& c) {
  const auto r = basic_rates(c);
  return detail::sum_minus_one(r.rec, r.spec);
}

inline MetricValue markedness(const ConfusionMatrix& c) {
  const auto r = basic_rates(c);
  return detail::sum_minus_one(r.prec, r.npv);
}

/// Matthews correlation coefficient. Numerator and radicand are formed in
/// 128-bit integers; the only rounding happens in the final square root and
/// division. Undefined when any marginal total is zero.
inline MetricValue mcc(const ConfusionMatrix& c) {
  using detail::Int128;
  const Count pp = c.predicted_positives();
  const Count ap = c.actual_positives();
  const Count an = c.actual_negatives();
  const Count pn = c.predicted_negatives();
  if (pp == 0 || ap == 0 || an == 0 || pn == 0) return MetricValue::undefined(MetricRange::Signed);

  const Int128 num = Int128{c.tp()} * c.tn() - Int128{c.fp()} * c.fn();
  long double radicand = 0.0L;
  constexpr Count kExactLimit = Count{1} << 31;  // product of four stays below 2^124
  if (pp < kExactLimit && ap < kExactLimit && an < kExactLimit && pn < kExactLimit) {
    radicand = static_cast<long double>(Int128{pp} * ap * an * pn);
  } else {
    radicand = static_cast<long double>(pp) * ap * an * pn;
  }
  double v = static_cast<double>(static_cast<long double>(num) / std::sqrt(radicand));
  // |num| <= sqrt(radicand) holds exactly; rounding can only overshoot by an ulp.
  if (v > 1.0) v = 1.0;
  if (v < -1.0) v = -1.0;
  return MetricValue::defined(v, MetricRange::Signed);
}

/// Maps a [-1,1] metric onto [0,1] via (v + 1) / 2.
inline MetricValue scale_to_unit(const MetricValue& v) {
  if (v.range() != MetricRange::Signed) {
    throw Error(Errc::RangeMismatch, "scale_to_unit expects a metric declared on [-1,1]");
  }
  if (!v) return MetricValue::undefined(MetricRange::Unit);
  return MetricValue::defined((v.value() + 1.0) / 2.0, MetricRange::Unit);
}

struct MetricReport {
  MetricValue prec = MetricValue::undefined(MetricRange::Unit);
  MetricValue rec = MetricValue::undefined(MetricRange::Unit);
  MetricValue spec = MetricValue::undefined(MetricRange::Unit);
  MetricValue npv = MetricValue::undefined(MetricRange::Unit);
  MetricValue f1 = MetricValue::undefined(MetricRange::Unit);
  MetricValue p4 = MetricValue::undefined(MetricRange::Unit);
  MetricValue mcc = MetricValue::undefined(MetricRange::Signed);
  MetricValue mcc_scaled = MetricValue::undefined(MetricRange::Unit);
  MetricValue j = MetricValue::undefined(MetricRange::Signed);
  MetricValue j_scaled = MetricValue::undefined(MetricRange::Unit);
  MetricValue mk = MetricValue::undefined(MetricRange::Signed);
  MetricValue mk_scaled = MetricValue::undefined(MetricRange::Unit);

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

inline MetricReport evaluate_all(const ConfusionMatrix& c) {
  const BasicRates r = basic_rates(c);
  MetricReport out;
  out.prec = r.prec;
  out.rec = r.rec;
  out.spec = r.spec;
  out.npv = r.npv;
  out.f1 = f1(c);
  out.p4 = p4(c);
  out.mcc = mcc(c);
  out.mcc_scaled = scale_to_unit(out.mcc);
  out.j = detail::sum_minus_one(r.rec, r.spec);
  out.j_scaled = scale_to_unit(out.j);
  out.mk = detail::sum_minus_one(r.prec, r.npv);
  out.mk_scaled = scale_to_unit(out.mk);
  return out;
}

/// Column order shared by every tabular export.
struct MetricColumn {
  std::string_view name;
  MetricValue MetricReport::*field;
};

inline constexpr std::array<MetricColumn, 12> kMetricColumns{{
    {"prec", &MetricReport::prec},
    {"rec", &MetricReport::rec},
    {"spec", &MetricReport::spec},
    {"npv", &MetricReport::npv},
    {"f1", &MetricReport::f1},
    {"p4", &MetricReport::p4},
    {"mcc", &MetricReport::mcc},
    {"mcc_scaled", &MetricReport::mcc_scaled},
    {"j", &MetricReport::j},
    {"j_scaled", &MetricReport::j_scaled},
    {"mk", &MetricReport::mk},
    {"mk_scaled", &MetricReport::mk_scaled},
}};

}  // namespace p4eval
