#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "p4/io.hpp"
#include "p4/metrics.hpp"
#include "p4/simulate.hpp"

namespace p4eval {
namespace {

std::string dp4(const MetricValue& v) { return io::format_fixed4(v); }

const ConfusionMatrix kC1 = from_counts(45, 995, 5, 8955);
const ConfusionMatrix kC2 = from_counts(8955, 5, 995, 45);
const ConfusionMatrix kC3 = from_counts(50, 9, 950, 8991);
const ConfusionMatrix kC4 = from_counts(8991, 950, 9, 50);

TEST(BasicRates, CaseOne) {
  const auto r = basic_rates(kC1);
  EXPECT_EQ(dp4(r.prec), "0.0433");
  EXPECT_EQ(dp4(r.rec), "0.9000");
  EXPECT_EQ(dp4(r.spec), "0.9000");
  EXPECT_EQ(dp4(r.npv), "0.9994");
}

TEST(BasicRates, CaseThree) {
  const auto r = basic_rates(kC3);
  EXPECT_EQ(dp4(r.prec), "0.8475");
  EXPECT_EQ(dp4(r.rec), "0.0500");
  EXPECT_EQ(dp4(r.spec), "0.9990");
  EXPECT_EQ(dp4(r.npv), "0.9044");
}

TEST(BasicRates, PerfectClassifier) {
  const auto r = basic_rates(from_counts(5, 0, 0, 5));
  for (const auto& v : {r.prec, r.rec, r.spec, r.npv}) EXPECT_EQ(v.value(), 1.0);
}

TEST(BasicRates, UndefinedExactlyOnZeroDenominator) {
  // Nothing predicted positive, no actual negatives.
  const auto r = basic_rates(from_counts(0, 0, 4, 0));
  EXPECT_FALSE(r.prec);
  EXPECT_TRUE(r.rec);
  EXPECT_EQ(r.rec.value(), 0.0);
  EXPECT_FALSE(r.spec);
  EXPECT_TRUE(r.npv);
  EXPECT_EQ(r.npv.value(), 0.0);
}

TEST(F1, GoldenAndPerfect) {
  EXPECT_EQ(dp4(f1(kC1)), "0.0826");
  EXPECT_EQ(dp4(f1(kC2)), "0.9471");
  EXPECT_EQ(f1(from_counts(5, 0, 0, 5)).value(), 1.0);
}

TEST(F1, ZeroTruePositivesIsZeroNotUndefined) {
  EXPECT_EQ(f1(from_counts(0, 3, 2, 10)).value(), 0.0);
  EXPECT_FALSE(f1(from_counts(0, 0, 0, 10)));
}

TEST(P4, Golden) {
  EXPECT_EQ(dp4(p4(kC1)), "0.1519");
  EXPECT_EQ(dp4(p4(kC3)), "0.1718");
  EXPECT_EQ(p4(from_counts(50, 0, 0, 50)).value(), 1.0);
}

TEST(P4, ClosedFormStaysDefinedWhenARateIsZero) {
  // Recall is 0; harmonic-mean limit is 0.
  EXPECT_EQ(p4(from_counts(0, 100, 9500, 400)).value(), 0.0);
  // No errors and TN = 0: 0/0.
  EXPECT_FALSE(p4(from_counts(10, 0, 0, 0)));
}

TEST(YoudenMarkedness, ScaledGolden) {
  EXPECT_EQ(dp4(scale_to_unit(youden(kC1))), "0.9000");
  EXPECT_EQ(dp4(scale_to_unit(markedness(kC1))), "0.5214");
  EXPECT_EQ(dp4(scale_to_unit(youden(kC3))), "0.5245");
  EXPECT_EQ(dp4(scale_to_unit(markedness(kC3))), "0.8759");
  EXPECT_EQ(youden(from_counts(5, 0, 0, 5)).value(), 1.0);
  EXPECT_EQ(markedness(from_counts(5, 0, 0, 5)).value(), 1.0);
}

TEST(YoudenMarkedness, UndefinedOperandPropagates) {
  EXPECT_FALSE(youden(from_counts(3, 0, 1, 0)));  // spec undefined
  EXPECT_FALSE(markedness(from_counts(0, 0, 1, 3)));  // prec undefined
}

TEST(Mcc, Golden) {
  EXPECT_EQ(dp4(scale_to_unit(mcc(kC1))), "0.5924");
  EXPECT_EQ(dp4(scale_to_unit(mcc(kC3))), "0.5960");
  EXPECT_EQ(dp4(mcc(kC1)), "0.1848");
  EXPECT_EQ(mcc(from_counts(1, 1, 1, 1)).value(), 0.0);
}

TEST(Mcc, UndefinedWhenAnyMarginalIsZero) {
  EXPECT_FALSE(mcc(from_counts(0, 0, 3, 4)));  // no predicted positives
  EXPECT_FALSE(mcc(from_counts(3, 4, 0, 0)));  // no predicted negatives
  EXPECT_FALSE(mcc(from_counts(0, 4, 0, 5)));  // no actual positives
  EXPECT_FALSE(mcc(from_counts(4, 0, 5, 0)));  // no actual negatives
}

TEST(Mcc, LargePopulationsStayInRange) {
  const Count big = 3'000'000'000;  // marginals beyond the exact 128-bit path
  const auto perfect = mcc(from_counts(big, 0, 0, big));
  EXPECT_NEAR(perfect.value(), 1.0, 1e-15);
  const auto inverted = mcc(from_counts(0, big, big, 0));
  EXPECT_NEAR(inverted.value(), -1.0, 1e-15);
  const auto c = mcc(from_counts(900'000, 100'000, 100'000, 900'000));
  EXPECT_NEAR(c.value(), 0.8, 1e-15);
}

TEST(ScaleToUnit, EndpointsAndPropagation) {
  EXPECT_EQ(scale_to_unit(MetricValue::defined(1.0, MetricRange::Signed)).value(), 1.0);
  EXPECT_EQ(scale_to_unit(MetricValue::defined(-1.0, MetricRange::Signed)).value(), 0.0);
  const auto u = scale_to_unit(MetricValue::undefined(MetricRange::Signed));
  EXPECT_FALSE(u);
  EXPECT_EQ(u.range(), MetricRange::Unit);
}

TEST(ScaleToUnit, RejectsUnitRangeInput) {
  try {
    scale_to_unit(MetricValue::defined(0.5, MetricRange::Unit));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RangeMismatch);
  }
}

struct GoldenRow {
  ConfusionMatrix c;
  std::array<const char*, 9> expected;  // prec rec spec npv p4 f1 mcc' j' mk'
};

TEST(EvaluateAll, ReproducesAllFourEdgeCaseTables) {
  const std::vector<GoldenRow> rows{
      {kC1, {"0.0433", "0.9000", "0.9000", "0.9994", "0.1519", "0.0826", "0.5924", "0.9000", "0.5214"}},
      {kC2, {"0.9994", "0.9000", "0.9000", "0.0433", "0.1519", "0.9471", "0.5924", "0.9000", "0.5214"}},
      {kC3, {"0.8475", "0.0500", "0.9990", "0.9044", "0.1718", "0.0944", "0.5960", "0.5245", "0.8759"}},
      {kC4, {"0.9044", "0.9990", "0.0500", "0.8475", "0.1718", "0.9494", "0.5960", "0.5245", "0.8759"}},
  };
  for (const auto& row : rows) {
    const auto r = evaluate_all(row.c);
    const std::array got{dp4(r.prec), dp4(r.rec),        dp4(r.spec),     dp4(r.npv),      dp4(r.p4),
                         dp4(r.f1),   dp4(r.mcc_scaled), dp4(r.j_scaled), dp4(r.mk_scaled)};
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], row.expected[i]) << "column " << i;
  }
}

TEST(EvaluateAll, ScaledFieldsTrackRaw) {
  const auto r = evaluate_all(kC3);
  EXPECT_EQ(r.mcc_scaled.value(), (r.mcc.value() + 1) / 2);
  EXPECT_EQ(r.j_scaled.value(), (r.j.value() + 1) / 2);
  EXPECT_EQ(r.mk_scaled.value(), (r.mk.value() + 1) / 2);
}

TEST(EvaluateAll, SymmetricFixedPoint) {
  const auto r = evaluate_all(from_counts(7, 3, 3, 7));
  EXPECT_EQ(r.prec, r.npv);
  EXPECT_EQ(r.rec, r.spec);
  EXPECT_NEAR(r.prec.value(), 0.7, 1e-15);
  // All four rates are 0.7, so P4 and F1 both equal 0.7.
  EXPECT_NEAR(r.p4.value(), 0.7, 1e-15);
  EXPECT_NEAR(r.f1.value(), 0.7, 1e-15);
  EXPECT_EQ(evaluate_all(swap_labels(from_counts(7, 3, 3, 7))), r);
}

// ---------------------------------------------------------------------------
// Properties over random matrices.

std::vector<ConfusionMatrix> random_corpus(std::size_t n, std::uint64_t seed, Count max_count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Count> d(0, max_count);
  std::vector<ConfusionMatrix> out;
  while (out.size() < n) {
    const Count tp = d(rng), fp = d(rng), fn = d(rng), tn = d(rng);
    if (tp + fp + fn + tn == 0) continue;
    out.push_back(from_counts(tp, fp, fn, tn));
  }
  // Small counts hit the Undefined and zero-rate corners far more often.
  std::uniform_int_distribution<Count> small(0, 3);
  for (std::size_t i = 0; i < n / 4; ++i) {
    const Count tp = small(rng), fp = small(rng), fn = small(rng), tn = small(rng);
    if (tp + fp + fn + tn == 0) continue;
    out.push_back(from_counts(tp, fp, fn, tn));
  }
  return out;
}

TEST(Properties, LabelSwapSymmetry) {
  for (const auto& c : random_corpus(20'000, 11, 1'000'000)) {
    const auto s = swap_labels(c);
    ASSERT_TRUE(p4(c).near(p4(s), 1e-12));
    ASSERT_TRUE(mcc(c).near(mcc(s), 1e-12));
    ASSERT_TRUE(youden(c).near(youden(s), 1e-12));
    ASSERT_TRUE(markedness(c).near(markedness(s), 1e-12));
    const auto a = basic_rates(c), b = basic_rates(s);
    ASSERT_EQ(a.prec, b.npv);
    ASSERT_EQ(a.rec, b.spec);
  }
  EXPECT_NE(f1(kC1), f1(swap_labels(kC1)));
}

TEST(Properties, HarmonicMeanEquivalence) {
  int checked = 0;
  for (const auto& c : random_corpus(20'000, 12, 1'000'000)) {
    const auto r = basic_rates(c);
    const bool positive = r.prec && r.rec && r.spec && r.npv && r.prec.value() > 0 &&
                          r.rec.value() > 0 && r.spec.value() > 0 && r.npv.value() > 0;
    if (!positive) continue;
    ++checked;
    const double h4 = 4.0 / (1 / r.prec.value() + 1 / r.rec.value() + 1 / r.spec.value() +
                             1 / r.npv.value());
    ASSERT_NEAR(p4(c).value(), h4, 1e-12);
    const double h2 = 2.0 / (1 / r.prec.value() + 1 / r.rec.value());
    ASSERT_NEAR(f1(c).value(), h2, 1e-12);
  }
  EXPECT_GT(checked, 15'000);
}

TEST(Properties, BoundsAndRanges) {
  for (const auto& c : random_corpus(20'000, 13, 1'000'000)) {
    const auto rep = evaluate_all(c);
    for (const auto& col : kMetricColumns) {
      const MetricValue& v = rep.*col.field;
      if (!v) continue;
      ASSERT_GE(v.value(), lower_bound(v.range()) - 1e-12) << col.name;
      ASSERT_LE(v.value(), 1.0 + 1e-12) << col.name;
    }
    if (!(rep.prec && rep.rec && rep.spec && rep.npv && rep.p4)) continue;
    const std::array rates{rep.prec.value(), rep.rec.value(), rep.spec.value(), rep.npv.value()};
    const double lo = *std::min_element(rates.begin(), rates.end());
    const double hi = *std::max_element(rates.begin(), rates.end());
    ASSERT_LE(rep.p4.value(), 4 * lo + 1e-12);
    ASSERT_GE(rep.p4.value(), lo - 1e-12);
    ASSERT_LE(rep.p4.value(), hi + 1e-12);
  }
}

TEST(Properties, MonotoneOnExhaustiveGrid) {
  auto at = [](Count tp, Count fp, Count fn, Count tn) { return p4(from_counts(tp, fp, fn, tn)).value(); };
  for (Count tp = 1; tp <= 12; ++tp)
    for (Count fp = 1; fp <= 12; ++fp)
      for (Count fn = 1; fn <= 12; ++fn)
        for (Count tn = 1; tn <= 12; ++tn) {
          const double v = at(tp, fp, fn, tn);
          if (tp < 12) { ASSERT_LT(v, at(tp + 1, fp, fn, tn)); }
          if (tn < 12) { ASSERT_LT(v, at(tp, fp, fn, tn + 1)); }
          if (fp < 12) { ASSERT_GT(v, at(tp, fp + 1, fn, tn)); }
          if (fn < 12) { ASSERT_GT(v, at(tp, fp, fn + 1, tn)); }
        }
}

}  // namespace
}  // namespace p4eval
