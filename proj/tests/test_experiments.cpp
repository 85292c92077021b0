#include <gtest/gtest.h>

#include "flowclust/experiments.hpp"

namespace flowclust {
namespace {

TEST(MidGapThreshold, WidestGap) {
  EXPECT_DOUBLE_EQ(mid_gap_threshold({0.1, 0.9, 0.15, 0.85}), 0.5);
  EXPECT_DOUBLE_EQ(mid_gap_threshold({0.0, 0.1, 1.0}), 0.55);
}

TEST(IntersectionOverUnion, Values) {
  EXPECT_DOUBLE_EQ(intersection_over_union({true, true, false, false}, {true, false, true, false}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(intersection_over_union({true, false}, {true, false}), 1.0);
  EXPECT_THROW(intersection_over_union({true}, {true, false}), std::invalid_argument);
}

TEST(CountDistinctRounded, Resolution) {
  EXPECT_EQ(count_distinct_rounded({0.1, 0.1004, 0.2, 0.2003}, 1e-3), 2u);
  EXPECT_EQ(count_distinct_rounded({0.1, 0.1004}, 1e-6), 2u);
  EXPECT_EQ(count_distinct_rounded({}, 1e-3), 0u);
}

TEST(ChainExperiment, TwoLevelsAndSmoothFiedler) {
  const ChainResult r = run_chain_experiment({});
  EXPECT_EQ(count_distinct_rounded(r.solution.u.values, 1e-3), 2u);
  EXPECT_GE(count_distinct_rounded(r.fiedler, 1e-3), 10u);
  EXPECT_GT(r.fiedler_value, 0.0);
  EXPECT_LE(r.certificate.max_violation(), 1e-2);
}

TEST(EffectiveEta, KeepsOrRescales) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 6; ++i) {
    for (NodeId j = i + 1; j < 6; ++j) e.push_back({i, j, 1.0});
  }
  const EmpiricalGraph k6(6, e);
  EXPECT_EQ(effective_eta(k6, 4, 1.0), 4u);
  // Five would need seven nodes; every degree is 5 so the rescale keeps it.
  EXPECT_EQ(effective_eta(k6, 5, 1.0), 5u);
  EXPECT_EQ(effective_eta(EmpiricalGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 5, 0.0), 3u);
}

TEST(PixelExperiment, SegmentsObject) {
  const PixelResult r = run_pixel_experiment({});
  EXPECT_GE(r.flow_iou, 0.9);
  EXPECT_EQ(r.truth_mask.size(), 256u);
  EXPECT_EQ(r.flow_mask.size(), 256u);
  EXPECT_EQ(r.spectral_mask.size(), 256u);
}

TEST(PixelExperiment, Reproducible) {
  const PixelResult a = run_pixel_experiment({});
  const PixelResult b = run_pixel_experiment({});
  EXPECT_EQ(a.image.pixels, b.image.pixels);
  EXPECT_EQ(a.solution.u.values, b.solution.u.values);
}

}  // namespace
}  // namespace flowclust
