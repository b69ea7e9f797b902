// tests/timeline_test.cc
//
// Copyright (c)  2026  The diarscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diarscore/timeline.h"

#include <random>

#include "diarscore/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace diarscore {
namespace {

using testing::make;

// Counts the 1 ms cells [t, t + 1) lying in both (or either) segments.
std::int64_t grid_shared(const Segment &a, const Segment &b) {
  std::int64_t n = 0;
  for (std::int64_t t = 0; t < std::max(a.end_ms(), b.end_ms()); ++t) {
    bool in_a = a.start_ms() <= t && t < a.end_ms();
    bool in_b = b.start_ms() <= t && t < b.end_ms();
    n += in_a && in_b;
  }
  return n;
}

std::int64_t grid_covered(const Segment &a, const Segment &b) {
  std::int64_t n = 0;
  for (std::int64_t t = 0; t < std::max(a.end_ms(), b.end_ms()); ++t) {
    bool in_a = a.start_ms() <= t && t < a.end_ms();
    bool in_b = b.start_ms() <= t && t < b.end_ms();
    n += in_a || in_b;
  }
  return n;
}

TEST(Segment, RejectsEmptyAndNegative) {
  EXPECT_THROW(Segment(5, 5), InvalidSegment);
  EXPECT_THROW(Segment(6, 5), InvalidSegment);
  EXPECT_THROW(Segment(-1, 5), InvalidSegment);
  EXPECT_THROW(TimeMs(-3), InvalidSegment);
  EXPECT_EQ(Segment(2, 7).duration().count(), 5);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(Segment(0, 1000), Segment(1000, 2000)).count(), 0);
  EXPECT_EQ(intersect(Segment(0, 2000), Segment(0, 2000)).count(), 2000);
  // Frozen from grid_shared.
  EXPECT_EQ(grid_shared(Segment(0, 2000), Segment(1500, 3000)), 500);
  EXPECT_EQ(intersect(Segment(0, 2000), Segment(1500, 3000)).count(), 500);
}

TEST(UnionDuration, Examples) {
  EXPECT_EQ(union_duration(Segment(0, 1000), Segment(0, 1000)).count(), 1000);
  EXPECT_EQ(union_duration(Segment(0, 1000), Segment(2000, 3000)).count(), 2000);
  EXPECT_EQ(grid_covered(Segment(0, 2000), Segment(1500, 3000)), 3000);
  EXPECT_EQ(union_duration(Segment(0, 2000), Segment(1500, 3000)).count(), 3000);
}

TEST(Intersect, MatchesGridOracleAndAlgebra) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> pos(0, 400);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a0 = pos(rng), a1 = a0 + 1 + pos(rng) / 2;
    std::int64_t b0 = pos(rng), b1 = b0 + 1 + pos(rng) / 2;
    Segment a(a0, a1), b(b0, b1);
    const auto inter = intersect(a, b).count();
    const auto uni = union_duration(a, b).count();
    ASSERT_EQ(inter, grid_shared(a, b));
    ASSERT_EQ(uni, grid_covered(a, b));
    ASSERT_EQ(inter, intersect(b, a).count());
    ASSERT_EQ(uni, union_duration(b, a).count());
    ASSERT_LE(inter, std::min(a.duration(), b.duration()).count());
    ASSERT_GE(uni, std::max(a.duration(), b.duration()).count());
    ASSERT_EQ(inter + uni, a.duration().count() + b.duration().count());
  }
}

TEST(Annotation, CanonicalOrderAndTimelines) {
  auto ann = make({{"A", Segment(2000, 3000)},
                   {"B", Segment(500, 2500)},
                   {"A", Segment(0, 1000)}});
  ASSERT_EQ(ann.turns().size(), 3u);
  EXPECT_EQ(ann.turns()[0].segment, Segment(0, 1000));
  EXPECT_EQ(ann.turns()[1].speaker, "B");
  EXPECT_EQ(ann.speakers(), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(ann.end_ms(), 3000);

  EXPECT_EQ(speaker_timeline(ann, "A"),
            (std::vector<Segment>{Segment(0, 1000), Segment(2000, 3000)}));
  EXPECT_TRUE(speaker_timeline(ann, "Z").empty());
  EXPECT_EQ(speaker_timeline(make({{"A", Segment(0, 1000)}}), "A"),
            std::vector<Segment>{Segment(0, 1000)});
}

TEST(Annotation, SameSpeakerOverlapIsAnError) {
  EXPECT_THROW(make({{"A", Segment(0, 1000)}, {"A", Segment(999, 2000)}}),
               SameSpeakerOverlap);
  // Touching turns and other-speaker overlap are fine.
  EXPECT_NO_THROW(make({{"A", Segment(0, 1000)}, {"A", Segment(1000, 2000)}}));
  EXPECT_NO_THROW(make({{"A", Segment(0, 1000)}, {"B", Segment(500, 2000)}}));
  EXPECT_THROW(make({{"", Segment(0, 1000)}}), InvalidSegment);
}

TEST(AnyOtherSpeakerActive, Examples) {
  auto solo = make({{"A", Segment(0, 1000)}, {"A", Segment(2000, 3000)}});
  EXPECT_FALSE(any_other_speaker_active(solo, "A", Segment(0, 3000)));

  auto overlapping = make({{"A", Segment(0, 1000)}, {"B", Segment(500, 2000)}});
  EXPECT_TRUE(any_other_speaker_active(overlapping, "A", Segment(0, 3000)));

  auto touching = make({{"A", Segment(0, 1000)}, {"B", Segment(1000, 2000)}});
  EXPECT_FALSE(any_other_speaker_active(touching, "A", Segment(0, 1000)));
  EXPECT_TRUE(any_other_speaker_active(touching, "A", Segment(0, 1001)));
}

TEST(AnyOtherSpeakerActive, MatchesLinearScan) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    auto ann = testing::random_annotation(rng, 3, 20000, true);
    std::uniform_int_distribution<std::int64_t> pos(0, 20000);
    for (int q = 0; q < 50; ++q) {
      std::int64_t a = pos(rng), b = a + 1 + pos(rng) / 4;
      Segment w(a, b);
      for (const std::string &spk : ann.speakers()) {
        bool expect = false;
        for (const Turn &t : ann.turns()) {
          if (t.speaker != spk && intersect(t.segment, w).count() > 0) {
            expect = true;
          }
        }
        ASSERT_EQ(any_other_speaker_active(ann, spk, w), expect);
      }
    }
  }
}

TEST(TimelineIntersection, MatchesPairwiseSum) {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    auto a = testing::random_annotation(rng, 1, 30000, true, "A");
    auto b = testing::random_annotation(rng, 1, 30000, true, "B");
    std::int64_t expect = 0;
    for (const Turn &x : a.turns()) {
      for (const Turn &y : b.turns()) {
        expect += intersect(x.segment, y.segment).count();
      }
    }
    ASSERT_EQ(timeline_intersection(a.timeline("A0"), b.timeline("B0")), expect);
  }
}

}  // namespace
}  // namespace diarscore
