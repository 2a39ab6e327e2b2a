#include <gtest/gtest.h>

#include "mlcore/mlcore.hpp"
#include "test_util.hpp"

using namespace mlcore;
using namespace mlcore::testing;

namespace {

std::map<SpanKey, VertexSet> brute_maximal(const std::map<SpanKey, VertexSet>& all) {
  std::map<SpanKey, VertexSet> out;
  for (const auto& [key, set] : all) {
    auto [k, ts, te] = key;
    bool dominated = false;
    for (const auto& [other, _] : all) {
      auto [k2, ts2, te2] = other;
      if (other != key && k2 >= k && ts2 <= ts && te <= te2) dominated = true;
    }
    if (!dominated) out.emplace(key, set);
  }
  return out;
}

TemporalGraph constant_triangle(Timestamp t_count) {
  std::string text;
  for (Timestamp t = 0; t < t_count; ++t) {
    auto s = std::to_string(t);
    text += "a b " + s + "\nb c " + s + "\na c " + s + "\n";
  }
  return temporal_from_text(text);
}

}  // namespace

TEST(SpanCores, TriangleExample) {
  auto g = triangle_temporal();
  const auto abc = VertexSet::all(3);
  const auto ab = ids_of(g.labels(), {"a", "b"});
  std::map<SpanKey, VertexSet> expected{
      {{1, 0, 0}, abc}, {{2, 0, 0}, abc}, {{1, 1, 1}, abc}, {{2, 1, 1}, abc}, {{1, 2, 2}, ab},
      {{1, 0, 1}, abc}, {{2, 0, 1}, abc}, {{1, 1, 2}, ab},  {{1, 0, 2}, ab},
  };
  EXPECT_EQ(as_map(span_cores_all(g)), expected);
  EXPECT_EQ(as_map(span_cores_naive(g)), expected);
  EXPECT_EQ(brute_span_cores(g), expected);

  auto all = span_cores_all(g);
  for (std::size_t i = 1; i < all.size(); ++i)
    EXPECT_LT(std::tie(all[i - 1].span.ts, all[i - 1].span.te, all[i - 1].k),
              std::tie(all[i].span.ts, all[i].span.te, all[i].k));
}

TEST(SpanCores, SingleTimestampIsTheCoreChain) {
  auto g = temporal_from_text("a b 4\nb c 4\na c 4\nc d 4\n");
  auto idx = core_decomposition(g.snapshot(4));
  auto cores = span_cores_all(g);
  ASSERT_EQ(cores.size(), idx.k_star);
  for (std::uint32_t k = 1; k <= idx.k_star; ++k) {
    EXPECT_EQ(cores[k - 1].k, k);
    EXPECT_EQ(cores[k - 1].span, (Span{4, 4}));
    EXPECT_EQ(cores[k - 1].vertices, idx.core(k));
  }
}

TEST(SpanCores, DisjointSnapshotsHaveNoLongSpans) {
  auto g = temporal_from_text("a b 0\nc d 1\n");
  for (const auto& c : span_cores_all(g)) EXPECT_EQ(c.span.length(), 1u);
}

TEST(SpanCores, EmptyGraph) {
  auto g = temporal_from_text("");
  EXPECT_TRUE(span_cores_all(g).empty());
  EXPECT_TRUE(span_cores_naive(g).empty());
  EXPECT_TRUE(maximal_span_cores(g).empty());
}

TEST(SpanCores, RandomMatchesNaiveAndBruteForce) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = random_temporal(20, 8, 0.3, seed);
    auto fast = span_cores_all(g);
    EXPECT_EQ(fast, span_cores_naive(g)) << "seed " << seed;
    if (seed < 10) {
      EXPECT_EQ(as_map(fast), brute_span_cores(g)) << "seed " << seed;
    }
  }
}

TEST(SpanCores, ThreadCountDoesNotChangeOutput) {
  auto g = random_temporal(40, 12, 0.3, 2);
  EXPECT_EQ(span_cores_all(g, {10'000'000, 1}), span_cores_all(g, {10'000'000, 8}));
}

TEST(SpanCores, CapOverflowIsAnError) {
  auto g = triangle_temporal();
  EXPECT_THROW(span_cores_all(g, {8, 1}), CapExceeded);
  EXPECT_THROW(span_cores_naive(g, {8, 1}), CapExceeded);
  EXPECT_NO_THROW(span_cores_all(g, {9, 1}));
}

TEST(MaximalSpanCores, TriangleExample) {
  auto g = triangle_temporal();
  std::vector<SpanCore> expected{{2, {0, 1}, VertexSet::all(3)}, {1, {0, 2}, ids_of(g.labels(), {"a", "b"})}};
  EXPECT_EQ(maximal_span_cores(g), expected);
  EXPECT_EQ(filter_maximal_spans(span_cores_all(g)), expected);
}

TEST(MaximalSpanCores, SingleTimestampAndConstantGraph) {
  auto single = temporal_from_text("a b 4\nb c 4\na c 4\nc d 4\n");
  std::vector<SpanCore> one{{2, {4, 4}, ids_of(single.labels(), {"a", "b", "c"})}};
  EXPECT_EQ(maximal_span_cores(single), one);
  EXPECT_EQ(filter_maximal_spans(span_cores_all(single)), one);

  auto constant = constant_triangle(5);
  std::vector<SpanCore> whole{{2, {0, 4}, VertexSet::all(3)}};
  EXPECT_EQ(maximal_span_cores(constant), whole);
  EXPECT_EQ(filter_maximal_spans(span_cores_all(constant)), whole);
}

TEST(MaximalSpanCores, RandomMatchesFilter) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (double p : {0.2, 0.3, 0.5}) {
      auto g = random_temporal(20, 8, p, seed);
      auto all = span_cores_all(g);
      auto direct = maximal_span_cores(g);
      EXPECT_EQ(direct, filter_maximal_spans(all)) << "seed " << seed << " p " << p;
      if (seed < 5) {
        EXPECT_EQ(as_map(direct), brute_maximal(brute_span_cores(g))) << "seed " << seed;
      }
    }
  }
}

TEST(SpanStatistics, Examples) {
  auto g = triangle_temporal();
  auto stats = span_statistics(maximal_span_cores(g));
  EXPECT_EQ(stats.histogram, (std::map<std::size_t, std::size_t>{{2, 1}, {3, 1}}));
  EXPECT_EQ(stats.max_span_by_order, (std::map<std::uint32_t, std::size_t>{{1, 3}, {2, 2}}));
  EXPECT_EQ(stats.total, 2u);

  EXPECT_TRUE(span_statistics({}).histogram.empty());

  auto constant = span_statistics(maximal_span_cores(constant_triangle(6)));
  EXPECT_EQ(constant.histogram, (std::map<std::size_t, std::size_t>{{6, 1}}));
}
