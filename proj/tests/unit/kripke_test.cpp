#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "kfl/error.hpp"
#include "kfl/kripke.hpp"
#include "kfl/lab.hpp"
#include "oracles/oracle.hpp"

using kfl::Frame;
using kfl::NodeSet;

namespace {

Frame frame(std::size_t n, std::vector<std::pair<kfl::Node, kfl::Node>> edges) {
  return Frame::from_edges(n, edges);
}

const Frame kChain = frame(3, {{0, 1}, {1, 2}});
const Frame kLoop = frame(1, {{0, 0}});
const Frame kTwoCycle = frame(2, {{0, 1}, {1, 0}});

}  // namespace

TEST(Frame, SizeLimits) {
  EXPECT_THROW(Frame(0), kfl::Error);
  EXPECT_THROW(Frame(65), kfl::Error);
  EXPECT_NO_THROW(Frame(64));
  EXPECT_THROW(frame(2, {{0, 2}}), std::out_of_range);
}

TEST(Frame, CodesEnumerateRelationsLexicographically) {
  EXPECT_EQ(Frame::from_code(2, 0b1000), frame(2, {{0, 0}}));
  EXPECT_EQ(Frame::from_code(2, 0b0001), frame(2, {{1, 1}}));
  EXPECT_EQ(Frame::from_code(2, 0b0100), frame(2, {{0, 1}}));
  for (std::uint64_t c = 0; c < 512; ++c) EXPECT_EQ(Frame::from_code(3, c).code(), c);
}

TEST(Image, Examples) {
  EXPECT_EQ(kfl::image(kChain, 0), NodeSet({1}));
  EXPECT_EQ(kfl::image(Frame(3), 2), NodeSet{});
  EXPECT_EQ(kfl::image(kLoop, 0), NodeSet({0}));
  EXPECT_THROW(kfl::image(kChain, 3), std::out_of_range);
}

TEST(NStepImage, Examples) {
  EXPECT_EQ(kfl::n_step_image(kChain, 0, 2), NodeSet({2}));
  EXPECT_EQ(kfl::n_step_image(kChain, 0, 3), NodeSet{});
  for (std::size_t s = 1; s < 5; ++s) EXPECT_EQ(kfl::n_step_image(kLoop, 0, s), NodeSet({0}));
  EXPECT_EQ(kfl::n_step_image(kTwoCycle, 0, 2), NodeSet({0}));
}

TEST(Reach, Examples) {
  EXPECT_EQ(kfl::reach_plus(kChain, 0), NodeSet({1, 2}));
  EXPECT_EQ(kfl::reach_plusplus(kChain, 0), NodeSet({2}));
  EXPECT_EQ(kfl::reach_plus(kLoop, 0), NodeSet({0}));
  EXPECT_EQ(kfl::reach_plusplus(kLoop, 0), NodeSet({0}));
  EXPECT_EQ(kfl::reach_plus(kTwoCycle, 0), NodeSet({0, 1}));
}

TEST(Reach, AgreesWithWarshallClosure) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Frame& f : kfl::enumerate_frames(n)) {
      auto plus = oracle::closure(oracle::relation(f));
      for (kfl::Node k = 0; k < n; ++k) {
        oracle::Truth row(plus[k].begin(), plus[k].end());
        ASSERT_EQ(kfl::reach_plus(f, k).bits(), oracle::bits(row));
        NodeSet pp;
        for (kfl::Node j : kfl::image(f, k)) pp |= kfl::reach_plus(f, j);
        EXPECT_EQ(kfl::reach_plusplus(f, k), pp);
        EXPECT_EQ(kfl::reach_plus(f, k), kfl::image(f, k) | kfl::reach_plusplus(f, k));
      }
    }
}

TEST(Restriction, TransitivityExamples) {
  EXPECT_TRUE(kfl::is_transitive_on(kChain, NodeSet({1, 2})));
  EXPECT_TRUE(kfl::is_transitive_on(kChain, kfl::reach_plus(kChain, 0)));
  EXPECT_FALSE(kfl::is_transitive_on(kChain, NodeSet({0, 1, 2})));
  Frame loops = frame(3, {{0, 0}, {1, 1}, {2, 2}});
  for (std::uint64_t c = 0; c < 8; ++c) {
    EXPECT_TRUE(kfl::is_transitive_on(loops, NodeSet::from_bits(c)));
    EXPECT_TRUE(kfl::is_reflexive_on(loops, NodeSet::from_bits(c)));
  }
}

TEST(Restriction, RestrictsSourcesOnly) {
  kfl::Restriction r(kChain, NodeSet({1}));
  EXPECT_TRUE(r.has_edge(1, 2));
  EXPECT_FALSE(r.has_edge(0, 1));
  EXPECT_EQ(r.image(0), NodeSet{});
  EXPECT_TRUE(r.is_transitive());
  EXPECT_FALSE(r.is_reflexive());
}

TEST(Connected, Examples) {
  EXPECT_TRUE(kfl::is_connected(frame(2, {{0, 1}, {0, 0}, {1, 1}})));
  EXPECT_FALSE(kfl::is_connected(frame(3, {{0, 1}, {0, 2}, {1, 1}, {2, 2}})));
  EXPECT_TRUE(kfl::is_connected(Frame(3)));
  EXPECT_FALSE(kfl::is_connected(frame(2, {{0, 1}})));
}

TEST(Properties, AgreeWithMatrixOracle) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Frame& f : kfl::enumerate_frames(n)) {
      auto r = oracle::relation(f);
      ASSERT_EQ(kfl::is_reflexive(f), oracle::reflexive(r));
      ASSERT_EQ(kfl::is_transitive(f), oracle::transitive(r));
      ASSERT_EQ(kfl::is_connected(f), oracle::connected(r));
      for (std::uint64_t s = 0; s < (1u << n); ++s)
        ASSERT_EQ(kfl::is_successor_closed(f, NodeSet::from_bits(s)),
                  oracle::successor_closed(r, s));
    }
}

TEST(Properties, ConnectednessForcesReflexiveReach) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Frame& f : kfl::enumerate_frames(n)) {
      if (!kfl::is_connected(f)) continue;
      for (kfl::Node k = 0; k < n; ++k)
        ASSERT_TRUE(kfl::is_reflexive_on(f, kfl::reach_plus(f, k)));
    }
}

TEST(Properties, ReflexiveLocallyTransitiveFramesAreTransitive) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Frame& f : kfl::enumerate_frames(n)) {
      if (!kfl::is_reflexive(f)) continue;
      bool local = true;
      for (kfl::Node k = 0; k < n; ++k) local = local && kfl::is_transitive_on(f, kfl::reach_plus(f, k));
      if (local) ASSERT_TRUE(kfl::is_transitive_on(f, f.nodes()));
    }
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20000; ++i) {
    // Random reflexive 5-node frames.
    Frame f = Frame::from_code(5, (rng() & ((std::uint64_t{1} << 25) - 1)) | 0x1041041);
    ASSERT_TRUE(kfl::is_reflexive(f));
    bool local = true;
    for (kfl::Node k = 0; k < 5; ++k) local = local && kfl::is_transitive_on(f, kfl::reach_plus(f, k));
    if (local) ASSERT_TRUE(kfl::is_transitive(f));
  }
}

TEST(ShortestWalk, FindsShortestWithTies) {
  Frame f = frame(4, {{0, 2}, {0, 1}, {1, 3}, {2, 3}});
  auto w = kfl::shortest_walk(f, 0, 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::vector<kfl::Node>{0, 1, 3}));
  EXPECT_FALSE(kfl::shortest_walk(f, 3, 0));
  auto loop = kfl::shortest_walk(kTwoCycle, 0, 1, 2);
  ASSERT_TRUE(loop);
  EXPECT_EQ(*loop, (std::vector<kfl::Node>{0, 1, 0, 1}));
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(kfl::enumerate_frames(1).size(), 2u);
  EXPECT_EQ(kfl::enumerate_frames(2).size(), 16u);
  EXPECT_EQ(kfl::enumerate_frames(3).size(), 512u);
  std::uint64_t seen = 0;
  std::uint64_t previous = 0;
  for (const Frame& f : kfl::enumerate_frames(2)) {
    if (seen) EXPECT_GT(f.code(), previous);
    previous = f.code();
    ++seen;
  }
  EXPECT_EQ(seen, 16u);
}

TEST(Enumerate, ReflexiveFrameCount) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::uint64_t count = 0;
    for (const Frame& f : kfl::enumerate_frames(n)) count += kfl::is_reflexive(f);
    EXPECT_EQ(count, std::uint64_t{1} << (n * n - n)) << n;
  }
}

TEST(Enumerate, BudgetGuard) {
  EXPECT_THROW(kfl::enumerate_frames(5), kfl::BudgetError);
  EXPECT_NO_THROW(kfl::enumerate_frames(5, true));
  EXPECT_THROW(kfl::enumerate_frames(6, true), kfl::BudgetError);
  EXPECT_THROW(kfl::enumerate_frames(0), kfl::Error);
}
