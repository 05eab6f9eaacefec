#include <gtest/gtest.h>

#include <random>

#include "kfl/error.hpp"
#include "kfl/lab.hpp"
#include "kfl/witness.hpp"
#include "oracles/oracle.hpp"

using kfl::CountermodelTheorem;
using kfl::Frame;
using kfl::Model;
using kfl::NodeSet;
using kfl::ViolationKind;

namespace {

Frame frame(std::size_t n, std::vector<std::pair<kfl::Node, kfl::Node>> edges) {
  return Frame::from_edges(n, edges);
}

constexpr CountermodelTheorem kFrameTheorems[] = {
    CountermodelTheorem::MP,  CountermodelTheorem::A1,
    CountermodelTheorem::A4Reflexivity, CountermodelTheorem::A5a,
    CountermodelTheorem::A5bTransitivity, CountermodelTheorem::A6,
};

}  // namespace

TEST(FindViolation, TripleExamples) {
  EXPECT_FALSE(kfl::find_violation(frame(3, {{0, 1}, {1, 2}}), ViolationKind::NonTransitiveTripleInRPlus));
  auto w = kfl::find_violation(frame(4, {{0, 1}, {1, 2}, {2, 3}}),
                               ViolationKind::NonTransitiveTripleInRPlus);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->root, 0u);
  EXPECT_EQ(w->offenders, (std::vector<kfl::Node>{1, 2, 3}));
  EXPECT_TRUE(w->chain.empty());
}

TEST(FindViolation, PersistencyNeedsReachableSource) {
  Model m(frame(2, {{0, 1}}), {{"p", NodeSet({0})}});
  EXPECT_FALSE(kfl::find_violation(m, ViolationKind::PersistencyBreakRPlus));
  Model back(frame(3, {{2, 0}, {0, 1}}), {{"p", NodeSet({0})}});
  auto w = kfl::find_violation(back, ViolationKind::PersistencyBreakRPlus);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->root, 2u);
  EXPECT_EQ(w->offenders, (std::vector<kfl::Node>{0, 1}));
  ASSERT_TRUE(w->breaking_set);
  EXPECT_TRUE(w->breaking_set->contains(0));
  EXPECT_FALSE(w->breaking_set->contains(1));
  EXPECT_TRUE(kfl::witness_is_genuine(back, *w));
}

TEST(FindViolation, FrameOverloadRejectsPersistencyKinds) {
  EXPECT_THROW(kfl::find_violation(Frame(2), ViolationKind::PersistencyBreakRPlus), kfl::Error);
}

TEST(FindViolation, OtherKinds) {
  auto nr = kfl::find_violation(frame(2, {{0, 0}}), ViolationKind::NonReflexiveNode);
  ASSERT_TRUE(nr);
  EXPECT_EQ(nr->offenders, (std::vector<kfl::Node>{1}));
  auto chain = kfl::find_violation(frame(3, {{0, 1}, {1, 2}, {1, 1}}), ViolationKind::NonReflexiveInRPlus);
  ASSERT_TRUE(chain);
  EXPECT_EQ(chain->root, 0u);
  EXPECT_EQ(chain->offenders, (std::vector<kfl::Node>{2}));
  EXPECT_EQ(chain->chain, (std::vector<kfl::Node>{1}));
  auto fork = kfl::find_violation(frame(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}}),
                                  ViolationKind::NonConnectedPair);
  ASSERT_TRUE(fork);
  EXPECT_EQ(fork->root, 0u);
  EXPECT_EQ(fork->offenders, (std::vector<kfl::Node>{1, 2}));
  EXPECT_FALSE(kfl::find_violation(frame(1, {{0, 0}}), ViolationKind::NonConnectedPair));
}

TEST(Countermodel, MpExample) {
  Frame f = frame(2, {{0, 1}});
  auto w = kfl::find_violation(f, ViolationKind::NonReflexiveNode);
  ASSERT_TRUE(w);
  auto c = kfl::build_countermodel(CountermodelTheorem::MP, *w, f);
  EXPECT_EQ(c.failing_node, 0u);
  EXPECT_EQ(c.model.valuation("p"), NodeSet({0, 1}));
  EXPECT_EQ(c.model.valuation("q"), NodeSet({1}));
  EXPECT_TRUE(kfl::forces(c.model, 0, kfl::parse("p")));
  EXPECT_TRUE(kfl::forces(c.model, 0, kfl::parse("p -> q")));
  EXPECT_FALSE(kfl::forces(c.model, 0, kfl::parse("q")));
}

TEST(Countermodel, A4ReflexivityExample) {
  Frame f = frame(2, {{0, 1}});
  auto w = kfl::find_violation(f, ViolationKind::NonReflexiveInRPlus);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->root, 0u);
  EXPECT_EQ(w->offenders, (std::vector<kfl::Node>{1}));
  auto c = kfl::build_countermodel(CountermodelTheorem::A4Reflexivity, *w, f);
  EXPECT_EQ(c.model.valuation("p"), NodeSet({1}));
  EXPECT_EQ(c.failing_node, 0u);
  EXPECT_EQ(c.failing_instance, kfl::parse("(p & (p -> q)) -> (q & (q -> p))"));
}

TEST(Countermodel, A6Example) {
  Frame f = frame(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}});
  auto w = kfl::find_violation(f, ViolationKind::NonConnectedPair);
  ASSERT_TRUE(w);
  auto c = kfl::build_countermodel(CountermodelTheorem::A6, *w, f);
  EXPECT_EQ(c.failing_node, 0u);
  EXPECT_EQ(c.model.valuation("p"), NodeSet({1}));
  EXPECT_EQ(c.model.valuation("q"), NodeSet({2}));
  EXPECT_EQ(c.model.valuation("r"), NodeSet({1, 2}));
  EXPECT_TRUE(kfl::is_atom_persistent(c.model));
  EXPECT_FALSE(kfl::forces(c.model, 0, c.failing_instance));
}

TEST(Countermodel, A6NeedsReflexiveTransitiveFrame) {
  Frame f = frame(3, {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
  auto w = kfl::find_violation(f, ViolationKind::NonConnectedPair);
  ASSERT_TRUE(w);
  EXPECT_THROW(kfl::build_countermodel(CountermodelTheorem::A6, *w, f), kfl::Error);
}

TEST(Countermodel, RejectsMismatchedWitness) {
  Frame f = frame(2, {{0, 1}});
  auto w = kfl::find_violation(f, ViolationKind::NonReflexiveNode);
  EXPECT_THROW(kfl::build_countermodel(CountermodelTheorem::A1, *w, f), kfl::Error);
  auto fake = *w;
  fake.offenders = {5};
  EXPECT_THROW(kfl::build_countermodel(CountermodelTheorem::MP, fake, f), kfl::Error);
}

TEST(Countermodel, PersistencyConstructionsUseFreshAtom) {
  Model m(frame(3, {{2, 0}, {0, 1}, {1, 1}}), {{"p", NodeSet({0})}, {"phi", NodeSet{}}});
  auto w = kfl::find_violation(m, ViolationKind::PersistencyBreakRPlus);
  ASSERT_TRUE(w);
  auto c = kfl::build_countermodel(CountermodelTheorem::A4Persistency, *w, m);
  EXPECT_EQ(c.model.valuation("p"), NodeSet({0}));
  EXPECT_EQ(c.model.valuation("phi"), NodeSet{});
  EXPECT_EQ(c.model.atoms().size(), 3u);
  EXPECT_TRUE(kfl::countermodel_fails_as_claimed(c));
}

TEST(Countermodel, DeterministicAndSoundOnAllSmallFrames) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Frame& f : kfl::enumerate_frames(n))
      for (CountermodelTheorem t : kFrameTheorems) {
        auto w = kfl::find_violation(f, kfl::required_violation(t));
        if (!w) continue;
        ASSERT_TRUE(kfl::witness_is_genuine(Model(f), *w));
        if (t == CountermodelTheorem::A6 && !(kfl::is_reflexive(f) && kfl::is_transitive(f))) continue;
        auto c = kfl::build_countermodel(t, *w, f);
        ASSERT_TRUE(kfl::countermodel_fails_as_claimed(c));
        auto again = kfl::build_countermodel(t, *w, f);
        EXPECT_EQ(c.model, again.model);
        EXPECT_EQ(c.failing_node, again.failing_node);
        EXPECT_EQ(c.failing_instance, again.failing_instance);
        if (t == CountermodelTheorem::A6) EXPECT_TRUE(kfl::is_atom_persistent(c.model));
      }
}

TEST(Countermodel, SoundOnRandomDefectiveModels) {
  std::mt19937_64 rng(2026);
  int built = 0;
  for (int i = 0; i < 400; ++i) {
    std::size_t n = 1 + i % 5;
    Model m = oracle::random_model(rng, n, {"p", "q"});
    for (CountermodelTheorem t : {CountermodelTheorem::A4Persistency, CountermodelTheorem::A5bPersistency,
                                  CountermodelTheorem::A1, CountermodelTheorem::A5bTransitivity}) {
      auto w = kfl::find_violation(m, kfl::required_violation(t));
      if (!w) continue;
      auto c = kfl::build_countermodel(t, *w, m);
      ASSERT_TRUE(kfl::countermodel_fails_as_claimed(c));
      ++built;
    }
  }
  EXPECT_GT(built, 100);
}

TEST(CountermodelTheorem, Names) {
  EXPECT_EQ(kfl::countermodel_theorem_from_string("A5B-Persistency"), CountermodelTheorem::A5bPersistency);
  EXPECT_FALSE(kfl::countermodel_theorem_from_string("a9"));
  EXPECT_EQ(kfl::target_scheme(CountermodelTheorem::A4Persistency), "A4");
  EXPECT_EQ(kfl::to_string(ViolationKind::NonConnectedPair), "non-connected-pair");
}
