#include <gtest/gtest.h>

#include "kfl/axioms.hpp"
#include "kfl/error.hpp"

using kfl::parse;
using kfl::ParseMode;

TEST(Registry, ListsSchemesInOrder) {
  std::vector<std::string> names;
  for (const auto& s : kfl::all_schemes()) names.push_back(s.name());
  EXPECT_EQ(names, (std::vector<std::string>{"A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7", "MP",
                                             "GODEL", "LIN"}));
  EXPECT_EQ(kfl::bl_schemes().size(), 9u);
  EXPECT_EQ(kfl::bl_schemes().back().name(), "MP");
}

TEST(Registry, Templates) {
  EXPECT_EQ(kfl::get_scheme("A1").conclusion(),
            parse("(PHI -> PSI) -> ((PSI -> THETA) -> (PHI -> THETA))", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("A5b").conclusion(),
            parse("((PHI & PSI) -> THETA) -> (PHI -> (PSI -> THETA))", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("GODEL").conclusion(), parse("PHI -> (PHI & PHI)", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("A2").conclusion(), parse("(PHI & PSI) -> PHI", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("A6").conclusion(),
            parse("((PHI -> PSI) -> THETA) -> (((PSI -> PHI) -> THETA) -> THETA)", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("A7").conclusion(), parse("bot -> PHI", ParseMode::Scheme));
  EXPECT_EQ(kfl::get_scheme("LIN").conclusion(), parse("(PHI -> PSI) | (PSI -> PHI)", ParseMode::Scheme));
}

TEST(Registry, ModusPonensIsARule) {
  const auto& mp = kfl::get_scheme("mp");
  EXPECT_EQ(mp.kind(), kfl::SchemeKind::Rule);
  ASSERT_EQ(mp.premises().size(), 2u);
  EXPECT_EQ(mp.metavariables(), (std::vector<std::string>{"PHI", "PSI"}));
}

TEST(Registry, LookupIsCaseInsensitive) {
  EXPECT_EQ(kfl::get_scheme("a5A").name(), "A5a");
  EXPECT_EQ(kfl::get_scheme("godel").name(), "GODEL");
  try {
    kfl::get_scheme("A8");
    FAIL();
  } catch (const kfl::UnknownNameError& e) {
    EXPECT_NE(std::string(e.what()).find("LIN"), std::string::npos);
  }
}

TEST(Registry, MetavariablesFollowFirstOccurrence) {
  EXPECT_EQ(kfl::get_scheme("A1").metavariables(), (std::vector<std::string>{"PHI", "PSI", "THETA"}));
  EXPECT_EQ(kfl::get_scheme("A7").metavariables(), (std::vector<std::string>{"PHI"}));
}
