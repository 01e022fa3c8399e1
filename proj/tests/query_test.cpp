#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "reltree/error.hpp"
#include "reltree/query.hpp"
#include "test_support.hpp"

using namespace reltree;

namespace {

struct Fixture : ::testing::Test {
  Lexicons lex = reltree::testing::bundled_lexicons();
};

std::string describe(const RelationList& list) {
  std::string out;
  for (const auto& e : list) out += e.phrase + "/" + std::string(to_string(e.match_class)) + ";";
  return out;
}

}  // namespace

TEST_F(Fixture, AnalyzesFixtureQuery) {
  const auto q = analyze_query(reltree::testing::kFixtureQuery, lex.gazetteer, lex.stopwords);
  ASSERT_EQ(q.terms.size(), 3u);
  EXPECT_EQ(q.terms[0], (QueryTerm{"aspirin", TermClass::Keyword}));
  EXPECT_EQ(q.terms[1], (QueryTerm{"treatment", TermClass::Keyword}));
  EXPECT_EQ(q.terms[2], (QueryTerm{"heart attack", TermClass::Terminology}));
  EXPECT_EQ(q.k_count, 2u);
  EXPECT_EQ(q.t_count, 1u);
}

TEST_F(Fixture, DuplicateTermsCollapse) {
  const auto q = analyze_query("heart attack heart attack", lex.gazetteer, lex.stopwords);
  ASSERT_EQ(q.terms.size(), 1u);
  EXPECT_EQ(q.t_count, 1u);
  EXPECT_EQ(q.k_count, 0u);
}

TEST_F(Fixture, AllStopwordsIsEmptyQuery) {
  for (const char* raw : {"of the", "", "  ,. x"}) {
    try {
      analyze_query(raw, lex.gazetteer, lex.stopwords);
      FAIL() << raw;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::EmptyQuery);
    }
  }
}

TEST(AnalyzeQuery, LongestMatchWins) {
  Gazetteer g;
  g.insert("blood");
  g.insert("blood pressure");
  g.insert("high blood pressure");
  const auto q = analyze_query("high blood pressure blood", g, {});
  ASSERT_EQ(q.terms.size(), 2u);
  EXPECT_EQ(q.terms[0].phrase, "high blood pressure");
  EXPECT_EQ(q.terms[1].phrase, "blood");
  EXPECT_EQ(q.t_count, 2u);
}

TEST(AnalyzeQuery, StopwordsInsideTerminologiesArePreserved) {
  Gazetteer g;
  g.insert("disease of the heart");
  const StopwordSet stop{"of", "the"};
  const auto q = analyze_query("disease of the heart of", g, stop);
  ASSERT_EQ(q.terms.size(), 1u);
  EXPECT_EQ(q.terms[0].phrase, "disease of the heart");
}

TEST_F(Fixture, RelationListFixtureOrder) {
  const auto q = analyze_query(reltree::testing::kFixtureQuery, lex.gazetteer, lex.stopwords);
  const auto list = build_relation_list(q, lex.synonyms);
  EXPECT_EQ(describe(list),
            "heart attack/DT;aspirin/DK;treatment/DK;myocardial infarction/IT;"
            "acetylsalicylic acid/IK;therapy/IK;");
  EXPECT_EQ(list[3].origin.phrase, "heart attack");
  EXPECT_EQ(list[5].origin.phrase, "treatment");
}

TEST_F(Fixture, RelationListWithoutSynonyms) {
  const auto q = analyze_query("zebra fish", lex.gazetteer, lex.stopwords);
  EXPECT_EQ(describe(build_relation_list(q, lex.synonyms)), "zebra/DK;fish/DK;");
}

TEST_F(Fixture, SingleKeywordRelationList) {
  const auto q = analyze_query("aspirin", lex.gazetteer, lex.stopwords);
  EXPECT_EQ(describe(build_relation_list(q, lex.synonyms)),
            "aspirin/DK;acetylsalicylic acid/IK;");
}

TEST(RelationList, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"aa", "bb", "cc", "dd", "ee", "ff", "gg"};
  for (int trial = 0; trial < 300; ++trial) {
    Gazetteer g;
    for (int i = 0; i < 3; ++i) {
      g.insert(words[rng() % words.size()] + " " + words[rng() % words.size()]);
    }
    std::vector<std::string> lines;
    for (int i = 0; i < 5; ++i) {
      lines.push_back(words[rng() % words.size()] + "\t" + words[rng() % words.size()] + "\t" +
                      words[rng() % words.size()] + " " + words[rng() % words.size()]);
    }
    std::string raw;
    for (int i = 0; i < 6; ++i) raw += words[rng() % words.size()] + " ";

    auto load = [](const std::vector<std::string>& ls) {
      std::string text;
      for (const auto& l : ls) text += l + "\n";
      std::istringstream in(text);
      return load_synonym_store(in);
    };
    const auto store = load(lines);
    const auto q = analyze_query(raw, g, {});
    const auto list = build_relation_list(q, store);

    std::size_t direct = 0;
    for (const auto& e : list) {
      if (is_direct(e.match_class)) {
        ++direct;
        EXPECT_EQ(e.phrase, e.origin.phrase);
      } else {
        EXPECT_NE(e.phrase, e.origin.phrase);
        const auto related = expand_term(store, e.origin.phrase);
        EXPECT_NE(std::find(related.begin(), related.end(), e.phrase), related.end());
      }
      const bool term = e.origin.term_class == TermClass::Terminology;
      EXPECT_EQ(term, e.match_class == MatchClass::DirectTerminology ||
                          e.match_class == MatchClass::IndirectTerminology);
    }
    EXPECT_EQ(direct, q.k_count + q.t_count);
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return a.match_class < b.match_class;
    }));

    // Reordering the synonym file only changes order inside a class.
    std::shuffle(lines.begin(), lines.end(), rng);
    const auto shuffled = build_relation_list(q, load(lines));
    ASSERT_EQ(shuffled.size(), list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      EXPECT_EQ(shuffled[i].match_class, list[i].match_class);
    }

    // Each term analyzed on its own reproduces itself.
    for (const auto& t : q.terms) {
      const auto again = analyze_query(t.phrase, g, {});
      ASSERT_EQ(again.terms.size(), 1u);
      EXPECT_EQ(again.terms[0], t);
    }
  }
}
