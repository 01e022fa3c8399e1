#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "naive_pipeline.hpp"
#include "random_corpus.hpp"
#include "reltree/corpus.hpp"
#include "reltree/error.hpp"
#include "test_support.hpp"

using namespace reltree;

namespace {

std::vector<Document> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_medline_records(in);
}

ErrorKind parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorKind::Io;
}

CorpusIndex fixture_index() {
  return build_index(parse_medline_file(reltree::testing::data_path("fixture/corpus.nbib")));
}

}  // namespace

TEST(Medline, ParsesBasicRecord) {
  const auto docs = parse("PMID- 1\nTI  - Aspirin treatment of heart attack\nAB  - Short.\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].id, "1");
  EXPECT_EQ(docs[0].title, "Aspirin treatment of heart attack");
  EXPECT_EQ(docs[0].abstract, "Short.");
  EXPECT_EQ(docs[0].source, "medline");
}

TEST(Medline, JoinsContinuationLinesAndIgnoresUnknownTags) {
  const auto docs = parse(
      "PMID- 77\r\nOWN - NLM\r\nTI  - A long\r\n      title\r\nAU  - Doe J\r\n"
      "      Continued author\r\nAB  - First part\r\n      second part.\r\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].title, "A long title");
  EXPECT_EQ(docs[0].abstract, "First part second part.");
}

TEST(Medline, MissingAbstractIsEmpty) {
  const auto docs = parse("PMID- 5\nTI  - Only title\n\n\nPMID- 6\nTI  - Other\n");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].abstract, "");
  EXPECT_EQ(docs[1].id, "6");
}

TEST(Medline, MissingPmidNamesRecordOrdinal) {
  try {
    parse("PMID- 1\nTI  - ok\n\nTI  - no id here\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Format);
    EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos) << e.what();
  }
}

TEST(Medline, Errors) {
  EXPECT_EQ(parse_error("PMID- 1\nTI  - a title\n\nPMID- 1\nTI  - b title\n"),
            ErrorKind::DuplicateId);
  EXPECT_EQ(parse_error("PMID- 1\n"), ErrorKind::Format);
  EXPECT_EQ(parse_error("PMID- 1\nthis is not a tag\n"), ErrorKind::Format);
  EXPECT_EQ(parse_error("PMID- 1\nTI  - \xff\n"), ErrorKind::InputEncoding);
}

TEST(Medline, FileNotFound) {
  try {
    parse_medline_file("/nonexistent/missing.nbib");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Medline, RoundTripsFixtures) {
  for (const char* rel : {"fixture/corpus.nbib", "eval/corpus.nbib"}) {
    const auto docs = parse_medline_file(reltree::testing::data_path(rel));
    std::ostringstream out;
    write_medline_records(out, docs);
    EXPECT_EQ(parse(out.str()), docs) << rel;
  }
}

TEST(Index, NGramCounts) {
  const auto idx = build_index({{"a", "Aspirin therapy", "", "medline"},
                                {"b", "aspirin aspirin", "", "medline"}});
  EXPECT_EQ(count_occurrences(idx, "a", "aspirin"), 1u);
  EXPECT_EQ(count_occurrences(idx, "a", "therapy"), 1u);
  EXPECT_EQ(count_occurrences(idx, "a", "aspirin therapy"), 1u);
  EXPECT_EQ(count_occurrences(idx, "b", "aspirin"), 2u);
  EXPECT_EQ(count_occurrences(idx, "b", "aspirin aspirin"), 1u);
}

TEST(Index, EmptyCorpus) {
  const auto idx = build_index({});
  EXPECT_EQ(idx.size(), 0u);
  EXPECT_TRUE(idx.postings().empty());
}

TEST(Index, FixtureCounts) {
  const auto idx = fixture_index();
  EXPECT_EQ(count_occurrences(idx, "1", "aspirin"), 2u);
  EXPECT_EQ(count_occurrences(idx, "1", "zebra"), 0u);
  EXPECT_EQ(count_occurrences(idx, "4", "therapy"), 0u);  // only "chemotherapy"
  try {
    count_occurrences(idx, "999", "aspirin");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFound);
  }
}

TEST(Index, CountsMatchDirectScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = oracle::make_random_case(rng, {20, 80, 4});
    std::istringstream in(c.medline());
    const auto idx = build_index(parse_medline_records(in));
    for (const auto& doc : c.docs) {
      const auto tokens = oracle::tokenize(doc.title + " " + doc.abstract);
      for (std::size_t start = 0; start < tokens.size(); start += 3) {
        for (std::size_t n = 1; n <= 5 && start + n <= tokens.size(); ++n) {
          std::string phrase;
          for (std::size_t i = start; i < start + n; ++i) phrase += (i > start ? " " : "") + tokens[i];
          EXPECT_EQ(static_cast<long>(count_occurrences(idx, doc.id, phrase)),
                    oracle::scan_count(tokens, phrase));
        }
      }
    }
  }
}

TEST(MatchDocuments, Fixture) {
  const auto lex = reltree::testing::bundled_lexicons();
  const auto q = analyze_query(reltree::testing::kFixtureQuery, lex.gazetteer, lex.stopwords);
  const auto matches = match_documents(fixture_index(), build_relation_list(q, lex.synonyms));

  auto summary = [&](const std::string& id) {
    std::string out;
    for (const auto& m : matches.at(id)) {
      out += m.entry.phrase + "/" + std::string(to_string(m.entry.match_class)) + ":" +
             std::to_string(m.count) + ";";
    }
    return out;
  };
  EXPECT_EQ(matches.size(), 3u);
  EXPECT_EQ(summary("1"), "aspirin/DK:2;myocardial infarction/IT:2;therapy/IK:1;");
  EXPECT_EQ(summary("2"), "heart attack/DT:1;aspirin/DK:1;treatment/DK:1;");
  EXPECT_EQ(summary("3"), "acetylsalicylic acid/IK:1;");
  EXPECT_FALSE(matches.contains("4"));
}

TEST(MatchDocuments, EmptyInputs) {
  EXPECT_TRUE(match_documents(fixture_index(), {}).empty());
  const auto lex = reltree::testing::bundled_lexicons();
  const auto q = analyze_query("zebra", lex.gazetteer, lex.stopwords);
  EXPECT_TRUE(match_documents(fixture_index(), build_relation_list(q, lex.synonyms)).empty());
}

TEST(MatchDocuments, PhraseAttributedToFirstEntry) {
  const auto idx = build_index({{"a", "therapy works", "", "medline"}});
  const QueryTerm cure{"cure", TermClass::Keyword};
  const QueryTerm treatment{"treatment", TermClass::Keyword};
  const RelationList list = {{"cure", cure, MatchClass::DirectKeyword},
                             {"treatment", treatment, MatchClass::DirectKeyword},
                             {"therapy", cure, MatchClass::IndirectKeyword},
                             {"therapy", treatment, MatchClass::IndirectKeyword}};
  const auto matches = match_documents(idx, list);
  ASSERT_EQ(matches.at("a").size(), 1u);
  EXPECT_EQ(matches.at("a")[0].entry.origin, cure);
}

TEST(IndexFile, RoundTrip) {
  const auto idx = build_index({{"1", "Tab\there", "line\nbreak \\ slash", "pubmed"},
                                {"2", "second doc", "", "medline"}});
  std::stringstream io;
  save_index(io, idx);
  EXPECT_TRUE(io.str().starts_with("RTIDX v1\n"));
  EXPECT_EQ(load_index(io), idx);
}

TEST(IndexFile, RejectsUnknownVersion) {
  std::stringstream io;
  save_index(io, fixture_index());
  auto text = io.str();
  text.replace(0, 8, "RTIDX v2");
  std::istringstream in(text);
  try {
    load_index(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedVersion);
    EXPECT_NE(std::string(e.what()).find("v2"), std::string::npos);
  }
}

TEST(IndexFile, RejectsGarbageAndTruncation) {
  std::istringstream garbage("hello\n");
  EXPECT_THROW(load_index(garbage), Error);

  std::stringstream io;
  save_index(io, fixture_index());
  auto text = io.str();
  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(load_index(truncated), Error);
}
