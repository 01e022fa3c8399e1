#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reltree/lexicon.hpp"

namespace reltree {

using StopwordSet = std::set<std::string, std::less<>>;

enum class TermClass { Keyword, Terminology };

enum class MatchClass {
  DirectTerminology,
  DirectKeyword,
  IndirectTerminology,
  IndirectKeyword,
};

std::string_view to_string(TermClass c);
std::string_view to_string(MatchClass c);
TermClass term_class_from_string(std::string_view s);

inline bool is_direct(MatchClass c) {
  return c == MatchClass::DirectTerminology || c == MatchClass::DirectKeyword;
}

struct QueryTerm {
  std::string phrase;
  TermClass term_class = TermClass::Keyword;

  friend bool operator==(const QueryTerm&, const QueryTerm&) = default;
};

struct Query {
  std::string raw_text;
  std::vector<QueryTerm> terms;
  std::size_t k_count = 0;
  std::size_t t_count = 0;

  std::size_t denominator() const { return k_count + t_count; }
  const QueryTerm* find(std::string_view phrase) const;
};

struct RelationEntry {
  std::string phrase;
  QueryTerm origin;
  MatchClass match_class = MatchClass::DirectKeyword;

  friend bool operator==(const RelationEntry&, const RelationEntry&) = default;
};

using RelationList = std::vector<RelationEntry>;

/// Tags terminologies by greedy left-to-right longest match against the
/// gazetteer; leftover non-stopword tokens become keywords.
Query analyze_query(std::string_view raw, const Gazetteer& gazetteer,
                    const StopwordSet& stopwords);

/// Direct entries for every term, then one indirect entry per synonym,
/// ordered DirectTerminology, DirectKeyword, IndirectTerminology,
/// IndirectKeyword (stable within a class).
RelationList build_relation_list(const Query& query, const SynonymStore& store);

}  // namespace reltree
