#include "reltree/query.hpp"

#include <algorithm>

#include "reltree/error.hpp"
#include "reltree/text.hpp"

namespace reltree {

std::string_view to_string(TermClass c) {
  return c == TermClass::Keyword ? "keyword" : "terminology";
}

std::string_view to_string(MatchClass c) {
  switch (c) {
    case MatchClass::DirectTerminology: return "DT";
    case MatchClass::DirectKeyword: return "DK";
    case MatchClass::IndirectTerminology: return "IT";
    case MatchClass::IndirectKeyword: return "IK";
  }
  return "?";
}

TermClass term_class_from_string(std::string_view s) {
  if (s == "keyword") return TermClass::Keyword;
  if (s == "terminology") return TermClass::Terminology;
  throw Error(ErrorKind::Format, "unknown term class '" + std::string(s) + "'");
}

const QueryTerm* Query::find(std::string_view phrase) const {
  auto it = std::find_if(terms.begin(), terms.end(),
                         [&](const QueryTerm& t) { return t.phrase == phrase; });
  return it == terms.end() ? nullptr : &*it;
}

Query analyze_query(std::string_view raw, const Gazetteer& gazetteer,
                    const StopwordSet& stopwords) {
  Query query;
  query.raw_text = std::string(raw);

  auto add = [&](std::string phrase, TermClass cls) {
    if (query.find(phrase)) return;
    (cls == TermClass::Keyword ? query.k_count : query.t_count) += 1;
    query.terms.push_back({std::move(phrase), cls});
  };

  const auto tokens = normalize_text(raw);
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t matched = 0;
    for (std::size_t n = std::min(kMaxPhraseTokens, tokens.size() - i); n > 0; --n) {
      if (gazetteer.contains(join_tokens(tokens, i, n))) {
        matched = n;
        break;
      }
    }
    if (matched > 0) {
      add(join_tokens(tokens, i, matched), TermClass::Terminology);
      i += matched;
      continue;
    }
    if (!stopwords.contains(tokens[i])) add(tokens[i], TermClass::Keyword);
    ++i;
  }

  if (query.terms.empty()) {
    throw Error(ErrorKind::EmptyQuery, "empty query");
  }
  return query;
}

RelationList build_relation_list(const Query& query, const SynonymStore& store) {
  RelationList list;
  auto push_unique = [&](RelationEntry entry) {
    auto dup = std::find_if(list.begin(), list.end(), [&](const RelationEntry& e) {
      return e.phrase == entry.phrase && e.origin == entry.origin;
    });
    if (dup == list.end()) list.push_back(std::move(entry));
  };

  for (const auto& term : query.terms) {
    push_unique({term.phrase, term,
                 term.term_class == TermClass::Terminology
                     ? MatchClass::DirectTerminology
                     : MatchClass::DirectKeyword});
  }
  for (const auto& term : query.terms) {
    for (const auto& related : expand_term(store, term.phrase)) {
      push_unique({related, term,
                   term.term_class == TermClass::Terminology
                       ? MatchClass::IndirectTerminology
                       : MatchClass::IndirectKeyword});
    }
  }

  std::stable_sort(list.begin(), list.end(),
                   [](const RelationEntry& a, const RelationEntry& b) {
                     return a.match_class < b.match_class;
                   });
  return list;
}

}  // namespace reltree
