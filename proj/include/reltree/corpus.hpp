#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "reltree/query.hpp"

namespace reltree {

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  std::string source = "medline";

  friend bool operator==(const Document&, const Document&) = default;
};

/// Parses MEDLINE tagged records (`PMID- `, `TI  - `, `AB  - `, six-space
/// continuation lines, blank-line separated). Unknown tags are skipped.
std::vector<Document> parse_medline_records(std::istream& in,
                                            std::string_view source = "medline");
std::vector<Document> parse_medline_file(const std::string& path,
                                         std::string_view source = "medline");

void write_medline_records(std::ostream& out, const std::vector<Document>& docs);

/// Phrase-occurrence index over title + abstract, for every n-gram with
/// 1 <= n <= kMaxPhraseTokens.
class CorpusIndex {
 public:
  using Postings = std::map<std::string, std::size_t, std::less<>>;  // doc id -> count
  using PostingMap = std::map<std::string, Postings, std::less<>>;

  CorpusIndex() = default;

  const std::map<std::string, Document, std::less<>>& documents() const { return documents_; }
  const PostingMap& postings() const { return postings_; }

  const Document* find_document(std::string_view id) const;
  const Postings* find_postings(std::string_view phrase) const;

  std::size_t size() const { return documents_.size(); }

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  friend CorpusIndex build_index(const std::vector<Document>& docs);
  friend CorpusIndex load_index(std::istream& in);

  std::map<std::string, Document, std::less<>> documents_;
  PostingMap postings_;
};

CorpusIndex build_index(const std::vector<Document>& docs);

/// Posting count of a phrase in one document; 0 when the phrase is absent.
std::size_t count_occurrences(const CorpusIndex& index, std::string_view doc_id,
                              std::string_view phrase);

struct DocMatch {
  RelationEntry entry;
  std::size_t count = 0;

  friend bool operator==(const DocMatch&, const DocMatch&) = default;
};

using DocMatchList = std::map<std::string, std::vector<DocMatch>, std::less<>>;

/// Each document lists at most one match per phrase: the first relation
/// entry (in list order) carrying that phrase.
DocMatchList match_documents(const CorpusIndex& index, const RelationList& rlist);

inline constexpr std::string_view kIndexMagic = "RTIDX";
inline constexpr int kIndexVersion = 1;

void save_index(std::ostream& out, const CorpusIndex& index);
CorpusIndex load_index(std::istream& in);
void save_index_file(const std::string& path, const CorpusIndex& index);
CorpusIndex load_index_file(const std::string& path);

}  // namespace reltree
