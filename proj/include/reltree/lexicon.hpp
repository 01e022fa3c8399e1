#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reltree {

/// Dictionary of recognized biomedical terminologies. Phrases are stored in
/// normalized form and hold between 1 and kMaxPhraseTokens tokens.
class Gazetteer {
 public:
  Gazetteer() = default;

  bool contains(std::string_view phrase) const;
  std::size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }
  const std::set<std::string, std::less<>>& phrases() const { return phrases_; }

  /// Adds an already-normalized phrase. Returns false if it was present.
  bool insert(std::string phrase);

 private:
  std::set<std::string, std::less<>> phrases_;
};

/// Related-term store used for single-hop query expansion.
class SynonymStore {
 public:
  using Entries = std::map<std::string, std::vector<std::string>, std::less<>>;

  SynonymStore() = default;

  /// Appends related phrases for a head, dropping self-references and
  /// duplicates while keeping first position.
  void add(const std::string& head, const std::vector<std::string>& related);

  const std::vector<std::string>& related(std::string_view phrase) const;
  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const SynonymStore&, const SynonymStore&) = default;

 private:
  Entries entries_;
};

Gazetteer load_gazetteer(std::istream& in);
SynonymStore load_synonym_store(std::istream& in);
std::set<std::string, std::less<>> load_stopwords(std::istream& in);

Gazetteer load_gazetteer_file(const std::string& path);
SynonymStore load_synonym_store_file(const std::string& path);
std::set<std::string, std::less<>> load_stopwords_file(const std::string& path);

/// Writes one `head<TAB>syn...` line per entry, in key order.
void write_synonym_store(std::ostream& out, const SynonymStore& store);

bool is_terminology(const Gazetteer& gazetteer, std::string_view phrase);

std::vector<std::string> expand_term(const SynonymStore& store,
                                     std::string_view phrase);

}  // namespace reltree
