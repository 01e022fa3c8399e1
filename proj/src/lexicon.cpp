#include "reltree/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "reltree/error.hpp"
#include "reltree/text.hpp"

namespace reltree {
namespace {

std::string line_ref(std::size_t lineno) {
  return "line " + std::to_string(lineno);
}

void check_encoding(const std::string& line, std::size_t lineno) {
  if (!is_valid_utf8(line)) {
    throw Error(ErrorKind::InputEncoding, "invalid UTF-8 at " + line_ref(lineno));
  }
}

std::string normalized_bounded(std::string_view raw, std::size_t lineno) {
  auto tokens = normalize_text(raw);
  if (tokens.size() > kMaxPhraseTokens) {
    throw Error(ErrorKind::Format,
                line_ref(lineno) + ": phrase has " +
                    std::to_string(tokens.size()) + " tokens (max " +
                    std::to_string(kMaxPhraseTokens) + ")");
  }
  return join_tokens(tokens);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

template <typename Loader>
auto open_and_load(const std::string& path, Loader loader) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return loader(in);
}

}  // namespace

bool Gazetteer::contains(std::string_view phrase) const {
  return phrases_.find(phrase) != phrases_.end();
}

bool Gazetteer::insert(std::string phrase) {
  if (phrase.empty()) return false;
  return phrases_.insert(std::move(phrase)).second;
}

void SynonymStore::add(const std::string& head,
                       const std::vector<std::string>& related) {
  auto& list = entries_[head];
  for (const auto& phrase : related) {
    if (phrase.empty() || phrase == head) continue;
    if (std::find(list.begin(), list.end(), phrase) == list.end()) {
      list.push_back(phrase);
    }
  }
  if (list.empty()) entries_.erase(head);
}

const std::vector<std::string>& SynonymStore::related(std::string_view phrase) const {
  static const std::vector<std::string> kNone;
  auto it = entries_.find(phrase);
  return it == entries_.end() ? kNone : it->second;
}

Gazetteer load_gazetteer(std::istream& in) {
  Gazetteer gazetteer;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    check_encoding(line, lineno);
    if (!line.empty() && line.front() == '#') continue;
    gazetteer.insert(normalized_bounded(line, lineno));
  }
  return gazetteer;
}

SynonymStore load_synonym_store(std::istream& in) {
  SynonymStore store;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    check_encoding(line, lineno);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() < 2) {
      throw Error(ErrorKind::Format,
                  line_ref(lineno) + ": expected head and at least one related phrase");
    }
    auto head = normalized_bounded(fields[0], lineno);
    if (head.empty()) {
      throw Error(ErrorKind::Format, line_ref(lineno) + ": empty head phrase");
    }
    std::vector<std::string> related;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      related.push_back(normalized_bounded(fields[i], lineno));
    }
    store.add(head, related);
  }
  return store;
}

std::set<std::string, std::less<>> load_stopwords(std::istream& in) {
  std::set<std::string, std::less<>> words;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    check_encoding(line, lineno);
    if (!line.empty() && line.front() == '#') continue;
    for (auto& token : normalize_text(line)) words.insert(std::move(token));
  }
  return words;
}

Gazetteer load_gazetteer_file(const std::string& path) {
  return open_and_load(path, [](std::istream& in) { return load_gazetteer(in); });
}

SynonymStore load_synonym_store_file(const std::string& path) {
  return open_and_load(path, [](std::istream& in) { return load_synonym_store(in); });
}

std::set<std::string, std::less<>> load_stopwords_file(const std::string& path) {
  return open_and_load(path, [](std::istream& in) { return load_stopwords(in); });
}

void write_synonym_store(std::ostream& out, const SynonymStore& store) {
  for (const auto& [head, related] : store.entries()) {
    out << head;
    for (const auto& phrase : related) out << '\t' << phrase;
    out << '\n';
  }
}

bool is_terminology(const Gazetteer& gazetteer, std::string_view phrase) {
  return gazetteer.contains(phrase);
}

std::vector<std::string> expand_term(const SynonymStore& store,
                                     std::string_view phrase) {
  return store.related(phrase);
}

}  // namespace reltree
