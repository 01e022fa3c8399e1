#include "reltree/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "reltree/error.hpp"
#include "reltree/text.hpp"

namespace reltree {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

void append_text(std::string& field, std::string_view piece) {
  auto text = trim(piece);
  if (text.empty()) return;
  if (!field.empty()) field += ' ';
  field += text;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

struct PendingRecord {
  std::size_t ordinal = 0;
  std::size_t first_line = 0;
  std::string pmid;
  bool has_pmid = false;
  std::string title;
  std::string abstract;
};

// Index files keep one record per line; these four characters are escaped.
std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s, std::size_t lineno) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) {
      throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": dangling escape");
    }
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default:
        throw Error(ErrorKind::Format,
                    "index line " + std::to_string(lineno) + ": bad escape");
    }
  }
  return out;
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

std::size_t parse_count(std::string_view s, std::size_t lineno) {
  std::size_t value = 0;
  if (s.empty()) {
    throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": missing number");
  }
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw Error(ErrorKind::Format,
                  "index line " + std::to_string(lineno) + ": bad number '" +
                      std::string(s) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

}  // namespace

std::vector<Document> parse_medline_records(std::istream& in, std::string_view source) {
  std::vector<Document> docs;
  std::set<std::string, std::less<>> seen;
  PendingRecord rec;
  bool open = false;
  std::size_t ordinal = 0;
  std::string* current_field = nullptr;

  auto finish = [&] {
    if (!open) return;
    open = false;
    current_field = nullptr;
    if (!rec.has_pmid || rec.pmid.empty()) {
      throw Error(ErrorKind::Format,
                  "record " + std::to_string(rec.ordinal) + " (line " +
                      std::to_string(rec.first_line) + "): missing PMID");
    }
    if (rec.title.empty() && rec.abstract.empty()) {
      throw Error(ErrorKind::Format, "record " + std::to_string(rec.ordinal) +
                                         " (PMID " + rec.pmid +
                                         "): neither title nor abstract");
    }
    if (!seen.insert(rec.pmid).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate PMID " + rec.pmid);
    }
    docs.push_back({rec.pmid, rec.title, rec.abstract, std::string(source)});
  };

  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (!is_valid_utf8(line)) {
      throw Error(ErrorKind::InputEncoding, "invalid UTF-8 at line " + std::to_string(lineno));
    }
    if (is_blank(line)) {
      finish();
      continue;
    }
    if (!open) {
      open = true;
      rec = PendingRecord{};
      rec.ordinal = ++ordinal;
      rec.first_line = lineno;
    }
    if (line.starts_with("      ")) {
      if (current_field) append_text(*current_field, line);
      continue;
    }
    if (line.size() < 5 || line[4] != '-') {
      throw Error(ErrorKind::Format,
                  "line " + std::to_string(lineno) + ": not a MEDLINE tag line");
    }
    const auto tag = trim(std::string_view(line).substr(0, 4));
    const std::string_view value =
        line.size() > 5 ? std::string_view(line).substr(5) : std::string_view{};
    if (tag == "PMID") {
      rec.has_pmid = true;
      rec.pmid = trim(value);
      current_field = nullptr;
    } else if (tag == "TI") {
      current_field = &rec.title;
      append_text(rec.title, value);
    } else if (tag == "AB") {
      current_field = &rec.abstract;
      append_text(rec.abstract, value);
    } else {
      current_field = nullptr;
    }
  }
  finish();
  return docs;
}

std::vector<Document> parse_medline_file(const std::string& path, std::string_view source) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "file not found: " + path);
  return parse_medline_records(in, source);
}

void write_medline_records(std::ostream& out, const std::vector<Document>& docs) {
  bool first = true;
  for (const auto& doc : docs) {
    if (!first) out << '\n';
    first = false;
    out << "PMID- " << doc.id << '\n';
    if (!doc.title.empty()) out << "TI  - " << doc.title << '\n';
    if (!doc.abstract.empty()) out << "AB  - " << doc.abstract << '\n';
  }
}

const Document* CorpusIndex::find_document(std::string_view id) const {
  auto it = documents_.find(id);
  return it == documents_.end() ? nullptr : &it->second;
}

const CorpusIndex::Postings* CorpusIndex::find_postings(std::string_view phrase) const {
  auto it = postings_.find(phrase);
  return it == postings_.end() ? nullptr : &it->second;
}

CorpusIndex build_index(const std::vector<Document>& docs) {
  CorpusIndex index;
  for (const auto& doc : docs) {
    if (!index.documents_.emplace(doc.id, doc).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate document id " + doc.id);
    }
    const auto tokens = normalize_text(doc.title + " " + doc.abstract);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string phrase;
      for (std::size_t n = 0; n < kMaxPhraseTokens && i + n < tokens.size(); ++n) {
        if (n > 0) phrase += ' ';
        phrase += tokens[i + n];
        ++index.postings_[phrase][doc.id];
      }
    }
  }
  return index;
}

std::size_t count_occurrences(const CorpusIndex& index, std::string_view doc_id,
                              std::string_view phrase) {
  if (!index.find_document(doc_id)) {
    throw Error(ErrorKind::NotFound, "unknown document id " + std::string(doc_id));
  }
  const auto* postings = index.find_postings(phrase);
  if (!postings) return 0;
  auto it = postings->find(doc_id);
  return it == postings->end() ? 0 : it->second;
}

DocMatchList match_documents(const CorpusIndex& index, const RelationList& rlist) {
  DocMatchList matches;
  std::set<std::string_view> seen_phrases;
  for (const auto& entry : rlist) {
    if (!seen_phrases.insert(entry.phrase).second) continue;
    const auto* postings = index.find_postings(entry.phrase);
    if (!postings) continue;
    for (const auto& [doc_id, count] : *postings) {
      matches[doc_id].push_back({entry, count});
    }
  }
  return matches;
}

// Layout:
//   RTIDX v1
//   C <tab> <documents> <tab> <phrases>
//   D <tab> id <tab> source <tab> title <tab> abstract      (one per document)
//   P <tab> phrase <tab> doc <tab> count [<tab> doc <tab> count ...]
//   END
// Text fields escape backslash, tab, CR and LF.
void save_index(std::ostream& out, const CorpusIndex& index) {
  out << kIndexMagic << " v" << kIndexVersion << '\n';
  out << "C\t" << index.documents().size() << '\t' << index.postings().size() << '\n';
  for (const auto& [id, doc] : index.documents()) {
    out << "D\t" << escape_field(id) << '\t' << escape_field(doc.source) << '\t'
        << escape_field(doc.title) << '\t' << escape_field(doc.abstract) << '\n';
  }
  for (const auto& [phrase, postings] : index.postings()) {
    out << "P\t" << phrase;
    for (const auto& [doc_id, count] : postings) {
      out << '\t' << escape_field(doc_id) << '\t' << count;
    }
    out << '\n';
  }
  out << "END\n";
}

CorpusIndex load_index(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::Format, "index file is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string magic_prefix = std::string(kIndexMagic) + " v";
  if (!line.starts_with(magic_prefix)) {
    throw Error(ErrorKind::Format, "not an index file (missing RTIDX header)");
  }
  const std::string expected = magic_prefix + std::to_string(kIndexVersion);
  if (line != expected) {
    throw Error(ErrorKind::UnsupportedVersion,
                "unsupported index version '" + line.substr(kIndexMagic.size() + 1) +
                    "' (expected v" + std::to_string(kIndexVersion) + ")");
  }

  CorpusIndex index;
  std::size_t want_docs = 0;
  std::size_t want_phrases = 0;
  bool have_counts = false;
  bool ended = false;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (ended) {
      if (!line.empty()) {
        throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": data after END");
      }
      continue;
    }
    if (line == "END") {
      ended = true;
      continue;
    }
    const auto fields = split_tabs(line);
    const auto& kind = fields[0];
    if (kind == "C" && fields.size() == 3 && !have_counts) {
      want_docs = parse_count(fields[1], lineno);
      want_phrases = parse_count(fields[2], lineno);
      have_counts = true;
    } else if (kind == "D" && fields.size() == 5) {
      Document doc{unescape_field(fields[1], lineno), unescape_field(fields[3], lineno),
                   unescape_field(fields[4], lineno), unescape_field(fields[2], lineno)};
      if (doc.id.empty()) {
        throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": empty id");
      }
      auto id = doc.id;
      if (!index.documents_.emplace(id, std::move(doc)).second) {
        throw Error(ErrorKind::DuplicateId, "index line " + std::to_string(lineno) +
                                                ": duplicate document id " + id);
      }
    } else if (kind == "P" && fields.size() >= 4 && fields.size() % 2 == 0) {
      auto& postings = index.postings_[std::string(fields[1])];
      for (std::size_t i = 2; i < fields.size(); i += 2) {
        auto doc_id = unescape_field(fields[i], lineno);
        if (!index.documents_.contains(doc_id)) {
          throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) +
                                             ": posting for unknown document " + doc_id);
        }
        const auto count = parse_count(fields[i + 1], lineno);
        if (count == 0) {
          throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": zero count");
        }
        postings[doc_id] = count;
      }
    } else {
      throw Error(ErrorKind::Format, "index line " + std::to_string(lineno) + ": malformed record");
    }
  }
  if (!ended || !have_counts || index.documents_.size() != want_docs ||
      index.postings_.size() != want_phrases) {
    throw Error(ErrorKind::Format, "index file is truncated or inconsistent");
  }
  return index;
}

void save_index_file(const std::string& path, const CorpusIndex& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  save_index(out, index);
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path);
}

CorpusIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "file not found: " + path);
  return load_index(in);
}

}  // namespace reltree
