#include "reltree/app.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "reltree/error.hpp"
#include "reltree/text.hpp"

#ifndef RELTREE_DATA_DIR
#define RELTREE_DATA_DIR "data"
#endif

namespace reltree {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Config,
                "config key '" + std::string(key) + "': bad value '" + std::string(text) + "'");
  }
  return value;
}

using Setter = std::function<void(AppConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"gazetteer", [](AppConfig& c, std::string_view v) { c.gazetteer_path = v; }},
      {"synonyms", [](AppConfig& c, std::string_view v) { c.synonyms_path = v; }},
      {"stopwords", [](AppConfig& c, std::string_view v) { c.stopwords_path = v; }},
      {"corpus", [](AppConfig& c, std::string_view v) { c.corpus_path = v; }},
      {"index", [](AppConfig& c, std::string_view v) { c.index_path = v; }},
      {"static_dir", [](AppConfig& c, std::string_view v) { c.static_dir = v; }},
      {"w_dk", [](AppConfig& c, std::string_view v) {
         c.weights.direct_keyword = parse_number<double>("w_dk", v);
       }},
      {"w_dt", [](AppConfig& c, std::string_view v) {
         c.weights.direct_terminology = parse_number<double>("w_dt", v);
       }},
      {"w_idk", [](AppConfig& c, std::string_view v) {
         c.weights.indirect_keyword = parse_number<double>("w_idk", v);
       }},
      {"w_idt", [](AppConfig& c, std::string_view v) {
         c.weights.indirect_terminology = parse_number<double>("w_idt", v);
       }},
      {"bonus", [](AppConfig& c, std::string_view v) {
         c.weights.bonus = parse_number<double>("bonus", v);
       }},
      {"levels", [](AppConfig& c, std::string_view v) {
         c.weights.levels = parse_number<int>("levels", v);
       }},
      {"port", [](AppConfig& c, std::string_view v) { c.port = parse_number<int>("port", v); }},
      {"max_results", [](AppConfig& c, std::string_view v) {
         c.max_results = parse_number<std::size_t>("max_results", v);
       }},
  };
  return table;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputEncoding: return "input-encoding";
    case ErrorKind::Format: return "format";
    case ErrorKind::EmptyQuery: return "empty-query";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NoMatch: return "no-match";
    case ErrorKind::QrelsConsistency: return "qrels-consistency";
    case ErrorKind::UnsupportedVersion: return "unsupported-version";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

AppConfig AppConfig::defaults() {
  AppConfig c;
  const std::string dir = RELTREE_DATA_DIR;
  c.gazetteer_path = dir + "/lexicon/gazetteer.txt";
  c.synonyms_path = dir + "/lexicon/synonyms.tsv";
  c.stopwords_path = dir + "/lexicon/stopwords.txt";
  return c;
}

void AppConfig::validate() const {
  weights.validate();
  if (port < 0 || port > 65535) throw Error(ErrorKind::Config, "port out of range");
  if (max_results < 1) throw Error(ErrorKind::Config, "max_results must be >= 1");
}

AppConfig parse_config(std::istream& in, AppConfig base) {
  std::size_t lineno = 0;
  for (const auto& raw : read_lines(in)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(std::string_view(line).substr(0, eq));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorKind::Config, "config line " + std::to_string(lineno) +
                                         ": unknown key '" + key + "'");
    }
    it->second(base, value);
  }
  return base;
}

AppConfig load_config_file(const std::string& path, AppConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "file not found: " + path);
  return parse_config(in, std::move(base));
}

AppConfig apply_env_overrides(AppConfig config) {
  for (const auto& [key, setter] : setters()) {
    std::string name = "RELTREE_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* value = std::getenv(name.c_str())) setter(config, value);
  }
  return config;
}

Lexicons load_lexicons(const AppConfig& config) {
  Lexicons lex;
  lex.gazetteer = load_gazetteer_file(config.gazetteer_path);
  lex.synonyms = load_synonym_store_file(config.synonyms_path);
  if (!config.stopwords_path.empty()) {
    lex.stopwords = load_stopwords_file(config.stopwords_path);
  }
  return lex;
}

SearchEngine::SearchEngine(AppConfig config, Lexicons lexicons,
                           std::shared_ptr<const CorpusIndex> index)
    : config_(std::move(config)), lexicons_(std::move(lexicons)), index_(std::move(index)) {
  config_.validate();
}

const CorpusIndex& SearchEngine::index() const {
  if (!index_) throw Error(ErrorKind::NotFound, "index not loaded");
  return *index_;
}

std::vector<RankScore> SearchEngine::score_all(const Query& query) const {
  const auto& idx = index();
  const auto rlist = build_relation_list(query, lexicons_.synonyms);
  const auto matches = match_documents(idx, rlist);

  std::vector<RankScore> scores;
  scores.reserve(matches.size());
  for (const auto& [doc_id, doc_matches] : matches) {
    const auto summary = summarize_matches(doc_id, doc_matches, query);
    if (summary.matched_terms() == 0) continue;
    scores.push_back(score_document(summary, config_.weights));
  }
  std::sort(scores.begin(), scores.end(), ranks_before);
  return scores;
}

RankTree SearchEngine::run_search(std::string_view raw_query,
                                  std::optional<std::size_t> max_results) const {
  const auto& idx = index();
  const auto query = analyze_query(raw_query, lexicons_.gazetteer, lexicons_.stopwords);
  auto scores = score_all(query);
  const std::size_t limit = max_results.value_or(config_.max_results);
  if (scores.size() > limit) scores.resize(limit);
  return build_tree(scores, idx.documents(), query, config_.weights.levels);
}

Qrels parse_qrels(std::istream& in) {
  Qrels qrels;
  std::set<std::string, std::less<>> ids;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(in)) {
    ++lineno;
    if (!is_valid_utf8(line)) {
      throw Error(ErrorKind::InputEncoding, "qrels line " + std::to_string(lineno) + ": invalid UTF-8");
    }
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorKind::Format, "qrels line " + std::to_string(lineno) +
                                         ": expected query-id, query text and doc ids");
    }
    QrelsEntry entry{trim(fields[0]), fields[1], {}};
    if (entry.query_id.empty()) {
      throw Error(ErrorKind::Format, "qrels line " + std::to_string(lineno) + ": empty query id");
    }
    if (!ids.insert(entry.query_id).second) {
      throw Error(ErrorKind::DuplicateId, "qrels line " + std::to_string(lineno) +
                                              ": duplicate query id " + entry.query_id);
    }
    for (const auto& id : split(fields[2], ',')) {
      auto doc = trim(id);
      if (doc.empty()) continue;
      if (std::find(entry.relevant.begin(), entry.relevant.end(), doc) == entry.relevant.end()) {
        entry.relevant.push_back(std::move(doc));
      }
    }
    if (entry.relevant.empty()) {
      throw Error(ErrorKind::Format, "qrels line " + std::to_string(lineno) +
                                         ": no relevant documents");
    }
    qrels.push_back(std::move(entry));
  }
  return qrels;
}

Qrels load_qrels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "file not found: " + path);
  return parse_qrels(in);
}

void write_qrels(std::ostream& out, const Qrels& qrels) {
  for (const auto& e : qrels) {
    out << e.query_id << '\t' << e.text << '\t';
    for (std::size_t i = 0; i < e.relevant.size(); ++i) {
      if (i) out << ',';
      out << e.relevant[i];
    }
    out << '\n';
  }
}

EvalReport evaluate(const SearchEngine& engine, const Qrels& qrels) {
  const auto& idx = engine.index();
  for (const auto& e : qrels) {
    for (const auto& doc : e.relevant) {
      if (!idx.find_document(doc)) {
        throw Error(ErrorKind::QrelsConsistency,
                    "query " + e.query_id + ": relevant document " + doc + " not in corpus");
      }
    }
  }

  EvalReport report;
  for (const auto& e : qrels) {
    const auto tree = engine.run_search(e.text);
    std::set<std::string, std::less<>> retrieved;
    for (const auto& c : tree.clusters) {
      for (const auto& d : c.children) retrieved.insert(d.doc_id);
    }
    QueryEval q;
    q.query_id = e.query_id;
    q.retrieved = retrieved.size();
    q.relevant = e.relevant.size();
    for (const auto& doc : e.relevant) q.hits += retrieved.contains(doc);
    q.precision = q.retrieved == 0 ? 0.0
                                   : static_cast<double>(q.hits) / static_cast<double>(q.retrieved);
    q.recall = static_cast<double>(q.hits) / static_cast<double>(q.relevant);
    report.queries.push_back(q);
  }
  if (!report.queries.empty()) {
    for (const auto& q : report.queries) {
      report.macro_precision += q.precision;
      report.macro_recall += q.recall;
    }
    report.macro_precision /= static_cast<double>(report.queries.size());
    report.macro_recall /= static_cast<double>(report.queries.size());
  }
  return report;
}

std::string render_eval_text(const EvalReport& report) {
  std::string out;
  for (const auto& q : report.queries) {
    out += q.query_id + " P=" + format_fixed(q.precision) + " R=" + format_fixed(q.recall) +
           " retrieved=" + std::to_string(q.retrieved) +
           " relevant=" + std::to_string(q.relevant) + " hits=" + std::to_string(q.hits) + "\n";
  }
  out += "macro P=" + format_fixed(report.macro_precision) +
         " R=" + format_fixed(report.macro_recall) + "\n";
  return out;
}

std::string serialize_eval(const EvalReport& report) {
  nlohmann::ordered_json queries = nlohmann::ordered_json::array();
  for (const auto& q : report.queries) {
    queries.push_back({{"query_id", q.query_id},
                       {"precision", q.precision},
                       {"recall", q.recall},
                       {"retrieved", q.retrieved},
                       {"relevant", q.relevant},
                       {"hits", q.hits}});
  }
  nlohmann::ordered_json root;
  root["queries"] = std::move(queries);
  root["macro_precision"] = report.macro_precision;
  root["macro_recall"] = report.macro_recall;
  return root.dump();
}

}  // namespace reltree
