#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reltree/corpus.hpp"
#include "reltree/lexicon.hpp"
#include "reltree/query.hpp"
#include "reltree/ranking.hpp"
#include "reltree/tree.hpp"

namespace reltree {

struct AppConfig {
  std::string gazetteer_path;
  std::string synonyms_path;
  std::string stopwords_path;
  std::string corpus_path;
  std::string index_path;
  std::string static_dir;  // optional web UI assets served at /
  Weights weights;
  int port = 8750;
  std::size_t max_results = 500;

  /// Defaults, with lexicon paths pointing at the bundled data directory.
  static AppConfig defaults();

  void validate() const;
};

/// Applies `key=value` lines ('#' comments, blank lines allowed) on top of
/// `base`. Unknown keys are a config error.
AppConfig parse_config(std::istream& in, AppConfig base = AppConfig::defaults());
AppConfig load_config_file(const std::string& path, AppConfig base = AppConfig::defaults());

/// Overrides from RELTREE_<KEY> environment variables.
AppConfig apply_env_overrides(AppConfig config);

struct Lexicons {
  Gazetteer gazetteer;
  SynonymStore synonyms;
  StopwordSet stopwords;
};

Lexicons load_lexicons(const AppConfig& config);

/// Immutable search state shared by the CLI, the evaluator and the service.
class SearchEngine {
 public:
  SearchEngine(AppConfig config, Lexicons lexicons,
               std::shared_ptr<const CorpusIndex> index);

  const AppConfig& config() const { return config_; }
  const Lexicons& lexicons() const { return lexicons_; }
  const CorpusIndex& index() const;

  /// Full pipeline. Results are truncated to max_results (or the config
  /// default) by global rank before the tree is assembled.
  RankTree run_search(std::string_view raw_query,
                      std::optional<std::size_t> max_results = std::nullopt) const;

  /// Every scored document, globally ordered, before truncation.
  std::vector<RankScore> score_all(const Query& query) const;

 private:
  AppConfig config_;
  Lexicons lexicons_;
  std::shared_ptr<const CorpusIndex> index_;
};

struct QrelsEntry {
  std::string query_id;
  std::string text;
  std::vector<std::string> relevant;  // file order, deduplicated
};

using Qrels = std::vector<QrelsEntry>;

Qrels parse_qrels(std::istream& in);
Qrels load_qrels_file(const std::string& path);
void write_qrels(std::ostream& out, const Qrels& qrels);

struct QueryEval {
  std::string query_id;
  double precision = 0;
  double recall = 0;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t hits = 0;
};

struct EvalReport {
  std::vector<QueryEval> queries;
  double macro_precision = 0;
  double macro_recall = 0;
};

EvalReport evaluate(const SearchEngine& engine, const Qrels& qrels);

std::string render_eval_text(const EvalReport& report);
std::string serialize_eval(const EvalReport& report);

}  // namespace reltree
