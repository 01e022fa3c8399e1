#include "cli.hpp"

#include <csignal>
#include <iostream>
#include <memory>
#include <optional>

#include <pthread.h>

#include <CLI11.hpp>

#include "reltree/app.hpp"
#include "reltree/error.hpp"
#include "reltree/server.hpp"

namespace reltree::cli {
namespace {

struct CommonOptions {
  std::string config_path;
  std::string gazetteer;
  std::string synonyms;
  std::string stopwords;
};

AppConfig resolve_config(const CommonOptions& opts) {
  AppConfig config = AppConfig::defaults();
  if (!opts.config_path.empty()) config = load_config_file(opts.config_path, config);
  config = apply_env_overrides(std::move(config));
  if (!opts.gazetteer.empty()) config.gazetteer_path = opts.gazetteer;
  if (!opts.synonyms.empty()) config.synonyms_path = opts.synonyms;
  if (!opts.stopwords.empty()) config.stopwords_path = opts.stopwords;
  config.validate();
  return config;
}

std::shared_ptr<const SearchEngine> open_engine(const AppConfig& config,
                                                const std::string& index_path) {
  auto index = std::make_shared<const CorpusIndex>(load_index_file(index_path));
  return std::make_shared<const SearchEngine>(config, load_lexicons(config), std::move(index));
}

int serve_until_signal(SearchService& service, const std::string& host, int port,
                       std::ostream& out) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int bound = service.bind(host, port);
  service.start();
  out << "listening on http://" << host << ":" << bound << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  service.stop();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reltree: rank-clustered biomedical document search", "reltree"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path, "key=value configuration file");
  app.add_option("--gazetteer", common.gazetteer, "terminology gazetteer file");
  app.add_option("--synonyms", common.synonyms, "synonym TSV file");
  app.add_option("--stopwords", common.stopwords, "stopword file");

  std::string corpus_file, index_file, output_file, source = "medline";
  auto* index_cmd = app.add_subcommand("index", "build an index from MEDLINE records");
  index_cmd->add_option("corpus-file", corpus_file)->required();
  index_cmd->add_option("-o,--output", output_file, "index file to write")->required();
  index_cmd->add_option("--source", source, "database label stored on each document");

  std::string query, format = "text";
  std::optional<std::size_t> max_results;
  auto* search_cmd = app.add_subcommand("search", "run a query against an index");
  search_cmd->add_option("index-file", index_file)->required();
  search_cmd->add_option("query", query)->required();
  search_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  search_cmd->add_option("--max-results", max_results)->check(CLI::PositiveNumber);

  std::optional<int> port;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "serve the HTTP JSON API");
  serve_cmd->add_option("index-file", index_file)->required();
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);

  std::string qrels_file;
  auto* eval_cmd = app.add_subcommand("eval", "precision/recall against relevance judgments");
  eval_cmd->add_option("index-file", index_file)->required();
  eval_cmd->add_option("qrels-file", qrels_file)->required();
  eval_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "reltree: " << e.what() << " (see --help)\n";
    return 2;
  }

  try {
    if (*index_cmd) {
      const auto docs = parse_medline_file(corpus_file, source);
      save_index_file(output_file, build_index(docs));
      out << "indexed " << docs.size() << " documents into " << output_file << "\n";
      return 0;
    }

    const auto config = resolve_config(common);
    const auto engine = open_engine(config, index_file);

    if (*search_cmd) {
      const auto tree = engine->run_search(query, max_results);
      if (format == "json") {
        out << serialize_tree(tree) << "\n";
      } else {
        out << render_tree_text(tree);
      }
      return 0;
    }
    if (*eval_cmd) {
      const auto report = evaluate(*engine, load_qrels_file(qrels_file));
      out << (format == "json" ? serialize_eval(report) + "\n" : render_eval_text(report));
      return 0;
    }
    if (*serve_cmd) {
      SearchService service(engine);
      return serve_until_signal(service, host, port.value_or(config.port), out);
    }
  } catch (const Error& e) {
    err << "reltree: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "reltree: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace reltree::cli
