#pragma once

#include <memory>
#include <string>
#include <thread>

#include "reltree/app.hpp"

namespace reltree {

/// HTTP JSON front end over a shared, read-only SearchEngine.
///
///   POST /search          {"query": string, "max_results"?: int} -> tree JSON
///   GET  /documents/{id}  {"id","title","abstract","source"}
///   GET  /health          {"status":"ok","docs":<count>}
///
/// Errors carry {"error": message} with a 4xx/5xx status.
class SearchService {
 public:
  explicit SearchService(std::shared_ptr<const SearchEngine> engine);
  ~SearchService();

  SearchService(const SearchService&) = delete;
  SearchService& operator=(const SearchService&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the bound
  /// port, throws ErrorKind::Io when the port is unavailable.
  int bind(const std::string& host, int port);

  /// Serves on the bound socket until stop() is called.
  void listen();

  /// listen() on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace reltree
