#include "reltree/server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "reltree/error.hpp"

namespace reltree {
namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), kJson);
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyQuery:
    case ErrorKind::InputEncoding:
    case ErrorKind::Format:
      return 400;
    case ErrorKind::NotFound:
      return 404;
    default:
      return 500;
  }
}

}  // namespace

struct SearchService::Impl {
  std::shared_ptr<const SearchEngine> engine;
  httplib::Server server;
};

SearchService::SearchService(std::shared_ptr<const SearchEngine> engine)
    : impl_(std::make_unique<Impl>()) {
  impl_->engine = std::move(engine);
  auto& server = impl_->server;
  // SO_REUSEADDR only; the library default SO_REUSEPORT would let a second
  // instance silently share an occupied port.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  const SearchEngine* eng = impl_->engine.get();

  server.Post("/search", [eng](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error&) {
      return send_error(res, 400, "request body is not valid JSON");
    }
    if (!body.is_object() || !body.contains("query") || !body["query"].is_string()) {
      return send_error(res, 400, "request body must be an object with a string 'query'");
    }
    std::optional<std::size_t> max_results;
    if (body.contains("max_results")) {
      const auto& m = body["max_results"];
      if (!m.is_number_integer() || m.get<long long>() < 1) {
        return send_error(res, 400, "'max_results' must be a positive integer");
      }
      max_results = m.get<std::size_t>();
    }
    try {
      const auto tree = eng->run_search(body["query"].get<std::string>(), max_results);
      res.set_content(serialize_tree(tree), kJson);
    } catch (const Error& e) {
      send_error(res, status_for(e.kind()), e.what());
    }
  });

  server.Get(R"(/documents/(.+))", [eng](const httplib::Request& req, httplib::Response& res) {
    const auto* doc = eng->index().find_document(req.matches[1].str());
    if (!doc) return send_error(res, 404, "document not found");
    nlohmann::ordered_json out{{"id", doc->id},
                               {"title", doc->title},
                               {"abstract", doc->abstract},
                               {"source", doc->source}};
    res.set_content(out.dump(), kJson);
  });

  server.Get("/health", [eng](const httplib::Request&, httplib::Response& res) {
    nlohmann::ordered_json out{{"status", "ok"}, {"docs", eng->index().size()}};
    res.set_content(out.dump(), kJson);
  });

  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          send_error(res, 500, e.what());
        } catch (...) {
          send_error(res, 500, "internal error");
        }
      });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not found" : "request failed");
    }
  });

  if (const auto& dir = impl_->engine->config().static_dir; !dir.empty()) {
    if (!server.set_mount_point("/", dir)) {
      throw Error(ErrorKind::Io, "static directory not found: " + dir);
    }
  }
}

SearchService::~SearchService() { stop(); }

int SearchService::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  if (port == 0) {
    const int bound = server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::Io, "cannot bind " + host);
    return bound;
  }
  if (!server.bind_to_port(host, port)) {
    throw Error(ErrorKind::Io, "cannot listen on " + host + ":" + std::to_string(port) +
                                   " (port in use?)");
  }
  return port;
}

void SearchService::listen() { impl_->server.listen_after_bind(); }

void SearchService::start() {
  thread_ = std::thread([this] { listen(); });
  impl_->server.wait_until_ready();
}

void SearchService::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace reltree
