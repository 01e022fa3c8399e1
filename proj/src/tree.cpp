#include "reltree/tree.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "reltree/error.hpp"
#include "reltree/text.hpp"

namespace reltree {

using ordered_json = nlohmann::ordered_json;

std::size_t RankTree::document_count() const {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.children.size();
  return n;
}

RankTree build_tree(const std::vector<RankScore>& scores,
                    const std::map<std::string, Document, std::less<>>& docs,
                    const Query& query, int levels) {
  std::map<int, std::vector<RankScore>> grouped;
  std::set<std::string_view> seen;
  for (const auto& s : scores) {
    if (!seen.insert(s.doc_id).second) {
      throw Error(ErrorKind::Consistency, "duplicate document " + s.doc_id + " in scores");
    }
    if (s.cluster < 1 || s.cluster > levels) {
      throw Error(ErrorKind::Consistency, "cluster level out of range for " + s.doc_id);
    }
    grouped[s.cluster].push_back(s);
  }

  RankTree tree;
  tree.query = query;
  for (auto& [level, group] : grouped) {
    ClusterNode node;
    node.level = level;
    std::tie(node.band_low, node.band_high) = cluster_band(level, levels);
    int rank = 0;
    for (const auto& s : order_cluster(std::move(group))) {
      auto it = docs.find(s.doc_id);
      std::string title = it == docs.end() ? std::string{} : it->second.title;
      node.children.push_back({s.doc_id, truncate_utf8(title, kMaxTitleChars), s.ds,
                               s.cl, s.d_pct, s.id_pct, ++rank});
    }
    tree.clusters.push_back(std::move(node));
  }
  return tree;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string render_tree_text(const RankTree& tree) {
  if (tree.clusters.empty()) return "(no results)\n";
  std::string out;
  for (const auto& c : tree.clusters) {
    out += "[L" + std::to_string(c.level) + "] " + format_fixed(c.band_low) +
           "–" + format_fixed(c.band_high) + "%\n";
    for (const auto& d : c.children) {
      out += "  #" + std::to_string(d.rank) + " " + d.doc_id +
             " DS=" + format_fixed(d.ds) + " CL=" + format_fixed(d.cl) + "\n";
    }
  }
  return out;
}

std::string serialize_tree(const RankTree& tree) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : tree.query.terms) {
    terms.push_back({{"phrase", t.phrase}, {"class", to_string(t.term_class)}});
  }
  ordered_json clusters = ordered_json::array();
  for (const auto& c : tree.clusters) {
    ordered_json documents = ordered_json::array();
    for (const auto& d : c.children) {
      documents.push_back({{"id", d.doc_id},
                           {"title", d.title},
                           {"rank", d.rank},
                           {"ds", d.ds},
                           {"cl", d.cl},
                           {"d_pct", d.d_pct},
                           {"id_pct", d.id_pct}});
    }
    clusters.push_back({{"level", c.level},
                        {"band", {c.band_low, c.band_high}},
                        {"documents", std::move(documents)}});
  }
  ordered_json root;
  root["query"] = {{"terms", std::move(terms)}};
  root["clusters"] = std::move(clusters);
  return root.dump();
}

RankTree parse_tree(std::string_view json) {
  RankTree tree;
  try {
    const auto root = nlohmann::json::parse(json);
    for (const auto& t : root.at("query").at("terms")) {
      QueryTerm term{t.at("phrase").get<std::string>(),
                     term_class_from_string(t.at("class").get<std::string>())};
      ++(term.term_class == TermClass::Keyword ? tree.query.k_count : tree.query.t_count);
      tree.query.terms.push_back(std::move(term));
    }
    for (const auto& c : root.at("clusters")) {
      ClusterNode node;
      node.level = c.at("level").get<int>();
      node.band_low = c.at("band").at(0).get<double>();
      node.band_high = c.at("band").at(1).get<double>();
      for (const auto& d : c.at("documents")) {
        node.children.push_back({d.at("id").get<std::string>(),
                                 d.at("title").get<std::string>(),
                                 d.at("ds").get<double>(), d.at("cl").get<double>(),
                                 d.at("d_pct").get<double>(),
                                 d.at("id_pct").get<double>(), d.at("rank").get<int>()});
      }
      tree.clusters.push_back(std::move(node));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("malformed tree JSON: ") + e.what());
  }
  return tree;
}

}  // namespace reltree
