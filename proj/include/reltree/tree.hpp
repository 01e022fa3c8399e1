#pragma once

#include <map>
#include <string>
#include <vector>

#include "reltree/corpus.hpp"
#include "reltree/query.hpp"
#include "reltree/ranking.hpp"

namespace reltree {

inline constexpr std::size_t kMaxTitleChars = 200;

struct DocNode {
  std::string doc_id;
  std::string title;  // truncated to kMaxTitleChars code points
  double ds = 0;
  double cl = 0;
  double d_pct = 0;
  double id_pct = 0;
  int rank = 0;
};

struct ClusterNode {
  int level = 0;
  double band_low = 0;
  double band_high = 0;
  std::vector<DocNode> children;
};

struct RankTree {
  Query query;
  std::vector<ClusterNode> clusters;  // ascending level, empty levels omitted

  std::size_t document_count() const;
};

RankTree build_tree(const std::vector<RankScore>& scores,
                    const std::map<std::string, Document, std::less<>>& docs,
                    const Query& query, int levels);

/// `[L<level>] <low>–<high>%` per cluster and `  #<rank> <id> DS=.. CL=..`
/// per document, four decimals; "(no results)" for an empty tree.
std::string render_tree_text(const RankTree& tree);

/// JSON wire form consumed by the web UI and `search --format json`.
std::string serialize_tree(const RankTree& tree);
RankTree parse_tree(std::string_view json);

/// Fixed-point with `decimals` places, ties to even on the exact binary value.
std::string format_fixed(double value, int decimals = 4);

}  // namespace reltree
