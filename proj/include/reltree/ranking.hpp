#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "reltree/corpus.hpp"
#include "reltree/query.hpp"

namespace reltree {

/// Per-class match weights, the DS bonus and the number of cluster levels.
struct Weights {
  double direct_keyword = 1.0;
  double direct_terminology = 1.0;
  double indirect_keyword = 0.5;
  double indirect_terminology = 0.8;
  double bonus = 0.2;
  int levels = 7;

  /// Throws ErrorKind::Config when a weight is outside (0, 1], the bonus is
  /// negative, or levels < 1.
  void validate() const;
};

struct MatchSummary {
  std::string doc_id;
  std::size_t direct_keywords = 0;
  std::size_t direct_terminologies = 0;
  std::size_t indirect_keywords = 0;
  std::size_t indirect_terminologies = 0;
  std::size_t kw_total = 0;
  std::size_t denom = 0;

  std::size_t matched_terms() const {
    return direct_keywords + direct_terminologies + indirect_keywords +
           indirect_terminologies;
  }
};

struct RankScore {
  std::string doc_id;
  double ds = 0;
  double cl = 0;
  double d_pct = 0;
  double id_pct = 0;
  std::size_t kw_total = 0;
  bool bonus_applied = false;
  int cluster = 0;
};

/// Classifies one document's matches per origin term. A direct hit for an
/// origin suppresses all of that origin's indirect hits.
MatchSummary summarize_matches(std::string_view doc_id,
                               std::span<const DocMatch> matches,
                               const Query& query);

RankScore score_document(const MatchSummary& summary, const Weights& w = {});

/// Equal-width CL bands; level 1 holds the highest band and a value on a
/// band boundary belongs to the lower band.
int assign_cluster(double cl, int levels);

/// Lower and upper CL bound of a level's band, (low, high].
std::pair<double, double> cluster_band(int level, int levels);

/// ds desc, d_pct desc, id_pct desc, kw_total desc, doc_id asc.
bool ranks_before(const RankScore& a, const RankScore& b);

std::vector<RankScore> order_cluster(std::vector<RankScore> scores);

}  // namespace reltree
