#include "reltree/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "reltree/error.hpp"

namespace reltree {
namespace {

// Products like (100/7) * 7 / 100 can land one ulp above an integer; snap
// those back so boundary values fall into the lower band.
double snap_to_integer(double x) {
  const double nearest = std::round(x);
  return std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x)) ? nearest : x;
}

}  // namespace

void Weights::validate() const {
  for (double w : {direct_keyword, direct_terminology, indirect_keyword,
                   indirect_terminology}) {
    if (!(w > 0.0 && w <= 1.0)) {
      throw Error(ErrorKind::Config, "match weights must lie in (0, 1]");
    }
  }
  if (!(bonus >= 0.0) || !std::isfinite(bonus)) {
    throw Error(ErrorKind::Config, "bonus must be a finite value >= 0");
  }
  if (levels < 1) throw Error(ErrorKind::Config, "levels must be >= 1");
}

MatchSummary summarize_matches(std::string_view doc_id,
                               std::span<const DocMatch> matches,
                               const Query& query) {
  struct OriginHits {
    std::size_t direct = 0;
    std::size_t indirect = 0;
    bool has_direct = false;
    bool has_indirect = false;
  };
  std::map<std::string_view, OriginHits> hits;

  for (const auto& m : matches) {
    const QueryTerm* term = query.find(m.entry.origin.phrase);
    if (!term || term->term_class != m.entry.origin.term_class) {
      throw Error(ErrorKind::Consistency,
                  "match origin '" + m.entry.origin.phrase + "' is not a query term");
    }
    if (m.count == 0) {
      throw Error(ErrorKind::Consistency, "match with zero occurrences");
    }
    auto& h = hits[term->phrase];
    if (is_direct(m.entry.match_class)) {
      h.has_direct = true;
      h.direct += m.count;
    } else {
      h.has_indirect = true;
      h.indirect += m.count;
    }
  }

  MatchSummary s;
  s.doc_id = std::string(doc_id);
  s.denom = query.denominator();
  for (const auto& term : query.terms) {
    auto it = hits.find(term.phrase);
    if (it == hits.end()) continue;
    const auto& h = it->second;
    const bool keyword = term.term_class == TermClass::Keyword;
    if (h.has_direct) {
      ++(keyword ? s.direct_keywords : s.direct_terminologies);
      s.kw_total += h.direct;
    } else if (h.has_indirect) {
      ++(keyword ? s.indirect_keywords : s.indirect_terminologies);
      s.kw_total += h.indirect;
    }
  }
  return s;
}

RankScore score_document(const MatchSummary& summary, const Weights& w) {
  if (summary.denom == 0) {
    throw Error(ErrorKind::Domain, "query has no terms");
  }
  if (summary.matched_terms() == 0) {
    throw Error(ErrorKind::NoMatch, "document " + summary.doc_id + " has no matches");
  }
  const double denom = static_cast<double>(summary.denom);
  const double direct =
      w.direct_keyword * static_cast<double>(summary.direct_keywords) +
      w.direct_terminology * static_cast<double>(summary.direct_terminologies);
  const double indirect =
      w.indirect_keyword * static_cast<double>(summary.indirect_keywords) +
      w.indirect_terminology * static_cast<double>(summary.indirect_terminologies);
  const double numerator = direct + indirect;

  RankScore r;
  r.doc_id = summary.doc_id;
  r.kw_total = summary.kw_total;
  r.cl = numerator / denom * 100.0;
  r.d_pct = direct / denom * 100.0;
  r.id_pct = indirect / denom * 100.0;
  r.bonus_applied = r.d_pct > r.id_pct;
  r.ds = numerator / denom + static_cast<double>(summary.kw_total);
  if (r.bonus_applied) r.ds += w.bonus;
  r.cluster = assign_cluster(r.cl, w.levels);
  return r;
}

int assign_cluster(double cl, int levels) {
  if (levels < 1) throw Error(ErrorKind::Domain, "levels must be >= 1");
  if (!(cl > 0.0 && cl <= 100.0)) {
    throw Error(ErrorKind::Domain, "clustering level " + std::to_string(cl) +
                                       " outside (0, 100]");
  }
  const double band = std::max(1.0, std::ceil(snap_to_integer(cl * levels / 100.0)));
  return levels + 1 - static_cast<int>(band);
}

std::pair<double, double> cluster_band(int level, int levels) {
  const double width = 100.0 / levels;
  const int steps = levels - level;
  return {steps * width, level == 1 ? 100.0 : (steps + 1) * width};
}

bool ranks_before(const RankScore& a, const RankScore& b) {
  if (a.ds != b.ds) return a.ds > b.ds;
  if (a.d_pct != b.d_pct) return a.d_pct > b.d_pct;
  if (a.id_pct != b.id_pct) return a.id_pct > b.id_pct;
  if (a.kw_total != b.kw_total) return a.kw_total > b.kw_total;
  return a.doc_id < b.doc_id;
}

std::vector<RankScore> order_cluster(std::vector<RankScore> scores) {
  for (const auto& s : scores) {
    if (s.cluster != scores.front().cluster) {
      throw Error(ErrorKind::Consistency, "order_cluster given mixed cluster levels");
    }
  }
  std::sort(scores.begin(), scores.end(), ranks_before);
  return scores;
}

}  // namespace reltree
