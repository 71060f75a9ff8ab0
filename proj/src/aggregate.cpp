#include "txconflict/report.hpp"

#include <algorithm>
#include <numeric>

namespace txconflict {

namespace {

double mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
}

}  // namespace

AggregateStats aggregate(std::span<const AnalysisResult> results) {
  AggregateStats s;
  s.total_contracts = results.size();
  if (results.empty()) return s;

  std::vector<double> percentages;
  std::vector<double> times;
  std::vector<double> per_contract;
  std::size_t with_conflicts = 0;
  for (const auto& r : results) {
    for (const auto& c : r.conflicts) ++s.counts_by_kind[c.kind];
    for (const auto& c : r.cross_contract) {
      if (c.first.substr(0, c.first.find('.')) == r.contract->name) ++s.counts_by_kind[c.kind];
    }
    const std::size_t n = r.total_conflicts();
    if (n > 0) ++with_conflicts;
    s.max_conflicts_per_contract = std::max(s.max_conflicts_per_contract, n);
    per_contract.push_back(static_cast<double>(n));
    percentages.push_back(r.conflict_percentage);
    times.push_back(r.analysis_ms);
  }
  for (const auto& [kind, count] : s.counts_by_kind) s.total_conflicts += count;
  if (s.total_conflicts > 0) {
    for (const auto kind : {ConflictKind::RWC, ConflictKind::WWC, ConflictKind::FCC}) {
      const auto it = s.counts_by_kind.find(kind);
      const double count = it == s.counts_by_kind.end() ? 0.0 : static_cast<double>(it->second);
      s.percent_by_kind[kind] = 100.0 * count / static_cast<double>(s.total_conflicts);
    }
  }

  const double n = static_cast<double>(results.size());
  s.contracts_with_conflicts = static_cast<double>(with_conflicts) / n;
  s.mean_conflicts_per_contract = mean(per_contract);
  s.min_conflict_percentage = *std::min_element(percentages.begin(), percentages.end());
  s.max_conflict_percentage = *std::max_element(percentages.begin(), percentages.end());
  s.mean_conflict_percentage = mean(percentages);
  s.median_conflict_percentage = median(percentages);
  s.min_analysis_ms = *std::min_element(times.begin(), times.end());
  s.max_analysis_ms = *std::max_element(times.begin(), times.end());
  s.mean_analysis_ms = mean(times);
  return s;
}

}  // namespace txconflict
