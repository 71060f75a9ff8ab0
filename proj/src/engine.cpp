#include "txconflict/engine.hpp"

#include "txconflict/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <iterator>
#include <unordered_map>

namespace txconflict {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

const NameSet& lookup(const NameSetMap& map, const std::string& key) {
  static const NameSet empty;
  const auto it = map.find(key);
  return it == map.end() ? empty : it->second;
}

NameSet intersect(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

NameSet unite(const NameSet& a, const NameSet& b) {
  NameSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

NameSet subtract(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Variables of an access set split by mode.
struct ModeSplit {
  NameSet reads;
  NameSet writes;
};

ModeSplit split(const AccessSet& set) {
  ModeSplit out;
  for (const auto& [var, mode] : set) {
    (mode == AccessMode::Read ? out.reads : out.writes).insert(var);
  }
  return out;
}

NameSet direct_rwc_vars(const std::string& f1, const std::string& f2, const AccessMaps& maps) {
  return unite(intersect(lookup(maps.reads, f1), lookup(maps.writes, f2)),
               intersect(lookup(maps.reads, f2), lookup(maps.writes, f1)));
}

NameSet direct_wwc_vars(const std::string& f1, const std::string& f2, const AccessMaps& maps) {
  return intersect(lookup(maps.writes, f1), lookup(maps.writes, f2));
}

// Shared variables with at least one write across two transitive sets.
NameSet transitive_overlap(const ModeSplit& a, const ModeSplit& b) {
  return unite(intersect(a.writes, unite(b.reads, b.writes)),
               intersect(b.writes, unite(a.reads, a.writes)));
}

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::string describe(const Conflict& c) {
  const std::string pair = c.first + " and " + c.second;
  switch (c.kind) {
    case ConflictKind::WWC:
      return pair + " both write " + join(c.variables);
    case ConflictKind::RWC:
      return pair + ": one reads state the other writes (" + join(c.variables) + ")";
    case ConflictKind::FCC:
      return pair + " overlap through nested calls on " + join(c.variables);
  }
  return pair;
}

Conflict make_conflict(const FunctionPair& pair, ConflictKind kind, NameSet vars) {
  Conflict c;
  c.first = pair.first;
  c.second = pair.second;
  c.kind = kind;
  c.variables = std::move(vars);
  return c;
}

Severity fcc_severity(const Conflict& c, const ModeSplit& a, const ModeSplit& b,
                      const SeverityPolicy& policy) {
  const auto both_write = intersect(a.writes, b.writes);
  for (const auto& v : c.variables) {
    if (v == kExternalVariable || both_write.count(v) != 0) return policy.call_write_write;
  }
  return policy.call_read_write;
}

Severity severity_with(const Conflict& c, const ModeSplit& a, const ModeSplit& b,
                       const SeverityPolicy& policy) {
  switch (c.kind) {
    case ConflictKind::WWC: return policy.write_write;
    case ConflictKind::RWC: return policy.read_write;
    case ConflictKind::FCC: return fcc_severity(c, a, b, policy);
  }
  return policy.read_write;
}

}  // namespace

std::string_view to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::RWC: return "RWC";
    case ConflictKind::WWC: return "WWC";
    case ConflictKind::FCC: return "FCC";
  }
  return "?";
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::High: return "High";
    case Severity::Medium: return "Medium";
    case Severity::Low: return "Low";
  }
  return "?";
}

std::optional<ConflictKind> conflict_kind_from(std::string_view text) {
  if (text == "RWC") return ConflictKind::RWC;
  if (text == "WWC") return ConflictKind::WWC;
  if (text == "FCC") return ConflictKind::FCC;
  return std::nullopt;
}

std::optional<Severity> severity_from(std::string_view text) {
  if (text == "High") return Severity::High;
  if (text == "Medium") return Severity::Medium;
  if (text == "Low") return Severity::Low;
  return std::nullopt;
}

FunctionPair make_pair_key(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

bool should_skip(const Function& f) {
  return f.visibility == Visibility::Private || f.visibility == Visibility::Internal ||
         f.mutability == Mutability::Pure || f.is_constructor() || !f.has_body();
}

AccessSet recursive_access(std::string_view f, const AccessMaps& maps) {
  AccessSet out;
  std::set<std::string, std::less<>> visited;
  std::vector<std::string> stack{std::string(f)};
  while (!stack.empty()) {
    std::string current = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(current).second) continue;
    for (const auto& v : lookup(maps.reads, current)) out.emplace(v, AccessMode::Read);
    for (const auto& v : lookup(maps.writes, current)) out.emplace(v, AccessMode::Write);
    for (const auto& callee : lookup(maps.calls, current)) {
      if (visited.count(callee) == 0) stack.push_back(callee);
    }
  }
  return out;
}

NameSet recursive_unresolved(std::string_view f, const AccessMaps& maps) {
  NameSet out;
  std::set<std::string, std::less<>> visited;
  std::vector<std::string> stack{std::string(f)};
  while (!stack.empty()) {
    std::string current = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(current).second) continue;
    const auto& unresolved = lookup(maps.unresolved_calls, current);
    out.insert(unresolved.begin(), unresolved.end());
    for (const auto& callee : lookup(maps.calls, current)) {
      if (visited.count(callee) == 0) stack.push_back(callee);
    }
  }
  return out;
}

std::optional<Conflict> detect_rwc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps) {
  auto vars = direct_rwc_vars(f1, f2, maps);
  if (vars.empty()) return std::nullopt;
  auto c = make_conflict(make_pair_key(f1, f2), ConflictKind::RWC, std::move(vars));
  c.severity = SeverityPolicy{}.read_write;
  c.description = describe(c);
  return c;
}

std::optional<Conflict> detect_wwc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps) {
  auto vars = direct_wwc_vars(f1, f2, maps);
  if (vars.empty()) return std::nullopt;
  auto c = make_conflict(make_pair_key(f1, f2), ConflictKind::WWC, std::move(vars));
  c.severity = SeverityPolicy{}.write_write;
  c.description = describe(c);
  return c;
}

std::optional<Conflict> detect_fcc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps) {
  const auto a = split(recursive_access(f1, maps));
  const auto b = split(recursive_access(f2, maps));
  const auto direct = unite(direct_rwc_vars(f1, f2, maps), direct_wwc_vars(f1, f2, maps));
  auto vars = subtract(transitive_overlap(a, b), direct);
  if (vars.empty()) return std::nullopt;
  auto c = make_conflict(make_pair_key(f1, f2), ConflictKind::FCC, std::move(vars));
  c.severity = fcc_severity(c, a, b, SeverityPolicy{});
  c.description = describe(c);
  return c;
}

Severity assign_severity(const Conflict& c, const AccessMaps& maps, const SeverityPolicy& policy) {
  return severity_with(c, split(recursive_access(c.first, maps)),
                       split(recursive_access(c.second, maps)), policy);
}

ConflictMatrix::ConflictMatrix(std::vector<std::string> functions)
    : functions_(std::move(functions)), cells_(functions_.size() * functions_.size(), false) {}

bool ConflictMatrix::mark(const std::string& a, const std::string& b) {
  const auto ia = std::find(functions_.begin(), functions_.end(), a);
  const auto ib = std::find(functions_.begin(), functions_.end(), b);
  if (ia == functions_.end() || ib == functions_.end() || ia == ib) return false;
  const auto i = static_cast<std::size_t>(ia - functions_.begin());
  const auto j = static_cast<std::size_t>(ib - functions_.begin());
  cells_[i * functions_.size() + j] = true;
  cells_[j * functions_.size() + i] = true;
  return true;
}

std::size_t ConflictMatrix::conflicting_pairs() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    for (std::size_t j = i + 1; j < functions_.size(); ++j) n += at(i, j) ? 1 : 0;
  }
  return n;
}

double conflict_percentage(std::size_t conflicting_pairs, std::size_t transactional_functions) {
  if (transactional_functions < 2) return 0.0;
  const double total =
      static_cast<double>(transactional_functions) * static_cast<double>(transactional_functions - 1) / 2.0;
  return static_cast<double>(conflicting_pairs) / total;
}

std::vector<AnalysisResult> detect_all(std::span<const SourceUnit> units, const AccessMaps& maps,
                                       const DetectionOptions& options) {
  const Program program(units);
  const auto& entries = program.functions();
  const std::size_t n = entries.size();

  // Per-function facts: transitive accesses, reachable unresolved calls,
  // which contracts' storage is touched.
  struct Facts {
    ModeSplit access;
    bool reaches_external = false;
    std::set<std::string> touched_contracts;
    bool skip = false;
    bool read_only = false;
    double ms = 0.0;
  };
  std::vector<Facts> facts(n);
  parallel_for(n, options.jobs, [&](std::size_t i) {
    const auto start = Clock::now();
    auto& fact = facts[i];
    fact.access = split(recursive_access(entries[i].key, maps));
    fact.reaches_external =
        options.conservative_external && !recursive_unresolved(entries[i].key, maps).empty();
    for (const auto& set : {fact.access.reads, fact.access.writes}) {
      for (const auto& v : set) fact.touched_contracts.insert(v.substr(0, v.find('.')));
    }
    fact.skip = should_skip(*entries[i].function);
    fact.read_only = fact.access.writes.empty() && !fact.reaches_external;
    fact.ms = elapsed_ms(start);
  });

  auto may_conflict = [&](std::size_t i, std::size_t j) {
    if (entries[i].contract == entries[j].contract) return true;
    if (facts[i].reaches_external || facts[j].reaches_external) {
      if (entries[i].unit == entries[j].unit) return true;
    }
    const auto& a = facts[i].touched_contracts;
    const auto& b = facts[j].touched_contracts;
    return std::any_of(a.begin(), a.end(), [&](const std::string& c) { return b.count(c) != 0; });
  };

  // Pair enumeration: every unordered pair of transactional functions once,
  // skipping self-pairs and read-only/read-only pairs.
  DetectionState state;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    if (facts[i].skip) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (facts[j].skip) continue;
      if (facts[i].read_only && facts[j].read_only) continue;
      if (!may_conflict(i, j)) continue;
      auto key = make_pair_key(entries[i].key, entries[j].key);
      if (!state.visited_pairs.insert(std::move(key)).second) continue;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }

  struct PairOutcome {
    std::vector<Conflict> conflicts;
    double ms = 0.0;
  };
  std::vector<PairOutcome> outcomes(pairs.size());
  parallel_for(pairs.size(), options.jobs, [&](std::size_t p) {
    const auto start = Clock::now();
    const auto [i, j] = pairs[p];
    const auto& k1 = entries[i].key;
    const auto& k2 = entries[j].key;
    const FunctionPair key{k1, k2};
    auto& out = outcomes[p].conflicts;

    const NameSet wwc = direct_wwc_vars(k1, k2, maps);
    const NameSet rwc_all = direct_rwc_vars(k1, k2, maps);
    // Direct write-write takes precedence, then read-write, then call-mediated.
    const NameSet rwc = subtract(rwc_all, wwc);
    NameSet fcc = subtract(transitive_overlap(facts[i].access, facts[j].access), unite(rwc_all, wwc));
    const bool external_pair = (facts[i].reaches_external || facts[j].reaches_external) &&
                               entries[i].unit == entries[j].unit;
    if (external_pair) fcc.insert(std::string(kExternalVariable));

    if (!wwc.empty()) out.push_back(make_conflict(key, ConflictKind::WWC, wwc));
    if (!rwc.empty()) out.push_back(make_conflict(key, ConflictKind::RWC, rwc));
    if (!fcc.empty()) out.push_back(make_conflict(key, ConflictKind::FCC, std::move(fcc)));
    for (auto& c : out) {
      c.severity = severity_with(c, facts[i].access, facts[j].access, options.severity);
      c.description = describe(c);
    }
    outcomes[p].ms = elapsed_ms(start);
  });

  std::unordered_map<const Contract*, std::size_t> slot;
  std::vector<AnalysisResult> results;
  for (const auto& [unit, contract] : program.contracts()) {
    slot[contract] = results.size();
    AnalysisResult r;
    r.unit = unit;
    r.contract = contract;
    results.push_back(std::move(r));
  }
  std::vector<std::vector<std::string>> transactional(results.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = slot.at(entries[i].contract);
    results[s].analysis_ms += facts[i].ms;
    if (!facts[i].skip) transactional[s].push_back(entries[i].key);
  }
  for (std::size_t s = 0; s < results.size(); ++s) {
    results[s].matrix = ConflictMatrix(std::move(transactional[s]));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const std::size_t si = slot.at(entries[i].contract);
    const std::size_t sj = slot.at(entries[j].contract);
    results[si].analysis_ms += outcomes[p].ms;
    for (auto& c : outcomes[p].conflicts) {
      state.conflicts.push_back(c);
      if (si == sj) {
        results[si].conflicts.push_back(std::move(c));
      } else {
        results[si].cross_contract.push_back(c);
        results[sj].cross_contract.push_back(std::move(c));
      }
    }
  }
  for (auto& r : results) {
    std::sort(r.conflicts.begin(), r.conflicts.end());
    std::sort(r.cross_contract.begin(), r.cross_contract.end());
    for (const auto& c : r.conflicts) {
      r.matrix.mark(c.first, c.second);
      ++r.counts_by_kind[c.kind];
    }
    for (const auto& c : r.cross_contract) ++r.counts_by_kind[c.kind];
    r.conflict_percentage = conflict_percentage(r.matrix.conflicting_pairs(), r.matrix.size());
  }
  return results;
}

}  // namespace txconflict
