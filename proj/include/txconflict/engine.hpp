#pragma once

#include "txconflict/access.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace txconflict {

enum class ConflictKind { RWC, WWC, FCC };
enum class Severity { High, Medium, Low };

std::string_view to_string(ConflictKind kind);
std::string_view to_string(Severity severity);
std::optional<ConflictKind> conflict_kind_from(std::string_view text);
std::optional<Severity> severity_from(std::string_view text);

/// Pseudo-variable attached to pairs that reach an unresolved external call
/// when conservative external handling is enabled.
inline constexpr std::string_view kExternalVariable = "<external>";

struct Conflict {
  std::string first;   // function key, first < second
  std::string second;
  ConflictKind kind = ConflictKind::RWC;
  std::set<std::string> variables;
  Severity severity = Severity::Medium;
  std::string description;

  friend bool operator==(const Conflict&, const Conflict&) = default;
  /// Canonical report order: pair, then kind, then variables.
  friend bool operator<(const Conflict& a, const Conflict& b) {
    return std::tie(a.first, a.second, a.kind, a.variables) <
           std::tie(b.first, b.second, b.kind, b.variables);
  }
};

struct SeverityPolicy {
  Severity write_write = Severity::High;
  Severity read_write = Severity::Medium;
  Severity call_write_write = Severity::High;
  Severity call_read_write = Severity::Medium;
};

struct DetectionOptions {
  /// Treat every function that transitively reaches an unresolved call as
  /// conflicting with every other transactional function.
  bool conservative_external = false;
  int jobs = 1;
  SeverityPolicy severity;
};

using FunctionPair = std::pair<std::string, std::string>;

/// Unordered pair in canonical (lexicographic) order.
FunctionPair make_pair_key(std::string a, std::string b);

/// Pair-enumeration bookkeeping: pairs already evaluated and what they produced.
struct DetectionState {
  std::set<FunctionPair> visited_pairs;
  std::vector<Conflict> conflicts;
};

/// True for functions that cannot be invoked as a transaction or cannot touch
/// storage: private, internal, pure, constructors and bodiless declarations.
/// View functions participate (as readers).
bool should_skip(const Function& f);

using AccessSet = std::set<std::pair<std::string, AccessMode>>;

/// Accesses of `f` and of everything it transitively calls; each function is
/// visited once, so cyclic call graphs terminate.
AccessSet recursive_access(std::string_view f, const AccessMaps& maps);

/// Callee spellings left unresolved anywhere in `f`'s transitive call tree.
NameSet recursive_unresolved(std::string_view f, const AccessMaps& maps);

/// Variables one function reads and the other writes (direct accesses).
std::optional<Conflict> detect_rwc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps);
/// Variables both functions write directly.
std::optional<Conflict> detect_wwc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps);
/// Overlaps with at least one write that only appear once nested calls are
/// followed; variables already covered by a direct RWC/WWC are excluded.
std::optional<Conflict> detect_fcc(const std::string& f1, const std::string& f2,
                                   const AccessMaps& maps);

Severity assign_severity(const Conflict& c, const AccessMaps& maps,
                         const SeverityPolicy& policy = {});

/// Symmetric boolean matrix over a contract's transactional functions.
class ConflictMatrix {
 public:
  ConflictMatrix() = default;
  explicit ConflictMatrix(std::vector<std::string> functions);

  const std::vector<std::string>& functions() const { return functions_; }
  std::size_t size() const { return functions_.size(); }
  bool at(std::size_t i, std::size_t j) const { return cells_[i * functions_.size() + j]; }
  /// Marks the pair; returns false if either key is not in the matrix.
  bool mark(const std::string& a, const std::string& b);
  /// Number of distinct unordered pairs marked.
  std::size_t conflicting_pairs() const;

 private:
  std::vector<std::string> functions_;
  std::vector<bool> cells_;
};

struct AnalysisResult {
  const SourceUnit* unit = nullptr;
  const Contract* contract = nullptr;
  /// Conflicts between two functions of this contract.
  std::vector<Conflict> conflicts;
  /// Conflicts between one of this contract's functions and another contract's.
  std::vector<Conflict> cross_contract;
  ConflictMatrix matrix;
  double conflict_percentage = 0.0;
  std::map<ConflictKind, std::size_t> counts_by_kind;
  double analysis_ms = 0.0;

  std::size_t transactional_functions() const { return matrix.size(); }
  std::size_t total_conflicts() const { return conflicts.size() + cross_contract.size(); }
};

/// conflicting / (n (n - 1) / 2); 0 when n < 2.
double conflict_percentage(std::size_t conflicting_pairs, std::size_t transactional_functions);

/// Runs pairwise detection over every contract in `units`. Results are
/// ordered by contract name and do not depend on input order or `jobs`.
std::vector<AnalysisResult> detect_all(std::span<const SourceUnit> units, const AccessMaps& maps,
                                       const DetectionOptions& options = {});

}  // namespace txconflict
