#pragma once

#include "txconflict/model.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace txconflict {

enum class AccessMode { Read, Write };

std::string_view to_string(AccessMode mode);

/// One syntactic touch of a state variable.
struct AccessRecord {
  std::string variable;  // `Contract.variable`
  AccessMode mode = AccessMode::Read;
  int site = 0;          // source line

  friend bool operator==(const AccessRecord&, const AccessRecord&) = default;
};

using NameSet = std::set<std::string>;
using NameSetMap = std::map<std::string, NameSet>;

/// Per-function read set (R), write set (W) and callee set (C), keyed by
/// `Contract.function/arity`.
struct AccessMaps {
  NameSetMap reads;
  NameSetMap writes;
  NameSetMap calls;
  /// Callee spellings that did not resolve to a parsed function.
  NameSetMap unresolved_calls;

  friend bool operator==(const AccessMaps&, const AccessMaps&) = default;
};

struct CallSet {
  NameSet resolved;
  NameSet unresolved;
};

/// Lookup structure over a set of parsed units. Holds pointers into `units`,
/// which must outlive it.
class Program {
 public:
  struct Entry {
    std::string key;
    const SourceUnit* unit = nullptr;
    const Contract* contract = nullptr;
    const Function* function = nullptr;
  };

  explicit Program(std::span<const SourceUnit> units);

  /// Every function of every contract, sorted by key.
  const std::vector<Entry>& functions() const { return entries_; }
  const Entry* find(std::string_view key) const;
  const Contract* find_contract(std::string_view name) const;
  /// Contracts sorted by name, with their units.
  const std::vector<std::pair<const SourceUnit*, const Contract*>>& contracts() const {
    return contracts_;
  }

 private:
  std::vector<Entry> entries_;
  std::vector<std::pair<const SourceUnit*, const Contract*>> contracts_;
};

/// Every state-variable access in `f`'s body and in the bodies of the
/// modifiers it invokes, in source order. Pure functions yield nothing, view
/// functions no writes, and constants are never written.
std::vector<AccessRecord> collect_accesses(const Contract& c, const Function& f);

NameSet extract_reads(const Contract& c, const Function& f);
NameSet extract_writes(const Contract& c, const Function& f);

/// Callees of `f`. Same-contract names and `Contract.f(...)`/`this.f(...)`
/// resolve to function keys; built-ins, type conversions, struct/error
/// constructors and event emissions are dropped; everything else is
/// reported unresolved by its spelling.
CallSet extract_calls(const Program& program, const Contract& c, const Function& f);

/// R/W/C maps for every function of every contract. `jobs` > 1 spreads the
/// per-contract work over threads; the result does not depend on it.
AccessMaps build_access_maps(std::span<const SourceUnit> units, int jobs = 1);

}  // namespace txconflict
