#include "txconflict/engine.hpp"
#include "txconflict/parser.hpp"

#include "fixtures.hpp"
#include "generator.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace txconflict;

namespace {

NameSet names(std::initializer_list<const char*> xs) { return NameSet(xs.begin(), xs.end()); }

AccessMaps maps_of(std::initializer_list<std::tuple<const char*, NameSet, NameSet, NameSet>> rows) {
  AccessMaps m;
  for (const auto& [f, r, w, c] : rows) {
    m.reads[f] = r;
    m.writes[f] = w;
    m.calls[f] = c;
    m.unresolved_calls[f] = {};
  }
  return m;
}

std::vector<AnalysisResult> analyze(const std::vector<SourceUnit>& units, DetectionOptions o = {}) {
  return detect_all(units, build_access_maps(units, o.jobs), o);
}

const AnalysisResult& result_for(const std::vector<AnalysisResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.contract->name == name) return r;
  throw std::runtime_error("no result for " + name);
}

}  // namespace

TEST(ShouldSkip, FollowsVisibilityAndMutability) {
  const auto u = parse(R"(contract C {
    uint x;
    constructor() { x = 1; }
    function a() private {}
    function b() internal {}
    function c() public pure returns (uint) { return 1; }
    function d() public view returns (uint) { return x; }
    function e() external {}
    function g() public virtual;
    fallback() external {}
  })");
  const auto& fs = u.contracts[0].functions;
  const std::vector<bool> expected = {true, true, true, true, false, false, true, false};
  ASSERT_EQ(fs.size(), expected.size());
  for (std::size_t i = 0; i < fs.size(); ++i) EXPECT_EQ(should_skip(fs[i]), expected[i]) << fs[i].id;
}

TEST(Detectors, ReadWrite) {
  const auto m = maps_of({{"C.f1", names({"a"}), {}, {}}, {"C.f2", {}, names({"a"}), {}}});
  const auto c = detect_rwc("C.f1", "C.f2", m);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->variables, names({"a"}));
  EXPECT_EQ(c->severity, Severity::Medium);
  const auto disjoint = maps_of({{"C.f1", names({"a"}), {}, {}}, {"C.f2", {}, names({"b"}), {}}});
  EXPECT_FALSE(detect_rwc("C.f1", "C.f2", disjoint));
}

TEST(Detectors, WriteWrite) {
  const auto m = maps_of({{"C.f1", {}, names({"x"}), {}}, {"C.f2", {}, names({"x", "y"}), {}}});
  const auto c = detect_wwc("C.f2", "C.f1", m);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->first, "C.f1");
  EXPECT_EQ(c->variables, names({"x"}));
  EXPECT_EQ(c->severity, Severity::High);
  const auto view = maps_of({{"C.f1", names({"x"}), {}, {}}, {"C.f2", {}, names({"x"}), {}}});
  EXPECT_FALSE(detect_wwc("C.f1", "C.f2", view));
}

TEST(Detectors, RecursiveAccess) {
  const auto one_hop = maps_of({{"f", names({"a"}), {}, names({"g"})}, {"g", {}, names({"b"}), {}}});
  EXPECT_EQ(recursive_access("f", one_hop),
            (AccessSet{{"a", AccessMode::Read}, {"b", AccessMode::Write}}));
  const auto mutual = maps_of({{"f", {}, {}, names({"g"})}, {"g", {}, names({"v"}), names({"f"})}});
  EXPECT_EQ(recursive_access("f", mutual), (AccessSet{{"v", AccessMode::Write}}));
  const auto chain = maps_of({{"f", {}, {}, names({"g"})}, {"g", {}, {}, names({"h"})},
                              {"h", {}, names({"v"}), {}}});
  EXPECT_EQ(recursive_access("f", chain), (AccessSet{{"v", AccessMode::Write}}));
  EXPECT_EQ(recursive_access("missing", chain), AccessSet{});
}

TEST(Detectors, FunctionCallConflict) {
  const auto m = maps_of({{"C.f1", {}, {}, names({"C.g"})}, {"C.f2", names({"v"}), {}, {}},
                          {"C.g", {}, names({"v"}), {}}});
  const auto c = detect_fcc("C.f1", "C.f2", m);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->variables, names({"v"}));
  EXPECT_EQ(c->severity, Severity::Medium);

  const auto reads_only = maps_of({{"C.f1", {}, {}, names({"C.g"})}, {"C.f2", names({"v"}), {}, {}},
                                   {"C.g", names({"v"}), {}, {}}});
  EXPECT_FALSE(detect_fcc("C.f1", "C.f2", reads_only));

  const auto direct = maps_of({{"C.f1", {}, names({"v"}), {}}, {"C.f2", {}, names({"v"}), {}}});
  EXPECT_FALSE(detect_fcc("C.f1", "C.f2", direct));

  const auto ww = maps_of({{"C.f1", {}, {}, names({"C.g"})}, {"C.f2", {}, names({"v"}), {}},
                           {"C.g", {}, names({"v"}), {}}});
  EXPECT_EQ(detect_fcc("C.f1", "C.f2", ww)->severity, Severity::High);
}

TEST(Detectors, SeverityPolicy) {
  const auto m = maps_of({{"a", {}, names({"v"}), {}}, {"b", {}, names({"v"}), {}}});
  Conflict c{"a", "b", ConflictKind::WWC, names({"v"}), Severity::Low, ""};
  EXPECT_EQ(assign_severity(c, m), Severity::High);
  c.kind = ConflictKind::RWC;
  EXPECT_EQ(assign_severity(c, m), Severity::Medium);
  c.kind = ConflictKind::FCC;
  EXPECT_EQ(assign_severity(c, m), Severity::High);
  SeverityPolicy lenient;
  lenient.call_write_write = Severity::Low;
  EXPECT_EQ(assign_severity(c, m, lenient), Severity::Low);
}

TEST(Percentage, Arithmetic) {
  EXPECT_DOUBLE_EQ(conflict_percentage(1, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(conflict_percentage(0, 5), 0.0);
  EXPECT_DOUBLE_EQ(conflict_percentage(6, 4), 1.0);
  EXPECT_DOUBLE_EQ(conflict_percentage(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(conflict_percentage(0, 0), 0.0);
}

TEST(DetectAll, ListingOneHasNoConflicts) {
  const std::vector<SourceUnit> units{parse(txtest::fixture("example.sol"))};
  const auto rs = analyze(units);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(rs[0].conflicts.empty());
  EXPECT_EQ(rs[0].conflict_percentage, 0.0);
  EXPECT_EQ(rs[0].transactional_functions(), 2u);
}

TEST(DetectAll, Erc20FlagsEveryPair) {
  const std::vector<SourceUnit> units{parse(txtest::fixture("erc20.sol"))};
  const auto all = analyze(units);
  const auto& r = all.at(0);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& c : r.conflicts) pairs.emplace(c.first, c.second);
  EXPECT_EQ(pairs.size(), 3u);
  const Conflict wwc{"SimpleToken.transfer/2", "SimpleToken.transferFrom/3", ConflictKind::WWC,
                     names({"SimpleToken.balances"}), Severity::High, ""};
  EXPECT_TRUE(std::any_of(r.conflicts.begin(), r.conflicts.end(), [&](const Conflict& c) {
    return c.first == wwc.first && c.second == wwc.second && c.kind == wwc.kind &&
           c.variables == wwc.variables && c.severity == Severity::High;
  }));
  EXPECT_EQ(r.matrix.conflicting_pairs(), 3u);
  EXPECT_DOUBLE_EQ(r.conflict_percentage, 1.0);
}

TEST(DetectAll, GetterReadVersusTransferWrite) {
  const std::vector<SourceUnit> units{parse(R"(contract Token {
    mapping(address => uint) balances;
    function balanceOf(address a) public view returns (uint) { return balances[a]; }
    function transfer(address to, uint v) public { balances[msg.sender] -= v; balances[to] += v; }
  })")};
  const auto all = analyze(units);
  const auto& r = all.at(0);
  ASSERT_EQ(r.conflicts.size(), 1u);
  EXPECT_EQ(r.conflicts[0].kind, ConflictKind::RWC);
  EXPECT_EQ(r.conflicts[0].variables, names({"Token.balances"}));
}

TEST(DetectAll, SameNamedVariablesInDifferentContractsDoNotConflict) {
  const std::vector<SourceUnit> units{
      parse("contract A { uint x; function f() public { x = 1; } function g() public view returns (uint) { return 0; } }"),
      parse("contract B { uint x; function f() public { x = 2; } }")};
  for (const auto& r : analyze(units)) {
    EXPECT_TRUE(r.cross_contract.empty());
    EXPECT_TRUE(r.conflicts.empty());
  }
}

TEST(DetectAll, CrossContractCallsConflict) {
  const std::vector<SourceUnit> units{parse(R"(
    contract Bank { uint reserve; function fund() public { reserve += 1; } }
    contract Client { function pay() public { Bank.fund(); } })")};
  const auto rs = analyze(units);
  const auto& bank = result_for(rs, "Bank");
  const auto& client = result_for(rs, "Client");
  ASSERT_EQ(bank.cross_contract.size(), 1u);
  EXPECT_EQ(bank.cross_contract, client.cross_contract);
  EXPECT_EQ(bank.cross_contract[0].kind, ConflictKind::FCC);
  EXPECT_EQ(bank.cross_contract[0].first, "Bank.fund/0");
  EXPECT_TRUE(bank.conflicts.empty());
}

TEST(DetectAll, ConservativeExternalFlagsCallers) {
  const std::vector<SourceUnit> units{parse(R"(contract V {
    uint a; uint b;
    function pay(address to) public { to.call(""); }
    function f() public { a = 1; }
    function g() public view returns (uint) { return b; }
  })")};
  EXPECT_TRUE(analyze(units)[0].conflicts.empty());
  DetectionOptions o;
  o.conservative_external = true;
  const auto all = analyze(units, o);
  const auto& r = all.at(0);
  ASSERT_EQ(r.conflicts.size(), 2u);
  for (const auto& c : r.conflicts) {
    EXPECT_EQ(c.kind, ConflictKind::FCC);
    EXPECT_EQ(c.variables, NameSet{std::string(kExternalVariable)});
    EXPECT_EQ(c.severity, Severity::High);
  }
}

TEST(DetectAll, NoTransactionalPairs) {
  const std::vector<SourceUnit> units{parse("contract N { uint x; function f() internal { x = 1; } }")};
  const auto all = analyze(units);
  const auto& r = all.at(0);
  EXPECT_EQ(r.transactional_functions(), 0u);
  EXPECT_EQ(r.conflict_percentage, 0.0);
}

TEST(DetectAll, IndependentOfJobsAndInputOrder) {
  std::mt19937_64 rng(23);
  std::vector<SourceUnit> units;
  for (int i = 0; i < 25; ++i) {
    units.push_back(parse(txtest::generate_contract(rng, "K" + std::to_string(i)).source,
                          "k" + std::to_string(i) + ".sol"));
  }
  auto flatten = [](const std::vector<AnalysisResult>& rs) {
    std::vector<std::pair<std::string, std::vector<Conflict>>> out;
    for (const auto& r : rs) out.emplace_back(r.contract->name, r.conflicts);
    return out;
  };
  const auto base = flatten(analyze(units));
  DetectionOptions parallel;
  parallel.jobs = 8;
  EXPECT_EQ(flatten(analyze(units, parallel)), base);
  auto reversed = units;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(flatten(analyze(reversed)), base);
}

TEST(DetectAll, InvariantToFunctionDeclarationOrder) {
  const std::string a = "function f() public { x = 1; }";
  const std::string b = "function g() public view returns (uint) { return x; }";
  const std::string c = "function h() public { y = x; }";
  const auto one = parse("contract O { uint x; uint y; " + a + b + c + " }");
  const auto two = parse("contract O { uint x; uint y; " + c + a + b + " }");
  EXPECT_EQ(analyze({one})[0].conflicts, analyze({two})[0].conflicts);
}

namespace {

struct Comparable {
  std::string first, second, kind;
  NameSet variables;
  std::string severity;
  friend auto operator<=>(const Comparable&, const Comparable&) = default;
};

std::vector<Comparable> engine_view(const AnalysisResult& r) {
  std::vector<Comparable> out;
  for (const auto& c : r.conflicts) {
    out.push_back({c.first, c.second, std::string(to_string(c.kind)), c.variables,
                   std::string(to_string(c.severity))});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Comparable> oracle_view(const txtest::GenContract& g) {
  std::vector<Comparable> out;
  for (const auto& c : txtest::oracle_conflicts(g)) {
    out.push_back({c.first, c.second, c.kind, c.variables, c.severity});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(EngineOracle, MatchesBruteForceReference) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto g = txtest::generate_contract(rng, "R" + std::to_string(i));
    const std::vector<SourceUnit> units{parse(g.source)};
    const auto rs = analyze(units);
    EXPECT_EQ(engine_view(rs[0]), oracle_view(g)) << g.source;
  }
}

TEST(EngineProperty, PairHygieneAndKindDisjointness) {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 200; ++i) {
    const auto g = txtest::generate_contract(rng, "H" + std::to_string(i));
    const std::vector<SourceUnit> units{parse(g.source)};
    const auto maps = build_access_maps(units);
    const auto all = detect_all(units, maps);
  const auto& r = all.at(0);
    std::set<std::tuple<std::string, std::string, ConflictKind>> seen;
    std::map<std::pair<std::string, std::string>, NameSet> vars_by_pair;
    for (const auto& c : r.conflicts) {
      EXPECT_NE(c.first, c.second);
      EXPECT_LT(c.first, c.second);
      EXPECT_FALSE(c.variables.empty());
      EXPECT_TRUE(seen.emplace(c.first, c.second, c.kind).second);
      auto& pair_vars = vars_by_pair[{c.first, c.second}];
      for (const auto& v : c.variables) EXPECT_TRUE(pair_vars.insert(v).second) << v;
      if (c.kind == ConflictKind::WWC) {
        for (const auto& v : c.variables) {
          EXPECT_TRUE(recursive_access(c.first, maps).count({v, AccessMode::Write}));
          EXPECT_TRUE(recursive_access(c.second, maps).count({v, AccessMode::Write}));
        }
      }
    }
    // Matrix mirrors the conflict list.
    EXPECT_EQ(r.matrix.conflicting_pairs(), vars_by_pair.size());
    for (std::size_t a = 0; a < r.matrix.size(); ++a) {
      EXPECT_FALSE(r.matrix.at(a, a));
      for (std::size_t b = 0; b < r.matrix.size(); ++b) EXPECT_EQ(r.matrix.at(a, b), r.matrix.at(b, a));
    }
    EXPECT_GE(r.conflict_percentage, 0.0);
    EXPECT_LE(r.conflict_percentage, 1.0);
  }
}

TEST(EngineProperty, NoFalseNegatives) {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 200; ++i) {
    const auto g = txtest::generate_contract(rng, "N" + std::to_string(i));
    const std::vector<SourceUnit> units{parse(g.source)};
    const auto all = analyze(units);
  const auto& r = all.at(0);
    std::set<std::pair<std::string, std::string>> flagged;
    for (const auto& c : r.conflicts) flagged.emplace(c.first, c.second);
    for (const auto& p : txtest::oracle_sharing_pairs(g)) {
      EXPECT_TRUE(flagged.count(p)) << p.first << " / " << p.second << "\n" << g.source;
    }
  }
}

TEST(EngineProperty, RecursiveAccessTerminatesAndIsIdempotent) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 300; ++i) {
    AccessMaps m;
    const int n = 2 + static_cast<int>(rng() % 12);
    for (int f = 0; f < n; ++f) {
      const std::string key = "f" + std::to_string(f);
      m.reads[key].insert("r" + std::to_string(rng() % 5));
      if (rng() % 2) m.writes[key].insert("w" + std::to_string(rng() % 5));
      for (int k = 0; k < 3; ++k) m.calls[key].insert("f" + std::to_string(rng() % n));
    }
    const auto first = recursive_access("f0", m);
    EXPECT_EQ(recursive_access("f0", m), first);
    EXPECT_FALSE(first.empty());
  }
}
