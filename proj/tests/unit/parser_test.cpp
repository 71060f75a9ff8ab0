#include "txconflict/errors.hpp"
#include "txconflict/parser.hpp"

#include "fixtures.hpp"
#include "generator.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace txconflict;

TEST(Parser, ListingOneDeclarations) {
  const auto u = parse(txtest::fixture("example.sol"), "example.sol");
  ASSERT_TRUE(u.pragma.has_value());
  EXPECT_EQ(*u.pragma, "^0.8.0");
  ASSERT_EQ(u.contracts.size(), 1u);
  const Contract& c = u.contracts[0];
  EXPECT_EQ(c.name, "Example");
  ASSERT_EQ(c.state_variables.size(), 2u);
  EXPECT_EQ(c.state_variables[0].name, "storageArray");
  EXPECT_EQ(c.state_variables[0].type_name, "uint256[]");
  EXPECT_EQ(c.state_variables[0].visibility, Visibility::Public);
  EXPECT_EQ(c.state_variables[1].name, "storageSize");
  EXPECT_EQ(c.state_variables[1].type_name, "uint256");
  EXPECT_EQ(c.state_variables[1].visibility, Visibility::Private);
  ASSERT_EQ(c.functions.size(), 2u);
  EXPECT_EQ(c.functions[0].name, "addToStorage");
  EXPECT_EQ(c.functions[0].visibility, Visibility::Public);
  EXPECT_EQ(c.functions[0].mutability, Mutability::NonPayable);
  EXPECT_EQ(c.functions[1].name, "addToMemory");
  EXPECT_EQ(c.functions[1].mutability, Mutability::View);
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0].name, "StorageValueAdded");
  EXPECT_EQ(c.events[0].indexed, std::vector<bool>{true});
}

TEST(Parser, PragmaOnly) {
  const auto u = parse("pragma solidity ^0.8.0;");
  EXPECT_TRUE(u.contracts.empty());
}

TEST(Parser, EmptyContract) {
  const auto u = parse("contract C {}");
  ASSERT_EQ(u.contracts.size(), 1u);
  EXPECT_EQ(u.contracts[0].name, "C");
  EXPECT_TRUE(u.contracts[0].state_variables.empty());
  EXPECT_TRUE(u.contracts[0].functions.empty());
  EXPECT_TRUE(u.contracts[0].events.empty());
}

TEST(Parser, SpecialFunctions) {
  const auto u = parse(R"(contract C {
    uint x;
    constructor(uint a) { x = a; }
    fallback() external payable { x = 1; }
    receive() external payable { x = 2; }
    modifier only() { require(x > 0); _; }
    function f() public only {}
  })");
  const auto& fs = u.contracts[0].functions;
  ASSERT_EQ(fs.size(), 4u);
  EXPECT_TRUE(fs[0].is_constructor());
  EXPECT_TRUE(fs[1].is_fallback());
  EXPECT_EQ(fs[1].visibility, Visibility::External);
  EXPECT_EQ(fs[1].mutability, Mutability::Payable);
  EXPECT_TRUE(fs[2].is_receive());
  ASSERT_EQ(fs[3].modifiers.size(), 1u);
  EXPECT_EQ(fs[3].modifiers[0].name, "only");
  ASSERT_EQ(u.contracts[0].modifiers.size(), 1u);
}

TEST(Parser, OverloadIds) {
  const auto u = parse(R"(contract C {
    function f() public {}
    function f(uint a) public {}
    function f(address b) public {}
  })");
  const auto& fs = u.contracts[0].functions;
  EXPECT_EQ(fs[0].id, "f/0");
  EXPECT_EQ(fs[1].id, "f/1");
  EXPECT_EQ(fs[2].id, "f/1~2");
  EXPECT_EQ(function_key(u.contracts[0], fs[2]), "C.f/1~2");
}

TEST(Parser, AbstractDeclarationHasNoBody) {
  const auto u = parse("abstract contract A { function f() public virtual; }");
  EXPECT_TRUE(u.contracts[0].is_abstract);
  EXPECT_FALSE(u.contracts[0].functions[0].has_body());
}

TEST(Parser, RejectsUnsupportedConstructs) {
  for (const char* src : {
           "contract A {} contract B is A {}",
           "interface I { function f() external; }",
           "library L { function f() internal {} }",
           "import \"./a.sol\";",
           "contract C { using L for uint; }",
           "contract C { function f() public { assembly { } } }",
           "contract C { function f() public { try this.f() {} catch {} } }",
           "function free() pure {}",
       }) {
    EXPECT_THROW(parse(src), UnsupportedConstruct) << src;
  }
}

TEST(Parser, ReportsPositionedErrors) {
  try {
    parse("contract C {\n  function f( public {}\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(parse("contract C { uint x; uint x; }"), ParseError);
  EXPECT_THROW(parse("contract C {} contract C {}"), ParseError);
  EXPECT_THROW(parse("contract C { function f() public { x = ; } }"), ParseError);
}

TEST(Parser, ExpressionShapes) {
  const auto u = parse(R"(contract C {
    mapping(address => mapping(address => uint)) m;
    uint[] a;
    function f(uint i) public returns (uint r, uint) {
      m[msg.sender][address(0)] += i * 2 ** 3;
      (r, ) = (a.length > 0 ? a[i] : 0, 1);
      uint[] memory b = new uint[](i);
      bytes memory s = msg.data[4:];
      (bool ok, bytes memory out) = msg.sender.call{value: 1, gas: 5}("");
      unchecked { i--; }
      for (uint k = 0; k < i; k++) { if (k == 3) break; else continue; }
      do { i /= 2; } while (i > 1);
      return (type(uint).max, b.length + s.length + out.length + (ok ? 1 : 0));
    }
  })");
  const auto& body = *u.contracts[0].functions[0].body;
  ASSERT_EQ(body.size(), 9u);
  EXPECT_EQ(body[0].exprs[0].kind, ExprKind::Assign);
  EXPECT_EQ(body[0].exprs[0].text, "+=");
  EXPECT_EQ(body[4].kind, StmtKind::VarDecl);
  EXPECT_EQ(body[4].vars.size(), 2u);
  EXPECT_EQ(body[5].kind, StmtKind::Unchecked);
  EXPECT_EQ(body[6].kind, StmtKind::For);
  EXPECT_EQ(body[7].kind, StmtKind::DoWhile);
}

TEST(Parser, RoundTripsFixtures) {
  for (const auto& entry : std::filesystem::directory_iterator(txtest::fixture_dir())) {
    if (entry.path().extension() != ".sol") continue;
    SourceUnit u;
    try {
      u = parse(txtest::read_text(entry.path()));
    } catch (const UnsupportedConstruct&) {
      continue;
    }
    EXPECT_EQ(parse(print_source(u)), u) << entry.path();
  }
}

TEST(Parser, RoundTripsGeneratedContracts) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto g = txtest::generate_contract(rng, "G" + std::to_string(i));
    const auto u = parse(g.source);
    const auto printed = print_source(u);
    EXPECT_EQ(parse(printed), u) << g.source;
    EXPECT_EQ(print_source(parse(printed)), printed);
  }
}

namespace {

void expect_only_source_errors(const std::string& input) {
  try {
    parse(input);
  } catch (const SourceError&) {
  } catch (const std::exception& e) {
    ADD_FAILURE() << "unexpected exception " << e.what() << " for input:\n" << input;
  }
}

}  // namespace

TEST(ParserFuzz, RandomBytes) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 200);
  for (int i = 0; i < 2000; ++i) {
    std::string s(static_cast<std::size_t>(len(rng)), '\0');
    for (auto& c : s) c = static_cast<char>(byte(rng));
    expect_only_source_errors(s);
  }
}

TEST(ParserFuzz, MutatedSources) {
  std::mt19937_64 rng(13);
  std::vector<std::string> seeds = {txtest::fixture("example.sol"), txtest::fixture("erc20.sol")};
  for (int i = 0; i < 20; ++i) seeds.push_back(txtest::generate_contract(rng, "M").source);
  const std::string alphabet = "(){}[];,.=+-*/<>!&|?:\"' \nabcx0123_";
  for (int i = 0; i < 3000; ++i) {
    std::string s = seeds[rng() % seeds.size()];
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits && !s.empty(); ++k) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s.erase(pos, 1 + rng() % 8); break;
        case 1: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: s[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    expect_only_source_errors(s);
  }
}

TEST(ParserFuzz, DeepNestingIsRejectedCleanly) {
  const std::string open(5000, '(');
  const std::string close(5000, ')');
  EXPECT_THROW(parse("contract C { function f() public { uint x = " + open + "1" + close + "; } }"),
               ParseError);
  std::string blocks = "contract C { function f() public ";
  for (int i = 0; i < 5000; ++i) blocks += "{";
  EXPECT_THROW(parse(blocks), ParseError);
}
