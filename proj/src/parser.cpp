#include "txconflict/parser.hpp"

#include "txconflict/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace txconflict {

namespace {

constexpr int kMaxNesting = 200;

const std::set<std::string_view> kAssignOps = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                               "|=", "&=", "^=", "<<=", ">>=", ">>>="};

const std::set<std::string_view> kNumberUnits = {"wei",   "gwei",    "ether", "szabo",
                                                 "finney", "seconds", "minutes", "hours",
                                                 "days",  "weeks",   "years"};

int binary_precedence(const Token& tok) {
  if (tok.kind != TokenKind::Operator) return -1;
  static const std::map<std::string_view, int> table = {
      {"||", 1}, {"&&", 2}, {"==", 3}, {"!=", 3}, {"<", 4},   {">", 4},  {"<=", 4},
      {">=", 4}, {"|", 5},  {"^", 6},  {"&", 7},  {"<<", 8},  {">>", 8}, {">>>", 8},
      {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10},  {"**", 11}};
  const auto it = table.find(tok.text);
  return it == table.end() ? -1 : it->second;
}

std::optional<DataLocation> location_of(const Token& tok) {
  if (tok.is_keyword("memory")) return DataLocation::Memory;
  if (tok.is_keyword("storage")) return DataLocation::Storage;
  if (tok.is_keyword("calldata")) return DataLocation::Calldata;
  return std::nullopt;
}

Expr node(ExprKind kind, std::string text, int line, Expr a) {
  Expr e{kind, std::move(text), {}, line};
  e.children.push_back(std::move(a));
  return e;
}

Expr node(ExprKind kind, std::string text, int line, Expr a, Expr b) {
  Expr e = node(kind, std::move(text), line, std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

Expr node(ExprKind kind, std::string text, int line, Expr a, Expr b, Expr c) {
  Expr e = node(kind, std::move(text), line, std::move(a), std::move(b));
  e.children.push_back(std::move(c));
  return e;
}

class Parser {
 public:
  Parser(TokenStream tokens, std::string path) : toks_(std::move(tokens)), path_(std::move(path)) {}

  SourceUnit unit() {
    SourceUnit out;
    out.path = path_;
    std::set<std::string> names;
    while (!at_end()) {
      const Token& t = peek();
      if (t.is_keyword("pragma")) {
        advance();
        const Token text = expect_kind(TokenKind::PragmaText, "pragma text");
        expect_punct(";");
        const std::string_view body = text.text;
        if (body.rfind("solidity", 0) == 0 && !out.pragma) {
          std::string version(body.substr(8));
          version.erase(0, version.find_first_not_of(" \t\r\n"));
          out.pragma = version;
        } else {
          out.other_pragmas.push_back(text.text);
        }
      } else if (t.is_keyword("import")) {
        unsupported("import directives (multi-file sources)", t);
      } else if (t.is_keyword("interface") || t.is_keyword("library")) {
        unsupported(t.text + " declarations", t);
      } else if (t.is_keyword("contract") || t.is_keyword("abstract")) {
        Contract c = contract();
        if (!names.insert(c.name).second) fail("duplicate contract name '" + c.name + "'", t);
        out.contracts.push_back(std::move(c));
      } else if (t.is_keyword("struct") || t.is_keyword("enum") || is_error_decl() ||
                 t.is_keyword("event")) {
        out.file_types.push_back(type_declaration());
      } else if (t.is_keyword("using")) {
        unsupported("using-for directives", t);
      } else if (t.is_keyword("function")) {
        unsupported("free functions", t);
      } else {
        unsupported("file-level declaration starting with '" + t.text + "'", t);
      }
    }
    return out;
  }

 private:
  // -- token cursor ---------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek(std::size_t ahead = 0) const {
    static const Token eof{TokenKind::Punct, "", 0, 0};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof;
  }
  const Token& advance() {
    if (at_end()) fail("unexpected end of input");
    return toks_[pos_++];
  }

  std::string where(const Token& t) const {
    if (t.line == 0) return "end of input";
    return std::to_string(t.line) + ":" + std::to_string(t.column);
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    const int line = at.line == 0 && !toks_.empty() ? toks_.back().line : at.line;
    throw ParseError(msg + " at " + where(at), line, at.column);
  }
  [[noreturn]] void unsupported(const std::string& what, const Token& at) const {
    throw UnsupportedConstruct("unsupported construct: " + what + " at " + where(at), at.line,
                               at.column);
  }
  [[noreturn]] void expected(std::string_view what) const {
    const Token& t = peek();
    const std::string found = at_end() ? "end of input" : "'" + t.text + "'";
    fail("expected " + std::string(what) + ", found " + found);
  }

  bool accept_punct(std::string_view p) {
    if (peek().is_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_keyword(std::string_view k) {
    if (peek().is_keyword(k)) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) expected("'" + std::string(p) + "'");
    return advance();
  }
  const Token& expect_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) expected("'" + std::string(k) + "'");
    return advance();
  }
  const Token& expect_kind(TokenKind kind, std::string_view what) {
    if (at_end() || peek().kind != kind) expected(what);
    return advance();
  }
  std::string expect_identifier(std::string_view what = "identifier") {
    return expect_kind(TokenKind::Identifier, what).text;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) {
        --parser.depth_;
        parser.fail("nesting too deep");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& parser;
  };

  bool is_error_decl() const {
    return peek().is(TokenKind::Identifier, "error") && peek(1).kind == TokenKind::Identifier &&
           peek(2).is_punct("(");
  }

  // Copies tokens up to and including the terminator, balancing brackets.
  TokenStream capture_until(std::string_view terminator) {
    TokenStream out;
    int depth = 0;
    while (true) {
      const Token& t = advance();
      out.push_back(t);
      if (t.is_punct("(") || t.is_punct("{") || t.is_punct("[")) ++depth;
      if (t.is_punct(")") || t.is_punct("}") || t.is_punct("]")) --depth;
      if (depth < 0) fail("unbalanced '" + t.text + "'", t);
      if (depth == 0 && t.is_punct(terminator)) return out;
    }
  }

  TypeDeclaration type_declaration() {
    TypeDeclaration decl;
    decl.keyword = advance().text;
    decl.name = expect_identifier("type name");
    const bool braces = decl.keyword == "struct" || decl.keyword == "enum";
    if (braces && !peek().is_punct("{")) expected("'{'");
    decl.tokens = capture_until(braces ? "}" : ";");
    return decl;
  }

  // -- types ----------------------------------------------------------------

  std::string type_name() {
    DepthGuard guard(*this);
    std::string text;
    const Token& t = peek();
    if (t.is_keyword("mapping")) {
      advance();
      expect_punct("(");
      text = "mapping(" + type_name();
      if (peek().kind == TokenKind::Identifier) text += " " + advance().text;
      if (!peek().is_op("=>")) expected("'=>'");
      advance();
      text += " => " + type_name();
      if (peek().kind == TokenKind::Identifier) text += " " + advance().text;
      expect_punct(")");
      text += ")";
    } else if (t.is_keyword("function")) {
      unsupported("function-typed variables", t);
    } else if (t.kind == TokenKind::Keyword && is_elementary_type(t.text)) {
      text = advance().text;
      if (text == "address" && accept_keyword("payable")) text += " payable";
    } else if (t.is_keyword("var")) {
      text = advance().text;
    } else if (t.kind == TokenKind::Identifier) {
      text = advance().text;
      while (peek().is_punct(".") && peek(1).kind == TokenKind::Identifier) {
        advance();
        text += "." + advance().text;
      }
    } else {
      expected("type name");
    }
    while (peek().is_punct("[")) {
      advance();
      text += "[";
      if (!peek().is_punct("]")) {
        const std::size_t start = pos_;
        expression();
        text += join_tokens(TokenStream(toks_.begin() + static_cast<std::ptrdiff_t>(start),
                                        toks_.begin() + static_cast<std::ptrdiff_t>(pos_)));
      }
      expect_punct("]");
      text += "]";
    }
    return text;
  }

  Parameter parameter(bool allow_indexed, bool* indexed = nullptr) {
    Parameter p;
    p.type_name = type_name();
    if (auto loc = location_of(peek())) {
      p.location = *loc;
      advance();
    }
    if (allow_indexed && accept_keyword("indexed") && indexed != nullptr) *indexed = true;
    if (peek().kind == TokenKind::Identifier) p.name = advance().text;
    return p;
  }

  std::vector<Parameter> parameter_list(std::vector<bool>* indexed = nullptr) {
    std::vector<Parameter> out;
    expect_punct("(");
    if (accept_punct(")")) return out;
    while (true) {
      bool idx = false;
      out.push_back(parameter(indexed != nullptr, &idx));
      if (indexed != nullptr) indexed->push_back(idx);
      if (accept_punct(")")) return out;
      expect_punct(",");
    }
  }

  // -- contract members ----------------------------------------------------

  Contract contract() {
    Contract c;
    c.line = peek().line;
    if (accept_keyword("abstract")) c.is_abstract = true;
    expect_keyword("contract");
    c.name = expect_identifier("contract name");
    if (peek().is_keyword("is")) unsupported("inheritance lists", peek());
    expect_punct("{");
    std::set<std::string> var_names;
    while (!accept_punct("}")) {
      if (at_end()) expected("'}'");
      const Token& t = peek();
      if (t.is_keyword("function") || t.is_keyword("constructor") ||
          ((t.is_keyword("fallback") || t.is_keyword("receive")) && peek(1).is_punct("("))) {
        c.functions.push_back(function());
      } else if (t.is_keyword("modifier")) {
        c.modifiers.push_back(modifier());
      } else if (t.is_keyword("event")) {
        c.events.push_back(event());
      } else if (t.is_keyword("struct") || t.is_keyword("enum") || is_error_decl()) {
        c.types.push_back(type_declaration());
      } else if (t.is_keyword("using")) {
        unsupported("using-for directives", t);
      } else if (t.is_keyword("assembly")) {
        unsupported("inline assembly", t);
      } else {
        StateVariable v = state_variable(c.name);
        if (!var_names.insert(v.name).second) {
          fail("duplicate state variable '" + v.name + "'", t);
        }
        c.state_variables.push_back(std::move(v));
      }
    }
    assign_function_ids(c);
    return c;
  }

  static void assign_function_ids(Contract& c) {
    std::map<std::string, int> seen;
    for (auto& f : c.functions) {
      const std::string base = f.name + "/" + std::to_string(f.parameters.size());
      const int n = ++seen[base];
      f.id = n == 1 ? base : base + "~" + std::to_string(n);
    }
  }

  StateVariable state_variable(const std::string& contract_name) {
    StateVariable v;
    v.line = peek().line;
    v.declaring_contract = contract_name;
    v.type_name = type_name();
    while (true) {
      const Token& t = peek();
      if (t.is_keyword("public")) {
        v.visibility = Visibility::Public;
      } else if (t.is_keyword("private")) {
        v.visibility = Visibility::Private;
      } else if (t.is_keyword("internal")) {
        v.visibility = Visibility::Internal;
      } else if (t.is_keyword("constant")) {
        v.is_constant = true;
      } else if (t.is_keyword("immutable")) {
        v.is_immutable = true;
      } else if (t.is_keyword("override")) {
        advance();
        if (peek().is_punct("(")) capture_until(")");
        continue;
      } else if (t.is(TokenKind::Identifier, "transient") &&
                 peek(1).kind == TokenKind::Identifier) {
        // storage-like enough for conflict purposes
      } else {
        break;
      }
      advance();
    }
    v.name = expect_identifier("state variable name");
    if (peek().is_op("=")) {
      advance();
      const std::size_t start = pos_;
      v.initializer = expression();
      v.initializer_tokens.assign(toks_.begin() + static_cast<std::ptrdiff_t>(start),
                                  toks_.begin() + static_cast<std::ptrdiff_t>(pos_));
    }
    expect_punct(";");
    return v;
  }

  Event event() {
    Event e;
    expect_keyword("event");
    e.name = expect_identifier("event name");
    e.parameters = parameter_list(&e.indexed);
    e.anonymous = accept_keyword("anonymous");
    expect_punct(";");
    return e;
  }

  ModifierDefinition modifier() {
    ModifierDefinition m;
    m.line = peek().line;
    expect_keyword("modifier");
    m.name = expect_identifier("modifier name");
    if (peek().is_punct("(")) m.parameters = parameter_list();
    while (true) {
      if (accept_keyword("virtual")) continue;
      if (accept_keyword("override")) {
        if (peek().is_punct("(")) capture_until(")");
        continue;
      }
      break;
    }
    if (accept_punct(";")) return m;
    int end_line = 0;
    m.body = block_body(m.body_tokens, end_line);
    return m;
  }

  Function function() {
    Function f;
    f.line = peek().line;
    const Token& head = advance();
    if (head.is_keyword("constructor")) {
      f.kind = FunctionKind::Constructor;
      f.name = "constructor";
    } else if (head.is_keyword("fallback")) {
      f.kind = FunctionKind::Fallback;
      f.name = "fallback";
      f.visibility = Visibility::External;
    } else if (head.is_keyword("receive")) {
      f.kind = FunctionKind::Receive;
      f.name = "receive";
      f.visibility = Visibility::External;
    } else if (peek().is_punct("(")) {
      f.kind = FunctionKind::Fallback;  // pre-0.6 unnamed fallback
      f.name = "fallback";
    } else {
      const Token& name = peek();
      if (name.kind == TokenKind::Identifier) {
        f.name = advance().text;
      } else if (name.is_keyword("fallback") || name.is_keyword("receive")) {
        f.name = advance().text;
      } else {
        expected("function name");
      }
    }
    f.parameters = parameter_list();
    while (true) {
      const Token& t = peek();
      if (t.is_keyword("public")) {
        f.visibility = Visibility::Public;
      } else if (t.is_keyword("private")) {
        f.visibility = Visibility::Private;
      } else if (t.is_keyword("internal")) {
        f.visibility = Visibility::Internal;
      } else if (t.is_keyword("external")) {
        f.visibility = Visibility::External;
      } else if (t.is_keyword("pure")) {
        f.mutability = Mutability::Pure;
      } else if (t.is_keyword("view") || t.is_keyword("constant")) {
        f.mutability = Mutability::View;
      } else if (t.is_keyword("payable")) {
        f.mutability = Mutability::Payable;
      } else if (t.is_keyword("virtual")) {
        f.is_virtual = true;
      } else if (t.is_keyword("override")) {
        advance();
        f.has_override = true;
        if (peek().is_punct("(")) capture_until(")");
        continue;
      } else if (t.is_keyword("returns")) {
        advance();
        f.returns = parameter_list();
        continue;
      } else if (t.kind == TokenKind::Identifier) {
        f.modifiers.push_back(modifier_invocation());
        continue;
      } else {
        break;
      }
      advance();
    }
    if (accept_punct(";")) {
      f.end_line = f.line;
      return f;
    }
    f.body = block_body(f.body_tokens, f.end_line);
    return f;
  }

  ModifierInvocation modifier_invocation() {
    ModifierInvocation m;
    m.name = advance().text;
    while (peek().is_punct(".") && peek(1).kind == TokenKind::Identifier) {
      advance();
      m.name += "." + advance().text;
    }
    if (peek().is_punct("(")) {
      m.has_parens = true;
      advance();
      if (!accept_punct(")")) {
        while (true) {
          const std::size_t start = pos_;
          m.arguments.push_back(expression());
          m.argument_tokens.emplace_back(toks_.begin() + static_cast<std::ptrdiff_t>(start),
                                         toks_.begin() + static_cast<std::ptrdiff_t>(pos_));
          if (accept_punct(")")) break;
          expect_punct(",");
        }
      }
    }
    return m;
  }

  // Parses `{ ... }`, recording the inner tokens and the closing line.
  std::vector<Stmt> block_body(TokenStream& tokens, int& end_line) {
    expect_punct("{");
    const std::size_t start = pos_;
    std::vector<Stmt> stmts;
    while (!peek().is_punct("}")) {
      if (at_end()) expected("'}'");
      stmts.push_back(statement());
    }
    tokens.assign(toks_.begin() + static_cast<std::ptrdiff_t>(start),
                  toks_.begin() + static_cast<std::ptrdiff_t>(pos_));
    end_line = advance().line;
    return stmts;
  }

  // -- statements ----------------------------------------------------------

  Stmt statement() {
    DepthGuard guard(*this);
    Stmt s;
    const Token& t = peek();
    s.line = t.line;
    if (t.is_punct("{")) {
      s.kind = StmtKind::Block;
      s.children = block();
    } else if (t.is_keyword("unchecked")) {
      advance();
      s.kind = StmtKind::Unchecked;
      s.children = block();
    } else if (t.is_keyword("if")) {
      advance();
      s.kind = StmtKind::If;
      expect_punct("(");
      s.exprs.push_back(expression());
      expect_punct(")");
      s.children.push_back(statement());
      if (accept_keyword("else")) s.children.push_back(statement());
    } else if (t.is_keyword("while")) {
      advance();
      s.kind = StmtKind::While;
      expect_punct("(");
      s.exprs.push_back(expression());
      expect_punct(")");
      s.children.push_back(statement());
    } else if (t.is_keyword("do")) {
      advance();
      s.kind = StmtKind::DoWhile;
      s.children.push_back(statement());
      expect_keyword("while");
      expect_punct("(");
      s.exprs.push_back(expression());
      expect_punct(")");
      expect_punct(";");
    } else if (t.is_keyword("for")) {
      advance();
      s.kind = StmtKind::For;
      expect_punct("(");
      if (accept_punct(";")) {
        s.children.push_back(Stmt{StmtKind::Empty, {}, {}, {}, t.line});
      } else {
        s.children.push_back(simple_statement());
      }
      s.exprs.push_back(peek().is_punct(";") ? Expr{} : expression());
      expect_punct(";");
      s.exprs.push_back(peek().is_punct(")") ? Expr{} : expression());
      expect_punct(")");
      s.children.push_back(statement());
    } else if (t.is_keyword("return")) {
      advance();
      s.kind = StmtKind::Return;
      if (!peek().is_punct(";")) s.exprs.push_back(expression());
      expect_punct(";");
    } else if (t.is_keyword("emit")) {
      advance();
      s.kind = StmtKind::Emit;
      Expr call = expression();
      if (call.kind != ExprKind::Call) fail("expected event invocation after 'emit'", t);
      s.exprs.push_back(std::move(call));
      expect_punct(";");
    } else if (t.is_keyword("revert") && !peek(1).is_punct("(")) {
      advance();
      s.kind = StmtKind::Revert;
      Expr call = expression();
      if (call.kind != ExprKind::Call) fail("expected error invocation after 'revert'", t);
      s.exprs.push_back(std::move(call));
      expect_punct(";");
    } else if (t.is_keyword("break") || t.is_keyword("continue")) {
      s.kind = t.is_keyword("break") ? StmtKind::Break : StmtKind::Continue;
      advance();
      expect_punct(";");
    } else if (t.is_keyword("assembly")) {
      unsupported("inline assembly", t);
    } else if (t.is_keyword("try")) {
      unsupported("try/catch statements", t);
    } else if (t.is_punct(";")) {
      advance();
      s.kind = StmtKind::Empty;
    } else {
      s = simple_statement();
    }
    return s;
  }

  std::vector<Stmt> block() {
    expect_punct("{");
    std::vector<Stmt> out;
    while (!accept_punct("}")) {
      if (at_end()) expected("'}'");
      out.push_back(statement());
    }
    return out;
  }

  // Variable declaration or expression statement, including the `;`.
  Stmt simple_statement() {
    Stmt s;
    s.line = peek().line;
    if (auto decl = try_variable_declaration()) return std::move(*decl);
    s.kind = StmtKind::Expression;
    s.exprs.push_back(expression());
    expect_punct(";");
    return s;
  }

  std::optional<Stmt> try_variable_declaration() {
    const Token& t = peek();
    const std::size_t saved = pos_;
    Stmt s;
    s.kind = StmtKind::VarDecl;
    s.line = t.line;
    if (t.is_punct("(")) {
      try {
        advance();
        while (true) {
          if (peek().is_punct(",")) {
            s.vars.push_back(Parameter{});
          } else if (peek().is_punct(")")) {
            if (!s.vars.empty()) s.vars.push_back(Parameter{});
          } else {
            Parameter p = parameter(false);
            if (p.name.empty()) throw ParseError("not a declaration", 0, 0);
            s.vars.push_back(std::move(p));
          }
          if (accept_punct(")")) break;
          expect_punct(",");
        }
        if (!peek().is_op("=")) throw ParseError("not a declaration", 0, 0);
        if (std::none_of(s.vars.begin(), s.vars.end(),
                         [](const Parameter& p) { return !p.name.empty(); })) {
          throw ParseError("not a declaration", 0, 0);
        }
      } catch (const ParseError&) {
        pos_ = saved;
        return std::nullopt;
      }
    } else {
      const bool elementary = t.kind == TokenKind::Keyword && is_elementary_type(t.text);
      const bool maybe_type = t.is_keyword("mapping") || t.is_keyword("var") ||
                              t.kind == TokenKind::Identifier ||
                              (elementary && !peek(1).is_punct("(") && !peek(1).is_punct("."));
      if (!maybe_type) return std::nullopt;
      Parameter p;
      try {
        p.type_name = type_name();
      } catch (const ParseError&) {
        pos_ = saved;
        return std::nullopt;
      } catch (const UnsupportedConstruct&) {
        pos_ = saved;
        return std::nullopt;
      }
      if (auto loc = location_of(peek())) {
        p.location = *loc;
        advance();
      }
      if (peek().kind != TokenKind::Identifier) {
        pos_ = saved;
        return std::nullopt;
      }
      p.name = advance().text;
      s.vars.push_back(std::move(p));
    }
    if (peek().is_op("=")) {
      advance();
      s.exprs.push_back(expression());
    }
    expect_punct(";");
    return s;
  }

  // -- expressions ---------------------------------------------------------

  Expr expression() {
    DepthGuard guard(*this);
    const int line = peek().line;
    Expr lhs = conditional();
    if (peek().kind == TokenKind::Operator && kAssignOps.count(peek().text) != 0) {
      const std::string op = advance().text;
      Expr rhs = expression();
      return node(ExprKind::Assign, op, line, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr conditional() {
    const int line = peek().line;
    Expr cond = binary(1);
    if (accept_punct("?")) {
      Expr a = expression();
      expect_punct(":");
      Expr b = expression();
      return node(ExprKind::Conditional, "?", line, std::move(cond), std::move(a), std::move(b));
    }
    return cond;
  }

  Expr binary(int min_prec) {
    DepthGuard guard(*this);
    Expr lhs = unary();
    while (true) {
      const int prec = binary_precedence(peek());
      if (prec < min_prec) return lhs;
      const int line = peek().line;
      const std::string op = advance().text;
      Expr rhs = op == "**" ? binary(prec) : binary(prec + 1);
      lhs = node(ExprKind::Binary, op, line, std::move(lhs), std::move(rhs));
    }
  }

  Expr unary() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if ((t.kind == TokenKind::Operator &&
         (t.text == "!" || t.text == "~" || t.text == "-" || t.text == "+" || t.text == "++" ||
          t.text == "--")) ||
        t.is_keyword("delete")) {
      const std::string op = advance().text;
      const int line = t.line;
      return node(ExprKind::Unary, op, line, unary());
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      const Token& t = peek();
      if (t.is_punct(".")) {
        advance();
        const Token& member = peek();
        if (member.kind != TokenKind::Identifier && member.kind != TokenKind::Keyword) {
          expected("member name");
        }
        advance();
        e = node(ExprKind::Member, member.text, t.line, std::move(e));
      } else if (t.is_punct("[")) {
        advance();
        Expr idx;
        idx.kind = ExprKind::Index;
        idx.line = t.line;
        idx.children.push_back(std::move(e));
        idx.children.push_back(peek().is_punct("]") || peek().is_punct(":") ? Expr{} : expression());
        if (accept_punct(":")) {
          idx.text = ":";
          idx.children.push_back(peek().is_punct("]") ? Expr{} : expression());
        }
        expect_punct("]");
        e = std::move(idx);
      } else if (t.is_punct("(")) {
        e = call(std::move(e));
      } else if (t.is_punct("{") && peek(1).kind == TokenKind::Identifier && peek(2).is_punct(":")) {
        advance();
        Expr opts = node(ExprKind::CallOptions, "", t.line, std::move(e));
        named_values(opts);
        e = std::move(opts);
      } else if (t.is_op("++") || t.is_op("--")) {
        advance();
        e = node(ExprKind::Postfix, t.text, t.line, std::move(e));
      } else {
        return e;
      }
    }
  }

  // `{ name: value, ... }` after the opening brace has been consumed.
  void named_values(Expr& into) {
    std::vector<std::string> names;
    if (!peek().is_punct("}")) {
      while (true) {
        names.push_back(expect_identifier("argument name"));
        expect_punct(":");
        into.children.push_back(expression());
        if (!accept_punct(",")) break;
      }
    }
    expect_punct("}");
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ",") + n;
    into.text = joined;
  }

  Expr call(Expr callee) {
    const int line = peek().line;
    expect_punct("(");
    Expr e = node(ExprKind::Call, "", line, std::move(callee));
    if (accept_punct(")")) return e;
    if (accept_punct("{")) {
      named_values(e);
      e.text = "{" + e.text + "}";
      expect_punct(")");
      return e;
    }
    while (true) {
      e.children.push_back(expression());
      if (accept_punct(")")) return e;
      expect_punct(",");
    }
  }

  Expr primary() {
    DepthGuard guard(*this);
    const Token& t = peek();
    const int line = t.line;
    if (t.kind == TokenKind::Identifier) {
      advance();
      if ((t.text == "hex" || t.text == "unicode") && peek().kind == TokenKind::String) {
        std::string text = t.text + advance().text;
        while (peek().kind == TokenKind::String) text += " " + advance().text;
        return Expr{ExprKind::Literal, text, {}, line};
      }
      return Expr{ExprKind::Identifier, t.text, {}, line};
    }
    if (t.kind == TokenKind::Number) {
      std::string text = advance().text;
      if (peek().kind == TokenKind::Identifier && kNumberUnits.count(peek().text) != 0) {
        text += " " + advance().text;
      }
      return Expr{ExprKind::Literal, text, {}, line};
    }
    if (t.kind == TokenKind::String) {
      std::string text = advance().text;
      while (peek().kind == TokenKind::String) text += " " + advance().text;
      return Expr{ExprKind::Literal, text, {}, line};
    }
    if (t.is_keyword("true") || t.is_keyword("false")) {
      return Expr{ExprKind::Literal, advance().text, {}, line};
    }
    if (t.is_punct("(")) {
      advance();
      Expr tuple{ExprKind::Tuple, "", {}, line};
      while (true) {
        if (peek().is_punct(",") || peek().is_punct(")")) {
          if (peek().is_punct(")") && tuple.children.empty()) break;  // `()`
          tuple.children.push_back(Expr{});
        } else {
          tuple.children.push_back(expression());
        }
        if (peek().is_punct(")")) break;
        expect_punct(",");
      }
      expect_punct(")");
      return tuple;
    }
    if (t.is_punct("[")) {
      advance();
      Expr arr{ExprKind::ArrayLiteral, "", {}, line};
      if (!accept_punct("]")) {
        while (true) {
          arr.children.push_back(expression());
          if (accept_punct("]")) break;
          expect_punct(",");
        }
      }
      return arr;
    }
    if (t.is_keyword("new")) {
      advance();
      return Expr{ExprKind::New, type_name(), {}, line};
    }
    if (t.is_keyword("type") && peek(1).is_punct("(")) {
      advance();
      advance();
      Expr e = node(ExprKind::TypeCall, "type", line, expression());
      expect_punct(")");
      return e;
    }
    if ((t.kind == TokenKind::Keyword && is_elementary_type(t.text)) || t.is_keyword("payable")) {
      std::string text = advance().text;
      if (text == "address" && peek().is_keyword("payable") && !peek(1).is_punct("(")) {
        text += " " + advance().text;
      }
      return Expr{ExprKind::ElementaryType, text, {}, line};
    }
    if (t.is_keyword("revert")) {
      // `revert(...)` used as an ordinary call
      return Expr{ExprKind::Identifier, advance().text, {}, line};
    }
    if (t.is_keyword("assembly")) unsupported("inline assembly", t);
    expected("expression");
  }

  TokenStream toks_;
  std::string path_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

SourceUnit parse(std::string_view source, std::string path) {
  TokenStream tokens = tokenize(source);
  return Parser(std::move(tokens), std::move(path)).unit();
}

}  // namespace txconflict
