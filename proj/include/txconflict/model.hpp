#pragma once

#include "txconflict/token.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace txconflict {

// ---------------------------------------------------------------------------
// Expressions and statements
// ---------------------------------------------------------------------------

enum class ExprKind {
  Empty,        // omitted tuple component / absent for-loop clause
  Identifier,   // text = name (includes `this`, `msg`, `super`, ...)
  ElementaryType,  // text = `uint256`, `address`, `payable`, ...; used as callee or tuple of types
  Literal,      // text = literal spelling
  Member,       // children[0] . text
  Index,        // children[0] [ children[1] ]  (children[1] may be Empty)
  Call,         // children[0] ( children[1..] )
  CallOptions,  // children[0] { text=comma-joined names : children[1..] }
  Unary,        // text = operator, children[0]
  Postfix,      // text = `++` or `--`, children[0]
  Binary,       // children[0] text children[1]
  Assign,       // children[0] text children[1]  (text is `=`, `+=`, ...)
  Conditional,  // children[0] ? children[1] : children[2]
  Tuple,        // ( children... )  -- also a plain parenthesized expression
  ArrayLiteral, // [ children... ]
  New,          // new <type text>
  TypeCall,     // type( children[0] )
};

struct Expr {
  ExprKind kind = ExprKind::Empty;
  std::string text;
  std::vector<Expr> children;
  int line = 0;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.text == b.text && a.children == b.children;
  }
};

enum class DataLocation { Default, Memory, Storage, Calldata };

std::string_view to_string(DataLocation loc);

struct Parameter {
  std::string name;  // possibly empty
  std::string type_name;
  DataLocation location = DataLocation::Default;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

enum class StmtKind {
  Block,
  Unchecked,  // `unchecked { ... }`, children = statements
  VarDecl,    // vars, exprs = {initializer} or {}
  Expression, // exprs = {expr}
  If,         // exprs = {cond}; children = {then} or {then, else}
  While,      // exprs = {cond}; children = {body}
  DoWhile,    // children = {body}; exprs = {cond}
  For,        // children = {init, body}; exprs = {cond, post}; absent parts are Empty
  Return,     // exprs = {} or {value}
  Emit,       // exprs = {event call}
  Revert,     // `revert Err(...)`; exprs = {call}
  Break,
  Continue,
  Empty,      // `;` or an absent for-init
};

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  std::vector<Parameter> vars;  // VarDecl; a tuple declaration may hold unnamed slots
  std::vector<Expr> exprs;
  std::vector<Stmt> children;
  int line = 0;

  friend bool operator==(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.vars == b.vars && a.exprs == b.exprs && a.children == b.children;
  }
};

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

enum class Visibility { Public, Private, Internal, External };
enum class Mutability { Pure, View, Payable, NonPayable };

std::string_view to_string(Visibility v);
std::string_view to_string(Mutability m);

struct StateVariable {
  std::string name;
  std::string type_name;
  Visibility visibility = Visibility::Internal;
  bool is_constant = false;
  bool is_immutable = false;
  std::string declaring_contract;
  std::optional<Expr> initializer;
  TokenStream initializer_tokens;
  int line = 0;

  friend bool operator==(const StateVariable& a, const StateVariable& b) {
    return a.name == b.name && a.type_name == b.type_name && a.visibility == b.visibility &&
           a.is_constant == b.is_constant && a.is_immutable == b.is_immutable &&
           a.declaring_contract == b.declaring_contract && a.initializer == b.initializer &&
           a.initializer_tokens == b.initializer_tokens;
  }
};

struct ModifierInvocation {
  std::string name;
  std::vector<Expr> arguments;
  std::vector<TokenStream> argument_tokens;  // parallel to arguments
  bool has_parens = false;

  friend bool operator==(const ModifierInvocation&, const ModifierInvocation&) = default;
};

enum class FunctionKind { Regular, Constructor, Fallback, Receive };

struct Function {
  std::string name;  // source name; special functions use `constructor`/`fallback`/`receive`
  /// Unique within the contract: `name/arity`, plus `~k` for same-arity overloads.
  std::string id;
  FunctionKind kind = FunctionKind::Regular;
  std::vector<Parameter> parameters;
  std::vector<Parameter> returns;
  Visibility visibility = Visibility::Public;
  Mutability mutability = Mutability::NonPayable;
  std::vector<ModifierInvocation> modifiers;
  bool is_virtual = false;
  bool has_override = false;
  /// Absent for abstract declarations (`function f();`).
  std::optional<std::vector<Stmt>> body;
  TokenStream body_tokens;  // between the outer braces
  int line = 0;
  int end_line = 0;

  bool is_constructor() const { return kind == FunctionKind::Constructor; }
  bool is_fallback() const { return kind == FunctionKind::Fallback; }
  bool is_receive() const { return kind == FunctionKind::Receive; }
  bool has_body() const { return body.has_value(); }

  friend bool operator==(const Function& a, const Function& b) {
    return a.name == b.name && a.id == b.id && a.kind == b.kind &&
           a.parameters == b.parameters && a.returns == b.returns &&
           a.visibility == b.visibility && a.mutability == b.mutability &&
           a.modifiers == b.modifiers && a.is_virtual == b.is_virtual &&
           a.has_override == b.has_override && a.body == b.body &&
           a.body_tokens == b.body_tokens;
  }
};

struct ModifierDefinition {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<Stmt> body;
  TokenStream body_tokens;
  int line = 0;

  friend bool operator==(const ModifierDefinition& a, const ModifierDefinition& b) {
    return a.name == b.name && a.parameters == b.parameters && a.body == b.body &&
           a.body_tokens == b.body_tokens;
  }
};

struct Event {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<bool> indexed;  // parallel to parameters
  bool anonymous = false;

  friend bool operator==(const Event&, const Event&) = default;
};

/// struct / enum / error declarations: only their names matter to analysis;
/// tokens are kept for printing.
struct TypeDeclaration {
  std::string keyword;  // "struct", "enum" or "error"
  std::string name;
  TokenStream tokens;   // everything after the name up to and including the terminator

  friend bool operator==(const TypeDeclaration&, const TypeDeclaration&) = default;
};

struct Contract {
  std::string name;
  bool is_abstract = false;
  std::vector<StateVariable> state_variables;
  std::vector<Function> functions;
  std::vector<Event> events;
  std::vector<ModifierDefinition> modifiers;
  std::vector<TypeDeclaration> types;
  int line = 0;

  const StateVariable* find_variable(std::string_view name) const;
  const Function* find_function(std::string_view id) const;
  const ModifierDefinition* find_modifier(std::string_view name) const;
  bool declares_type(std::string_view name) const;
  bool declares_event(std::string_view name) const;

  friend bool operator==(const Contract& a, const Contract& b) {
    return a.name == b.name && a.is_abstract == b.is_abstract &&
           a.state_variables == b.state_variables && a.functions == b.functions &&
           a.events == b.events && a.modifiers == b.modifiers && a.types == b.types;
  }
};

struct SourceUnit {
  std::string path;
  /// Version constraint of `pragma solidity`, e.g. `^0.8.0`.
  std::optional<std::string> pragma;
  std::vector<std::string> other_pragmas;  // full text of non-solidity pragmas
  std::vector<TypeDeclaration> file_types;
  std::vector<Contract> contracts;

  friend bool operator==(const SourceUnit&, const SourceUnit&) = default;
};

/// Name used for sources that did not come from disk.
inline constexpr std::string_view kSyntheticSourceName = "<memory>";

// Qualified names used as keys throughout the analysis.
std::string qualified_variable(const Contract& c, const StateVariable& v);
std::string function_key(const Contract& c, const Function& f);

}  // namespace txconflict
