#include "txconflict/access.hpp"

#include "txconflict/parallel.hpp"

#include <algorithm>

namespace txconflict {

namespace {

const std::set<std::string_view> kBuiltinFunctions = {
    "require",   "assert",    "revert",   "keccak256", "sha256",  "sha3",
    "ripemd160", "ecrecover", "addmod",   "mulmod",    "selfdestruct", "suicide",
    "blockhash", "blobhash",  "gasleft"};

// Receivers whose member calls are language built-ins (`abi.encode`, ...).
const std::set<std::string_view> kBuiltinReceivers = {"abi", "msg", "block", "tx", "bytes",
                                                      "string"};

class BodyWalker {
 public:
  BodyWalker(const Contract& contract, const Program* program)
      : contract_(contract), program_(program) {}

  void function(const Function& f) {
    scopes_.clear();
    push_scope();
    declare(f.parameters);
    declare(f.returns);
    std::set<std::string> done;
    for (const auto& m : f.modifiers) {
      for (const auto& arg : m.arguments) expr(arg);
      const ModifierDefinition* def = contract_.find_modifier(m.name);
      if (def == nullptr || !done.insert(m.name).second) continue;
      // Modifier bodies see only their own parameters.
      auto saved = std::move(scopes_);
      scopes_.clear();
      push_scope();
      declare(def->parameters);
      site_override_ = f.line;
      statements(def->body);
      site_override_ = 0;
      scopes_ = std::move(saved);
    }
    if (f.body) statements(*f.body);
  }

  std::vector<AccessRecord> records;
  CallSet calls;

 private:
  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }
  void declare(const std::string& name) {
    if (!name.empty()) scopes_.back().insert(name);
  }
  void declare(const std::vector<Parameter>& ps) {
    for (const auto& p : ps) declare(p.name);
  }

  bool is_local(const std::string& name) const {
    return std::any_of(scopes_.begin(), scopes_.end(),
                       [&](const std::set<std::string>& s) { return s.count(name) != 0; });
  }

  const StateVariable* state_variable(const std::string& name) const {
    if (is_local(name)) return nullptr;
    return contract_.find_variable(name);
  }

  void record(const StateVariable& v, AccessMode mode, int line) {
    records.push_back(
        AccessRecord{qualified_variable(contract_, v), mode, site_override_ ? site_override_ : line});
  }

  // -- statements ----------------------------------------------------------

  void statements(const std::vector<Stmt>& list) {
    for (const auto& s : list) statement(s);
  }

  void scoped(const Stmt& s) {
    push_scope();
    statement(s);
    pop_scope();
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Block:
      case StmtKind::Unchecked:
        push_scope();
        statements(s.children);
        pop_scope();
        break;
      case StmtKind::VarDecl:
        for (const auto& e : s.exprs) expr(e);
        declare(s.vars);
        break;
      case StmtKind::Expression:
      case StmtKind::Return:
        for (const auto& e : s.exprs) expr(e);
        break;
      case StmtKind::If:
        expr(s.exprs[0]);
        for (const auto& c : s.children) scoped(c);
        break;
      case StmtKind::While:
        expr(s.exprs[0]);
        scoped(s.children[0]);
        break;
      case StmtKind::DoWhile:
        scoped(s.children[0]);
        expr(s.exprs[0]);
        break;
      case StmtKind::For:
        push_scope();
        statement(s.children[0]);
        expr(s.exprs[0]);
        expr(s.exprs[1]);
        scoped(s.children[1]);
        pop_scope();
        break;
      case StmtKind::Emit:
      case StmtKind::Revert:
        // The event or error name is not a call; only the arguments matter.
        arguments(s.exprs[0]);
        break;
      case StmtKind::Break:
      case StmtKind::Continue:
      case StmtKind::Empty:
        break;
    }
  }

  // -- expressions ---------------------------------------------------------

  void arguments(const Expr& call) {
    for (std::size_t i = 1; i < call.children.size(); ++i) expr(call.children[i]);
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Identifier:
        if (const auto* v = state_variable(e.text)) record(*v, AccessMode::Read, e.line);
        break;
      case ExprKind::Unary:
        if (e.text == "++" || e.text == "--") {
          target(e.children[0], true);
        } else if (e.text == "delete") {
          target(e.children[0], false);
        } else {
          expr(e.children[0]);
        }
        break;
      case ExprKind::Postfix:
        target(e.children[0], true);
        break;
      case ExprKind::Assign:
        target(e.children[0], e.text != "=");
        expr(e.children[1]);
        break;
      case ExprKind::Call:
        call(e);
        break;
      case ExprKind::Empty:
      case ExprKind::Literal:
      case ExprKind::ElementaryType:
      case ExprKind::New:
      case ExprKind::TypeCall:
        break;
      default:
        for (const auto& c : e.children) expr(c);
        break;
    }
  }

  // Assignment target: the base state variable is written (and read too for
  // compound forms); index expressions along the way are read.
  void target(const Expr& e, bool also_read) {
    switch (e.kind) {
      case ExprKind::Identifier:
        if (const auto* v = state_variable(e.text)) {
          if (also_read) record(*v, AccessMode::Read, e.line);
          if (!v->is_constant) record(*v, AccessMode::Write, e.line);
        }
        break;
      case ExprKind::Index:
        target(e.children[0], also_read);
        for (std::size_t i = 1; i < e.children.size(); ++i) expr(e.children[i]);
        break;
      case ExprKind::Member:
        target(e.children[0], also_read);
        break;
      case ExprKind::Tuple:
        for (const auto& c : e.children) target(c, also_read);
        break;
      case ExprKind::Conditional:
        expr(e.children[0]);
        target(e.children[1], also_read);
        target(e.children[2], also_read);
        break;
      case ExprKind::Empty:
        break;
      default:
        expr(e);
        break;
    }
  }

  void call(const Expr& e) {
    const Expr* callee = &e.children[0];
    if (callee->kind == ExprKind::CallOptions) {
      for (std::size_t i = 1; i < callee->children.size(); ++i) expr(callee->children[i]);
      callee = &callee->children[0];
    }
    const std::size_t arity = e.children.size() - 1;
    arguments(e);

    switch (callee->kind) {
      case ExprKind::Identifier:
        named_call(callee->text, arity, callee->line);
        break;
      case ExprKind::Member:
        member_call(*callee, arity);
        break;
      case ExprKind::ElementaryType:
      case ExprKind::New:
      case ExprKind::TypeCall:
        break;  // conversions and contract creation
      default:
        expr(*callee);
        calls.unresolved.insert("<dynamic>");
        break;
    }
  }

  void named_call(const std::string& name, std::size_t arity, int line) {
    if (is_local(name)) {
      calls.unresolved.insert(name);  // function-typed local
      return;
    }
    if (const auto* v = contract_.find_variable(name)) {
      record(*v, AccessMode::Read, line);
      calls.unresolved.insert(name);
      return;
    }
    if (resolve_in(contract_, name, arity)) return;
    if (kBuiltinFunctions.count(name) != 0 || contract_.declares_type(name) ||
        contract_.declares_event(name) || contract_.name == name ||
        (program_ != nullptr && program_->find_contract(name) != nullptr)) {
      return;
    }
    calls.unresolved.insert(name);
  }

  void member_call(const Expr& callee, std::size_t arity) {
    const Expr& receiver = callee.children[0];
    const std::string& name = callee.text;
    if (name == "push" || name == "pop") {
      target(receiver, false);
      return;
    }
    if (receiver.kind == ExprKind::TypeCall ||
        (receiver.kind == ExprKind::ElementaryType && kBuiltinReceivers.count(receiver.text) != 0)) {
      return;
    }
    if (receiver.kind == ExprKind::Identifier && !is_local(receiver.text) &&
        contract_.find_variable(receiver.text) == nullptr) {
      const std::string& r = receiver.text;
      if (kBuiltinReceivers.count(r) != 0) return;
      if (r == "this") {
        if (!resolve_in(contract_, name, arity)) calls.unresolved.insert(name);
        return;
      }
      if (program_ != nullptr) {
        if (const Contract* other = program_->find_contract(r)) {
          if (!resolve_in(*other, name, arity)) calls.unresolved.insert(name);
          return;
        }
      }
    }
    expr(receiver);
    calls.unresolved.insert(name);
  }

  // Resolves to every function of `c` named `name` with matching arity, or
  // to all same-named overloads when none matches.
  bool resolve_in(const Contract& c, const std::string& name, std::size_t arity) {
    std::vector<const Function*> named;
    for (const auto& f : c.functions) {
      if (f.kind == FunctionKind::Regular && f.name == name) named.push_back(&f);
    }
    if (named.empty()) return false;
    const bool any_exact = std::any_of(named.begin(), named.end(), [&](const Function* f) {
      return f->parameters.size() == arity;
    });
    for (const Function* f : named) {
      if (!any_exact || f->parameters.size() == arity) calls.resolved.insert(function_key(c, *f));
    }
    return true;
  }

  const Contract& contract_;
  const Program* program_;
  std::vector<std::set<std::string>> scopes_;
  int site_override_ = 0;
};

}  // namespace

std::string_view to_string(AccessMode mode) {
  return mode == AccessMode::Read ? "read" : "write";
}

Program::Program(std::span<const SourceUnit> units) {
  for (const auto& unit : units) {
    for (const auto& c : unit.contracts) {
      contracts_.emplace_back(&unit, &c);
      for (const auto& f : c.functions) entries_.push_back(Entry{function_key(c, f), &unit, &c, &f});
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::sort(contracts_.begin(), contracts_.end(),
            [](const auto& a, const auto& b) { return a.second->name < b.second->name; });
}

const Program::Entry* Program::find(std::string_view key) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                   [](const Entry& e, std::string_view k) { return e.key < k; });
  return it != entries_.end() && it->key == key ? &*it : nullptr;
}

const Contract* Program::find_contract(std::string_view name) const {
  const auto it = std::lower_bound(
      contracts_.begin(), contracts_.end(), name,
      [](const auto& entry, std::string_view n) { return entry.second->name < n; });
  return it != contracts_.end() && it->second->name == name ? it->second : nullptr;
}

std::vector<AccessRecord> collect_accesses(const Contract& c, const Function& f) {
  if (f.mutability == Mutability::Pure) return {};
  BodyWalker walker(c, nullptr);
  walker.function(f);
  auto out = std::move(walker.records);
  if (f.mutability == Mutability::View) {
    std::erase_if(out, [](const AccessRecord& r) { return r.mode == AccessMode::Write; });
  }
  return out;
}

namespace {

NameSet select(const std::vector<AccessRecord>& records, AccessMode mode) {
  NameSet out;
  for (const auto& r : records) {
    if (r.mode == mode) out.insert(r.variable);
  }
  return out;
}

}  // namespace

NameSet extract_reads(const Contract& c, const Function& f) {
  return select(collect_accesses(c, f), AccessMode::Read);
}

NameSet extract_writes(const Contract& c, const Function& f) {
  return select(collect_accesses(c, f), AccessMode::Write);
}

CallSet extract_calls(const Program& program, const Contract& c, const Function& f) {
  BodyWalker walker(c, &program);
  walker.function(f);
  return std::move(walker.calls);
}

AccessMaps build_access_maps(std::span<const SourceUnit> units, int jobs) {
  const Program program(units);
  const auto& entries = program.functions();
  struct Row {
    NameSet reads, writes;
    CallSet calls;
  };
  std::vector<Row> rows(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const auto records = collect_accesses(*e.contract, *e.function);
    rows[i].reads = select(records, AccessMode::Read);
    rows[i].writes = select(records, AccessMode::Write);
    rows[i].calls = extract_calls(program, *e.contract, *e.function);
  });
  AccessMaps maps;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& key = entries[i].key;
    maps.reads[key] = std::move(rows[i].reads);
    maps.writes[key] = std::move(rows[i].writes);
    maps.calls[key] = std::move(rows[i].calls.resolved);
    maps.unresolved_calls[key] = std::move(rows[i].calls.unresolved);
  }
  return maps;
}

}  // namespace txconflict
