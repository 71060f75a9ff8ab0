#include "txconflict/parser.hpp"

#include <sstream>

namespace txconflict {

namespace {

std::string params(const std::vector<Parameter>& ps, const std::vector<bool>* indexed = nullptr) {
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i != 0) out += ", ";
    out += ps[i].type_name;
    if (ps[i].location != DataLocation::Default) out += " " + std::string(to_string(ps[i].location));
    if (indexed != nullptr && i < indexed->size() && (*indexed)[i]) out += " indexed";
    if (!ps[i].name.empty()) out += " " + ps[i].name;
  }
  return out + ")";
}

void print_body(std::ostringstream& os, const TokenStream& tokens) {
  os << " {\n";
  if (!tokens.empty()) os << "    " << join_tokens(tokens) << "\n";
  os << "  }\n";
}

void print_type(std::ostringstream& os, const TypeDeclaration& t, const char* indent) {
  os << indent << t.keyword << " " << t.name << " " << join_tokens(t.tokens) << "\n";
}

void print_function(std::ostringstream& os, const Function& f) {
  os << "  ";
  switch (f.kind) {
    case FunctionKind::Constructor: os << "constructor"; break;
    case FunctionKind::Fallback: os << "fallback"; break;
    case FunctionKind::Receive: os << "receive"; break;
    case FunctionKind::Regular: os << "function " << f.name; break;
  }
  os << params(f.parameters);
  if (!(f.is_constructor() && f.visibility == Visibility::Public)) os << " " << to_string(f.visibility);
  if (f.mutability != Mutability::NonPayable) os << " " << to_string(f.mutability);
  if (f.is_virtual) os << " virtual";
  if (f.has_override) os << " override";
  for (const auto& m : f.modifiers) {
    os << " " << m.name;
    if (m.has_parens) {
      os << "(";
      for (std::size_t i = 0; i < m.arguments.size(); ++i) {
        if (i != 0) os << ", ";
        os << join_tokens(m.argument_tokens[i]);
      }
      os << ")";
    }
  }
  if (!f.returns.empty()) os << " returns " << params(f.returns);
  if (f.has_body()) {
    print_body(os, f.body_tokens);
  } else {
    os << ";\n";
  }
}

}  // namespace

std::string print_source(const SourceUnit& unit) {
  std::ostringstream os;
  if (unit.pragma) os << "pragma solidity " << *unit.pragma << ";\n";
  for (const auto& p : unit.other_pragmas) os << "pragma " << p << ";\n";
  for (const auto& t : unit.file_types) print_type(os, t, "");
  for (const auto& c : unit.contracts) {
    os << "\n" << (c.is_abstract ? "abstract contract " : "contract ") << c.name << " {\n";
    for (const auto& t : c.types) print_type(os, t, "  ");
    for (const auto& v : c.state_variables) {
      os << "  " << v.type_name << " " << to_string(v.visibility);
      if (v.is_constant) os << " constant";
      if (v.is_immutable) os << " immutable";
      os << " " << v.name;
      if (v.initializer) os << " = " << join_tokens(v.initializer_tokens);
      os << ";\n";
    }
    for (const auto& e : c.events) {
      os << "  event " << e.name << params(e.parameters, &e.indexed)
         << (e.anonymous ? " anonymous" : "") << ";\n";
    }
    for (const auto& m : c.modifiers) {
      os << "  modifier " << m.name << params(m.parameters);
      print_body(os, m.body_tokens);
    }
    for (const auto& f : c.functions) print_function(os, f);
    os << "}\n";
  }
  return os.str();
}

}  // namespace txconflict
