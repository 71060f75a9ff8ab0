#include "txconflict/model.hpp"

#include <algorithm>

namespace txconflict {

std::string_view to_string(DataLocation loc) {
  switch (loc) {
    case DataLocation::Default: return "default";
    case DataLocation::Memory: return "memory";
    case DataLocation::Storage: return "storage";
    case DataLocation::Calldata: return "calldata";
  }
  return "?";
}

std::string_view to_string(Visibility v) {
  switch (v) {
    case Visibility::Public: return "public";
    case Visibility::Private: return "private";
    case Visibility::Internal: return "internal";
    case Visibility::External: return "external";
  }
  return "?";
}

std::string_view to_string(Mutability m) {
  switch (m) {
    case Mutability::Pure: return "pure";
    case Mutability::View: return "view";
    case Mutability::Payable: return "payable";
    case Mutability::NonPayable: return "nonpayable";
  }
  return "?";
}

const StateVariable* Contract::find_variable(std::string_view name) const {
  const auto it = std::find_if(state_variables.begin(), state_variables.end(),
                               [&](const StateVariable& v) { return v.name == name; });
  return it == state_variables.end() ? nullptr : &*it;
}

const Function* Contract::find_function(std::string_view id) const {
  const auto it = std::find_if(functions.begin(), functions.end(),
                               [&](const Function& f) { return f.id == id; });
  return it == functions.end() ? nullptr : &*it;
}

const ModifierDefinition* Contract::find_modifier(std::string_view name) const {
  const auto it = std::find_if(modifiers.begin(), modifiers.end(),
                               [&](const ModifierDefinition& m) { return m.name == name; });
  return it == modifiers.end() ? nullptr : &*it;
}

bool Contract::declares_type(std::string_view name) const {
  return std::any_of(types.begin(), types.end(),
                     [&](const TypeDeclaration& t) { return t.name == name; });
}

bool Contract::declares_event(std::string_view name) const {
  return std::any_of(events.begin(), events.end(), [&](const Event& e) { return e.name == name; });
}

std::string qualified_variable(const Contract& c, const StateVariable& v) {
  return c.name + "." + v.name;
}

std::string function_key(const Contract& c, const Function& f) { return c.name + "." + f.id; }

}  // namespace txconflict
