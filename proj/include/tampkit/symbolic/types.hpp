#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tampkit::symbolic {

// Predicate name that marks geometric structure: actions touching
// `attached` atoms are geometric, everything else is non-geometric.
inline const std::string kAttachedPredicate = "attached";

using TypeId = uint32_t;
using PredicateId = uint32_t;
using ObjectId = uint32_t;
using AtomId = uint32_t;
using GroundActionId = uint32_t;

struct TypeDecl {
  std::string name;
  std::optional<TypeId> parent;  // nullopt only for the root type `object`
};

struct PredicateDecl {
  std::string name;
  std::vector<TypeId> param_types;
};

struct ObjectDecl {
  std::string name;
  TypeId type;
};

// A term in a lifted atom: either a schema parameter slot or a constant.
struct Term {
  bool is_variable;
  uint32_t index;  // parameter index or ObjectId
};

struct LiftedAtom {
  PredicateId predicate;
  std::vector<Term> args;
};

struct Parameter {
  std::string name;
  TypeId type;
};

enum class ActionKind { Geometric, NonGeometric };

struct ActionSchema {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<LiftedAtom> precond_pos;
  std::vector<LiftedAtom> precond_neg;
  std::vector<LiftedAtom> add_effects;
  std::vector<LiftedAtom> del_effects;
  ActionKind kind = ActionKind::NonGeometric;
};

struct DomainModel {
  std::string name;
  std::vector<TypeDecl> types;
  std::vector<PredicateDecl> predicates;
  std::vector<ObjectDecl> constants;
  std::vector<ActionSchema> schemas;

  std::unordered_map<std::string, TypeId> type_index;
  std::unordered_map<std::string, PredicateId> predicate_index;

  TypeId root_type() const { return 0; }  // `object`, always declared first
  bool is_subtype(TypeId t, TypeId ancestor) const;
  std::optional<PredicateId> find_predicate(const std::string& name) const;
};

struct ProblemModel {
  std::string name;
  std::string domain_name;
  std::vector<ObjectDecl> objects;  // problem objects; constants come first
  struct GroundAtomText {
    PredicateId predicate;
    std::vector<ObjectId> args;
  };
  std::vector<GroundAtomText> init;
  std::vector<GroundAtomText> goal;
};

}  // namespace tampkit::symbolic
