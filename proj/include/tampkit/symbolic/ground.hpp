#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tampkit/symbolic/types.hpp"

namespace tampkit::symbolic {

struct GroundAtom {
  PredicateId predicate;
  std::vector<ObjectId> args;

  bool operator==(const GroundAtom& o) const {
    return predicate == o.predicate && args == o.args;
  }
};

// Closed-world abstract state: a sorted, duplicate-free set of atom ids.
class AbstractState {
 public:
  AbstractState() = default;
  static AbstractState from_atoms(std::vector<AtomId> atoms);

  bool contains(AtomId a) const;
  bool contains_all(const std::vector<AtomId>& atoms) const;
  bool contains_none(const std::vector<AtomId>& atoms) const;
  const std::vector<AtomId>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }

  bool operator==(const AbstractState& o) const = default;
  size_t hash() const;

 private:
  std::vector<AtomId> atoms_;
};

struct AbstractStateHash {
  size_t operator()(const AbstractState& s) const { return s.hash(); }
};

struct GroundAction {
  uint32_t schema;
  std::vector<ObjectId> binding;
  std::vector<AtomId> pre_pos, pre_neg, add, del;  // sorted atom ids
  bool geometric = false;
  // For geometric actions adding exactly one `attached` atom.
  bool has_target = false;
  ObjectId target_movable = 0;
  ObjectId new_parent = 0;
  AtomId added_attached = 0;
  std::string display;  // "(name arg1 arg2)"
};

// Eagerly grounded model: all type-correct bindings of every schema, all
// ground atoms interned. Immutable after construction and safely shareable.
class GroundProblem {
 public:
  GroundProblem(const DomainModel& domain, const ProblemModel& problem);

  const DomainModel& domain() const { return *domain_; }
  const std::vector<ObjectDecl>& objects() const { return objects_; }
  const std::string& object_name(ObjectId id) const { return objects_[id].name; }

  const std::vector<GroundAction>& actions() const { return actions_; }
  const GroundAction& action(GroundActionId id) const { return actions_[id]; }

  size_t atom_count() const { return atoms_.size(); }
  const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
  std::string atom_text(AtomId id) const;

  // Interns on first use; throws if the atom is ill-typed.
  AtomId intern_atom(PredicateId predicate, std::vector<ObjectId> args);
  // Lookup without interning.
  std::optional<AtomId> find_atom(PredicateId predicate, const std::vector<ObjectId>& args) const;

  const AbstractState& initial_state() const { return init_; }
  const std::vector<AtomId>& goal_atoms() const { return goal_; }

  std::optional<PredicateId> attached_predicate() const { return attached_pred_; }

 private:
  const DomainModel* domain_;
  std::vector<ObjectDecl> objects_;
  std::vector<GroundAtom> atoms_;
  std::unordered_map<uint64_t, std::vector<AtomId>> atom_buckets_;
  std::vector<GroundAction> actions_;
  AbstractState init_;
  std::vector<AtomId> goal_;
  std::optional<PredicateId> attached_pred_;
};

}  // namespace tampkit::symbolic
