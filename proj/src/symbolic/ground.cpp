#include "tampkit/symbolic/ground.hpp"

#include <algorithm>
#include <stdexcept>

namespace tampkit::symbolic {

AbstractState AbstractState::from_atoms(std::vector<AtomId> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  AbstractState s;
  s.atoms_ = std::move(atoms);
  return s;
}

bool AbstractState::contains(AtomId a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

bool AbstractState::contains_all(const std::vector<AtomId>& atoms) const {
  return std::all_of(atoms.begin(), atoms.end(), [&](AtomId a) { return contains(a); });
}

bool AbstractState::contains_none(const std::vector<AtomId>& atoms) const {
  return std::none_of(atoms.begin(), atoms.end(), [&](AtomId a) { return contains(a); });
}

size_t AbstractState::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (AtomId a : atoms_) {
    h ^= a + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

namespace {

uint64_t atom_key_hash(PredicateId pred, const std::vector<ObjectId>& args) {
  uint64_t h = 14695981039346656037ull ^ pred;
  for (ObjectId a : args) {
    h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

AtomId GroundProblem::intern_atom(PredicateId predicate, std::vector<ObjectId> args) {
  const auto& decl = domain_->predicates[predicate];
  if (args.size() != decl.param_types.size())
    throw std::invalid_argument("atom arity mismatch for " + decl.name);
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] >= objects_.size() ||
        !domain_->is_subtype(objects_[args[i]].type, decl.param_types[i]))
      throw std::invalid_argument("atom argument type mismatch for " + decl.name);
  }
  const uint64_t key = atom_key_hash(predicate, args);
  auto& bucket = atom_buckets_[key];
  for (AtomId id : bucket) {
    if (atoms_[id].predicate == predicate && atoms_[id].args == args) return id;
  }
  const AtomId id = static_cast<AtomId>(atoms_.size());
  atoms_.push_back({predicate, std::move(args)});
  bucket.push_back(id);
  return id;
}

std::optional<AtomId> GroundProblem::find_atom(PredicateId predicate,
                                               const std::vector<ObjectId>& args) const {
  auto it = atom_buckets_.find(atom_key_hash(predicate, args));
  if (it == atom_buckets_.end()) return std::nullopt;
  for (AtomId id : it->second) {
    if (atoms_[id].predicate == predicate && atoms_[id].args == args) return id;
  }
  return std::nullopt;
}

std::string GroundProblem::atom_text(AtomId id) const {
  const GroundAtom& a = atoms_[id];
  std::string out = "(" + domain_->predicates[a.predicate].name;
  for (ObjectId o : a.args) out += " " + objects_[o].name;
  return out + ")";
}

GroundProblem::GroundProblem(const DomainModel& domain, const ProblemModel& problem)
    : domain_(&domain), objects_(problem.objects) {
  attached_pred_ = domain.find_predicate(kAttachedPredicate);

  // Objects of each type (including subtypes), in declaration order.
  std::vector<std::vector<ObjectId>> by_type(domain.types.size());
  for (ObjectId o = 0; o < objects_.size(); ++o) {
    for (TypeId t = 0; t < domain.types.size(); ++t) {
      if (domain.is_subtype(objects_[o].type, t)) by_type[t].push_back(o);
    }
  }

  for (uint32_t si = 0; si < domain.schemas.size(); ++si) {
    const ActionSchema& schema = domain.schemas[si];
    std::vector<ObjectId> binding(schema.parameters.size());
    const std::function<void(size_t)> enumerate = [&](size_t pi) {
      if (pi == schema.parameters.size()) {
        GroundAction ga;
        ga.schema = si;
        ga.binding = binding;
        ga.geometric = schema.kind == ActionKind::Geometric;
        const auto ground_atoms = [&](const std::vector<LiftedAtom>& lifted,
                                      std::vector<AtomId>& out) {
          for (const LiftedAtom& la : lifted) {
            std::vector<ObjectId> args;
            args.reserve(la.args.size());
            for (const Term& t : la.args)
              args.push_back(t.is_variable ? binding[t.index] : t.index);
            out.push_back(intern_atom(la.predicate, std::move(args)));
          }
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
        };
        ground_atoms(schema.precond_pos, ga.pre_pos);
        ground_atoms(schema.precond_neg, ga.pre_neg);
        ground_atoms(schema.add_effects, ga.add);
        ground_atoms(schema.del_effects, ga.del);

        if (ga.geometric && attached_pred_) {
          for (AtomId id : ga.add) {
            const GroundAtom& atom = atoms_[id];
            if (atom.predicate == *attached_pred_ && atom.args.size() == 2) {
              if (ga.has_target) {
                throw std::invalid_argument(
                    "geometric action adds more than one attached atom: " + schema.name);
              }
              ga.has_target = true;
              ga.target_movable = atom.args[0];
              ga.new_parent = atom.args[1];
              ga.added_attached = id;
            }
          }
        }
        ga.display = "(" + schema.name;
        for (ObjectId o : binding) ga.display += " " + objects_[o].name;
        ga.display += ")";
        actions_.push_back(std::move(ga));
        return;
      }
      for (ObjectId o : by_type[schema.parameters[pi].type]) {
        binding[pi] = o;
        enumerate(pi + 1);
      }
    };
    enumerate(0);
  }

  std::vector<AtomId> init;
  for (const auto& a : problem.init) init.push_back(intern_atom(a.predicate, a.args));
  init_ = AbstractState::from_atoms(std::move(init));
  for (const auto& a : problem.goal) goal_.push_back(intern_atom(a.predicate, a.args));
  std::sort(goal_.begin(), goal_.end());
  goal_.erase(std::unique(goal_.begin(), goal_.end()), goal_.end());
}

}  // namespace tampkit::symbolic
