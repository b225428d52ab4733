#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "setkanren/pmap.hpp"
#include "setkanren/term.hpp"

namespace setkanren {

using Subst = IntTrieMap<Term>;

enum class CKind {
  TypeSet,
  TypeSym,
  TypeNum,
  TypeList,
  NotMember,
  Disjoint,
  Union,
  Diseq,
  SubAbsent,
  Free,
  Lookup,
};

struct Constraint;
using CPtr = std::shared_ptr<const Constraint>;

// A suspended constraint. args holds the operands as of suspension time
// (already walked); pairs is the residual form used by Diseq: the state is
// rejected iff every pair unifies without changing anything. index_vars are
// the variables whose binding wakes the constraint.
struct Constraint {
  CKind kind;
  std::vector<Term> args;
  std::vector<std::pair<Term, Term>> pairs;
  std::vector<VarId> index_vars;
};

using CList = std::shared_ptr<const std::vector<CPtr>>;
using Store = IntTrieMap<CList>;

struct State {
  Subst subst;
  Store store;
  VarId next_var = 0;
};

struct SolveStats {
  std::uint64_t unify_calls = 0;
  std::uint64_t constraint_fires = 0;
  std::uint64_t diseq_reexams = 0;
};

// Chases var bindings until an unbound var or a non-var node.
Term walk(Term t, const Subst& s);

// Substitutes bindings all the way down. Leaves set spines unflattened.
Term walk_deep(const Term& t, const Subst& s);

enum class Occurs { Absent, InElement, InSetTail };

// Occurs check for binding v to t (t pre-walked, not the var v itself).
// InElement: v sits inside an element, a pair component, or a non-tail
// position; the binding has no solution. InSetTail: v appears only as the
// tail of t's set spine; the binding is solvable by absorption.
Occurs occurs_bind(VarId v, const Term& t, const Subst& s);

bool occurs_deep(VarId v, const Term& t, const Subst& s);

// Unbound variables of walk*(t), first-encounter order, deduplicated.
void vars_of(const Term& t, const Subst& s, std::vector<VarId>& out);

// Store upkeep. Constraints are indexed under every var in index_vars;
// removal erases the pointer from each list it appears in.
State store_add(State st, const CPtr& c);
State store_remove(State st, const CPtr& c);
const std::vector<CPtr>* store_get(const State& st, VarId v);

}  // namespace setkanren
