#pragma once

#include <utility>
#include <vector>

#include "setkanren/state.hpp"

namespace setkanren {

struct Ctx {
  SolveStats* stats = nullptr;
};

// Set unification has no single most general unifier; every operation below
// returns the finite disjunction of successor states, empty on failure.
using States = std::vector<State>;

template <typename F>
States flat_map(const States& in, F f) {
  States out;
  for (const auto& s : in) {
    States r = f(s);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

bool same_state(const State& a, const State& b);

States unify(const Term& u, const Term& v, const State& st, Ctx& cx);

// el is/is not an element of s.
States op_ino(const Term& el, const Term& s, const State& st, Ctx& cx);
States op_not_member(const Term& el, const Term& s, const State& st, Ctx& cx);

// Type annotations: kind is one of the CKind::Type* values.
States op_type(CKind kind, const Term& t, const State& st, Ctx& cx);

States op_diseq(const Term& u, const Term& v, const State& st, Ctx& cx);
States op_disjoint(const Term& a, const Term& b, const State& st, Ctx& cx);
States op_union(const Term& a, const Term& b, const Term& c, const State& st, Ctx& cx);

// sub_absent: p is absent from every proper subterm of q (set elements count
// as subterms, a set's rest does not add a disequality of its own).
// absento = diseq + sub_absent.
States op_sub_absent(const Term& p, const Term& q, const State& st, Ctx& cx);
States op_absento(const Term& p, const Term& q, const State& st, Ctx& cx);

// Association lists: free = k bound by no entry of l; lookup = first entry
// for k in l carries v (earlier entries shadow later ones).
States op_free(const Term& k, const Term& l, const State& st, Ctx& cx);
States op_lookup(const Term& k, const Term& l, const Term& v, const State& st, Ctx& cx);

// Re-runs a suspended constraint after one of its index vars was bound.
States run_constraint(const CPtr& c, const State& st, Ctx& cx);

}  // namespace setkanren
