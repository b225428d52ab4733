#include "setkanren/state.hpp"

#include <algorithm>

namespace setkanren {

Term walk(Term t, const Subst& s) {
  while (is_var(t)) {
    const Term* bound = s.find(as_var(t).id);
    if (!bound) return t;
    t = *bound;
  }
  return t;
}

Term walk_deep(const Term& t, const Subst& s) {
  Term w = walk(t, s);
  if (is_pair(w)) {
    return cons(walk_deep(as_pair(w).car, s), walk_deep(as_pair(w).cdr, s));
  }
  if (is_set_cell(w)) {
    const auto& cell = as_set_cell(w);
    std::vector<Term> elems;
    elems.reserve(cell.elems.size());
    for (const auto& e : cell.elems) elems.push_back(walk_deep(e, s));
    return set_cell(std::move(elems), walk_deep(cell.rest, s));
  }
  return w;
}

bool occurs_deep(VarId v, const Term& t, const Subst& s) {
  Term w = walk(t, s);
  if (is_var(w)) return as_var(w).id == v;
  if (is_pair(w)) {
    return occurs_deep(v, as_pair(w).car, s) || occurs_deep(v, as_pair(w).cdr, s);
  }
  if (is_set_cell(w)) {
    const auto& cell = as_set_cell(w);
    for (const auto& e : cell.elems) {
      if (occurs_deep(v, e, s)) return true;
    }
    return occurs_deep(v, cell.rest, s);
  }
  return false;
}

Occurs occurs_bind(VarId v, const Term& t, const Subst& s) {
  Term w = walk(t, s);
  if (is_var(w)) return as_var(w).id == v ? Occurs::InSetTail : Occurs::Absent;
  if (is_pair(w)) {
    bool hit = occurs_deep(v, as_pair(w).car, s) || occurs_deep(v, as_pair(w).cdr, s);
    return hit ? Occurs::InElement : Occurs::Absent;
  }
  if (is_set_cell(w)) {
    // Walk the spine: any occurrence inside an element is rigid; an
    // occurrence as the final tail is absorbable.
    Term cur = w;
    bool tail_hit = false;
    while (is_set_cell(cur)) {
      const auto& cell = as_set_cell(cur);
      for (const auto& e : cell.elems) {
        if (occurs_deep(v, e, s)) return Occurs::InElement;
      }
      cur = walk(cell.rest, s);
    }
    if (is_var(cur) && as_var(cur).id == v) tail_hit = true;
    return tail_hit ? Occurs::InSetTail : Occurs::Absent;
  }
  return Occurs::Absent;
}

void vars_of(const Term& t, const Subst& s, std::vector<VarId>& out) {
  Term w = walk(t, s);
  if (is_var(w)) {
    VarId id = as_var(w).id;
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    return;
  }
  if (is_pair(w)) {
    vars_of(as_pair(w).car, s, out);
    vars_of(as_pair(w).cdr, s, out);
    return;
  }
  if (is_set_cell(w)) {
    const auto& cell = as_set_cell(w);
    for (const auto& e : cell.elems) vars_of(e, s, out);
    vars_of(cell.rest, s, out);
  }
}

State store_add(State st, const CPtr& c) {
  for (VarId v : c->index_vars) {
    const CList* cur = st.store.find(v);
    auto next = cur ? std::make_shared<std::vector<CPtr>>(**cur)
                    : std::make_shared<std::vector<CPtr>>();
    next->push_back(c);
    st.store = st.store.insert(v, CList(std::move(next)));
  }
  return st;
}

State store_remove(State st, const CPtr& c) {
  for (VarId v : c->index_vars) {
    const CList* cur = st.store.find(v);
    if (!cur) continue;
    auto next = std::make_shared<std::vector<CPtr>>();
    next->reserve((*cur)->size());
    for (const auto& e : **cur) {
      if (e.get() != c.get()) next->push_back(e);
    }
    st.store = st.store.insert(v, CList(std::move(next)));
  }
  return st;
}

const std::vector<CPtr>* store_get(const State& st, VarId v) {
  const CList* cur = st.store.find(v);
  return cur ? cur->get() : nullptr;
}

}  // namespace setkanren
