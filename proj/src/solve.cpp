#include "setkanren/solve.hpp"

#include <algorithm>

namespace setkanren {

bool same_state(const State& a, const State& b) {
  return a.next_var == b.next_var && a.subst.same_root(b.subst) && a.store.same_root(b.store);
}

namespace {

States unify_sets(const Term& u, const Term& v, const State& st, Ctx& cx);
States diseq_pairs(const std::vector<std::pair<Term, Term>>& ps, const State& st, Ctx& cx);
States union_rules(const Term& a0, const Term& b0, const Term& c0, const State& st, Ctx& cx);

bool is_type_kind(CKind k) {
  return k == CKind::TypeSet || k == CKind::TypeSym || k == CKind::TypeNum ||
         k == CKind::TypeList;
}

bool constraint_equal(const Constraint& a, const Constraint& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size() || a.pairs.size() != b.pairs.size())
    return false;
  for (size_t i = 0; i < a.args.size(); i++) {
    if (!term_eq(a.args[i], b.args[i])) return false;
  }
  for (size_t i = 0; i < a.pairs.size(); i++) {
    if (!term_eq(a.pairs[i].first, b.pairs[i].first)) return false;
    if (!term_eq(a.pairs[i].second, b.pairs[i].second)) return false;
  }
  return true;
}

// Stores c unless an identical suspension already sits under its first
// index var. Syntactic check only; it exists to stop re-fired constraints
// from piling up duplicates.
State suspend(State st, Constraint c) {
  auto cp = std::make_shared<const Constraint>(std::move(c));
  if (const auto* lst = store_get(st, cp->index_vars.front())) {
    for (const auto& e : *lst) {
      if (constraint_equal(*e, *cp)) return st;
    }
  }
  return store_add(std::move(st), cp);
}

// Re-runs every constraint indexed under v. The whole batch is unhooked from
// the store first so a constraint fires exactly once even when a re-run
// binds further vars from the same batch.
States propagate(VarId v, State st, Ctx& cx) {
  const auto* lst = store_get(st, v);
  if (!lst || lst->empty()) return {std::move(st)};
  std::vector<CPtr> batch = *lst;
  for (const auto& c : batch) st = store_remove(std::move(st), c);
  States cur = {std::move(st)};
  for (const auto& c : batch) {
    cur = flat_map(cur, [&](const State& s) { return run_constraint(c, s, cx); });
    if (cur.empty()) break;
  }
  return cur;
}

States try_bind(VarId v, Term t, State st, Ctx& cx) {
  switch (occurs_bind(v, t, st.subst)) {
    case Occurs::InElement:
      return {};
    case Occurs::InSetTail: {
      // v = {e ... | v} absorbs to v = {e ... | n}, n a fresh set.
      std::vector<Term> elems;
      Term cur = walk(t, st.subst);
      while (is_set_cell(cur)) {
        const auto& cell = as_set_cell(cur);
        elems.insert(elems.end(), cell.elems.begin(), cell.elems.end());
        cur = walk(cell.rest, st.subst);
      }
      Term n = var(st.next_var);
      st.next_var++;
      st.subst = st.subst.insert(v, set_cell(std::move(elems), n));
      States typed = op_type(CKind::TypeSet, n, st, cx);
      return flat_map(typed, [&](const State& s) { return propagate(v, s, cx); });
    }
    case Occurs::Absent:
      break;
  }
  st.subst = st.subst.insert(v, std::move(t));
  return propagate(v, std::move(st), cx);
}

Term cell_from(std::vector<Term> elems, Term tail) {
  return set_cell(std::move(elems), std::move(tail));
}

struct Spine {
  std::vector<Term> elems;
  Term tail;
};

Spine spine_of(const Term& t, const Subst& s) {
  Spine sp;
  Term cur = walk(t, s);
  while (is_set_cell(cur)) {
    const auto& cell = as_set_cell(cur);
    sp.elems.insert(sp.elems.end(), cell.elems.begin(), cell.elems.end());
    cur = walk(cell.rest, s);
  }
  sp.tail = cur;
  return sp;
}

std::vector<Term> slice_from(const std::vector<Term>& v, size_t i) {
  return std::vector<Term>(v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
}

std::vector<Term> without_index(const std::vector<Term>& v, size_t j) {
  std::vector<Term> out;
  out.reserve(v.size() - 1);
  for (size_t i = 0; i < v.size(); i++) {
    if (i != j) out.push_back(v[i]);
  }
  return out;
}

// Both spines end in one shared unbound var X. The first left element is
// matched against each right element three ways (drop both, keep right,
// keep left), and lastly absorbed into X itself. Every branch shrinks the
// listed-element count, so this terminates where the generic split would
// re-derive the same equation forever.
States unify_sets_shared_tail(const Spine& su, const Spine& sv, const State& st, Ctx& cx) {
  Term x = su.tail;
  Term t0 = su.elems[0];
  States out;
  for (size_t j = 0; j < sv.elems.size(); j++) {
    const Term& tj = sv.elems[j];
    States head = unify(t0, tj, st, cx);
    States drop = flat_map(head, [&](const State& s) {
      return unify(cell_from(slice_from(su.elems, 1), x), cell_from(without_index(sv.elems, j), x),
                   s, cx);
    });
    out.insert(out.end(), drop.begin(), drop.end());
    States keep_right = flat_map(head, [&](const State& s) {
      return unify(cell_from(slice_from(su.elems, 1), x), cell_from(sv.elems, x), s, cx);
    });
    out.insert(out.end(), keep_right.begin(), keep_right.end());
    States keep_left = flat_map(head, [&](const State& s) {
      return unify(cell_from(su.elems, x), cell_from(without_index(sv.elems, j), x), s, cx);
    });
    out.insert(out.end(), keep_left.begin(), keep_left.end());
  }
  {
    State s2 = st;
    Term n = var(s2.next_var);
    s2.next_var++;
    States typed = op_type(CKind::TypeSet, n, s2, cx);
    States bound = flat_map(
        typed, [&](const State& s) { return try_bind(as_var(x).id, cell_from({t0}, n), s, cx); });
    States rest = flat_map(bound, [&](const State& s) {
      return unify(cell_from(slice_from(su.elems, 1), n), cell_from(sv.elems, n), s, cx);
    });
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

States unify_sets(const Term& u, const Term& v, const State& st, Ctx& cx) {
  bool eu = is_empty_set(u), ev = is_empty_set(v);
  if (eu || ev) return (eu && ev) ? States{st} : States{};
  Spine su = spine_of(u, st.subst);
  Spine sv = spine_of(v, st.subst);
  if (is_var(su.tail) && is_var(sv.tail) && as_var(su.tail).id == as_var(sv.tail).id) {
    return unify_sets_shared_tail(su, sv, st, cx);
  }
  // {t|s1} = {t2|s2} splits four ways: both firsts match and the remainders
  // agree; they match and the whole left is swallowed by s2 (t duplicated in
  // v); symmetrically s1 swallows the whole right; or the two firsts are
  // distinct and both sides push them into a shared fresh remainder n.
  Term t = su.elems[0];
  Term s1 = cell_from(slice_from(su.elems, 1), su.tail);
  Term t2 = sv.elems[0];
  Term s2 = cell_from(slice_from(sv.elems, 1), sv.tail);
  Term uw = cell_from(su.elems, su.tail);
  Term vw = cell_from(sv.elems, sv.tail);
  States out;
  States head = unify(t, t2, st, cx);
  States b1 = flat_map(head, [&](const State& s) { return unify(s1, s2, s, cx); });
  out.insert(out.end(), b1.begin(), b1.end());
  States b2 = flat_map(head, [&](const State& s) { return unify(uw, s2, s, cx); });
  out.insert(out.end(), b2.begin(), b2.end());
  States b3 = flat_map(head, [&](const State& s) { return unify(s1, vw, s, cx); });
  out.insert(out.end(), b3.begin(), b3.end());
  {
    State s2st = st;
    Term n = var(s2st.next_var);
    s2st.next_var++;
    States typed = op_type(CKind::TypeSet, n, s2st, cx);
    States a =
        flat_map(typed, [&](const State& s) { return unify(s1, cell_from({t2}, n), s, cx); });
    States b4 = flat_map(a, [&](const State& s) { return unify(cell_from({t}, n), s2, s, cx); });
    out.insert(out.end(), b4.begin(), b4.end());
  }
  return out;
}

}  // namespace

States unify(const Term& u0, const Term& v0, const State& st, Ctx& cx) {
  if (cx.stats) cx.stats->unify_calls++;
  Term u = walk(u0, st.subst);
  Term v = walk(v0, st.subst);
  if (term_eq(u, v)) return {st};
  if (is_var(u)) return try_bind(as_var(u).id, v, st, cx);
  if (is_var(v)) return try_bind(as_var(v).id, u, st, cx);
  if (is_pair(u) && is_pair(v)) {
    States first = unify(as_pair(u).car, as_pair(v).car, st, cx);
    return flat_map(first,
                    [&](const State& s) { return unify(as_pair(u).cdr, as_pair(v).cdr, s, cx); });
  }
  if (is_setlike(u) && is_setlike(v)) return unify_sets(u, v, st, cx);
  return {};
}

States op_type(CKind kind, const Term& t0, const State& st, Ctx& cx) {
  Term t = walk(t0, st.subst);
  if (is_var(t)) {
    VarId v = as_var(t).id;
    if (const auto* lst = store_get(st, v)) {
      for (const auto& c : *lst) {
        if (is_type_kind(c->kind)) return c->kind == kind ? States{st} : States{};
      }
    }
    return {store_add(st, std::make_shared<const Constraint>(
                              Constraint{kind, {t}, {}, {v}}))};
  }
  switch (kind) {
    case CKind::TypeSet:
      if (is_empty_set(t)) return {st};
      if (is_set_cell(t)) return op_type(kind, as_set_cell(t).rest, st, cx);
      return {};
    case CKind::TypeSym:
      return is_sym(t) ? States{st} : States{};
    case CKind::TypeNum:
      return is_num(t) ? States{st} : States{};
    case CKind::TypeList:
      if (is_nil(t)) return {st};
      if (is_pair(t)) return op_type(kind, as_pair(t).cdr, st, cx);
      return {};
    default:
      return {};
  }
}

States op_ino(const Term& el, const Term& s0, const State& st, Ctx& cx) {
  Term s = walk(s0, st.subst);
  if (is_empty_set(s)) return {};
  if (is_set_cell(s)) {
    const auto& cell = as_set_cell(s);
    States out;
    for (const auto& e : cell.elems) {
      States m = unify(el, e, st, cx);
      out.insert(out.end(), m.begin(), m.end());
    }
    States deeper = op_ino(el, cell.rest, st, cx);
    out.insert(out.end(), deeper.begin(), deeper.end());
    return out;
  }
  if (is_var(s)) {
    State s2 = st;
    Term n = var(s2.next_var);
    s2.next_var++;
    States typed = op_type(CKind::TypeSet, n, s2, cx);
    return flat_map(typed,
                    [&](const State& s3) { return unify(s, cell_from({el}, n), s3, cx); });
  }
  return {};
}

States op_not_member(const Term& el0, const Term& s0, const State& st, Ctx& cx) {
  Term s = walk(s0, st.subst);
  Term el = walk(el0, st.subst);
  if (is_empty_set(s)) return {st};
  if (is_set_cell(s)) {
    const auto& cell = as_set_cell(s);
    States cur = {st};
    for (const auto& e : cell.elems) {
      cur = flat_map(cur, [&](const State& s2) { return op_diseq(el, e, s2, cx); });
      if (cur.empty()) return cur;
    }
    return flat_map(cur, [&](const State& s2) { return op_not_member(el, cell.rest, s2, cx); });
  }
  if (is_var(s)) {
    VarId sv = as_var(s).id;
    // A set never reaches itself by membership, so el containing s settles it.
    if (occurs_deep(sv, el, st.subst)) return {st};
    std::vector<VarId> idx;
    vars_of(el, st.subst, idx);
    if (std::find(idx.begin(), idx.end(), sv) == idx.end()) idx.push_back(sv);
    return {suspend(st, Constraint{CKind::NotMember, {el, s}, {}, std::move(idx)})};
  }
  return {};
}

namespace {

States diseq_pairs(const std::vector<std::pair<Term, Term>>& ps, const State& st, Ctx& cx) {
  // Speculatively require every pair to unify. No solution: the constraint
  // can never be violated. A solution identical to st: it already is.
  States spec = {st};
  for (const auto& p : ps) {
    spec = flat_map(spec, [&](const State& s) { return unify(p.first, p.second, s, cx); });
    if (spec.empty()) return {st};
  }
  // Per solution, collect the bindings added on vars that already existed in
  // st, with values resolved through the speculative substitution. Vars the
  // speculation itself allocated are existential: a solution that binds
  // nothing pre-existing holds in st unconditionally.
  bool fresh_in_values = false;
  auto real_delta = [&](const State& r) {
    std::vector<std::pair<Term, Term>> delta;
    Subst::diff(st.subst, r.subst, [&](std::uint32_t k, const Term* a, const Term* b) {
      if (!b || (a && a->get() == b->get())) return;
      if (k >= st.next_var) return;
      Term val = walk_deep(*b, r.subst);
      std::vector<VarId> vs;
      vars_of(val, r.subst, vs);
      for (VarId v : vs) {
        if (v >= st.next_var) fresh_in_values = true;
      }
      delta.emplace_back(var(k), std::move(val));
    });
    return delta;
  };
  std::vector<std::pair<Term, Term>> delta;
  for (const auto& r : spec) {
    auto d = real_delta(r);
    if (d.empty()) return {};
    if (delta.empty()) delta = std::move(d);
  }
  if (spec.size() == 1 && !fresh_in_values) {
    // The one way to violate the constraint is this set of extra bindings;
    // watch exactly those.
    std::sort(delta.begin(), delta.end(), [](const auto& a, const auto& b) {
      return as_var(a.first).id < as_var(b.first).id;
    });
    std::vector<VarId> idx;
    for (const auto& d : delta) {
      idx.push_back(as_var(d.first).id);
      vars_of(d.second, st.subst, idx);
    }
    std::vector<VarId> dedup;
    for (VarId v : idx) {
      if (std::find(dedup.begin(), dedup.end(), v) == dedup.end()) dedup.push_back(v);
    }
    return {suspend(st, Constraint{CKind::Diseq, {}, std::move(delta), std::move(dedup)})};
  }
  // Fanning or impure speculation: keep the original pairs and re-run on any
  // touched var.
  std::vector<std::pair<Term, Term>> kept;
  std::vector<VarId> idx;
  for (const auto& p : ps) {
    kept.emplace_back(walk(p.first, st.subst), walk(p.second, st.subst));
    vars_of(p.first, st.subst, idx);
    vars_of(p.second, st.subst, idx);
  }
  std::vector<VarId> dedup;
  for (VarId v : idx) {
    if (std::find(dedup.begin(), dedup.end(), v) == dedup.end()) dedup.push_back(v);
  }
  return {suspend(st, Constraint{CKind::Diseq, {}, std::move(kept), std::move(dedup)})};
}

}  // namespace

States op_diseq(const Term& u, const Term& v, const State& st, Ctx& cx) {
  return diseq_pairs({{u, v}}, st, cx);
}

States op_disjoint(const Term& a0, const Term& b0, const State& st, Ctx& cx) {
  Term a = walk(a0, st.subst);
  Term b = walk(b0, st.subst);
  if (is_empty_set(a) || is_empty_set(b)) return {st};
  if (is_var(a) && is_var(b) && as_var(a).id == as_var(b).id) {
    return unify(a, empty_set(), st, cx);
  }
  if (is_set_cell(a)) {
    const auto& cell = as_set_cell(a);
    States cur = {st};
    for (const auto& e : cell.elems) {
      cur = flat_map(cur, [&](const State& s) { return op_not_member(e, b, s, cx); });
      if (cur.empty()) return cur;
    }
    return flat_map(cur, [&](const State& s) { return op_disjoint(cell.rest, b, s, cx); });
  }
  if (is_set_cell(b)) {
    const auto& cell = as_set_cell(b);
    States cur = {st};
    for (const auto& e : cell.elems) {
      cur = flat_map(cur, [&](const State& s) { return op_not_member(e, a, s, cx); });
      if (cur.empty()) return cur;
    }
    return flat_map(cur, [&](const State& s) { return op_disjoint(a, cell.rest, s, cx); });
  }
  if (is_var(a) || is_var(b)) {
    std::vector<VarId> idx;
    if (is_var(a)) idx.push_back(as_var(a).id);
    if (is_var(b) && (idx.empty() || idx[0] != as_var(b).id)) idx.push_back(as_var(b).id);
    return {suspend(st, Constraint{CKind::Disjoint, {a, b}, {}, std::move(idx)})};
  }
  return {};
}

States op_union(const Term& a, const Term& b, const Term& c, const State& st, Ctx& cx) {
  States cur = op_type(CKind::TypeSet, a, st, cx);
  cur = flat_map(cur, [&](const State& s) { return op_type(CKind::TypeSet, b, s, cx); });
  cur = flat_map(cur, [&](const State& s) { return op_type(CKind::TypeSet, c, s, cx); });
  return flat_map(cur, [&](const State& s) { return union_rules(a, b, c, s, cx); });
}

namespace {

// One distribution step for a union whose output side contributes element t:
// t came from a alone, b alone, or both. n is what remains of c once t is
// taken out; the callers established c = {t|n} with t not in n.
States union_split(const Term& t, const Term& a, const Term& b, const Term& n, const State& st,
                   Ctx& cx) {
  States out;
  {
    // from a only
    States cur = {st};
    cur = flat_map(cur, [&](const State& s) {
      State s2 = s;
      Term n1 = var(s2.next_var);
      s2.next_var++;
      States got = unify(a, cell_from({t}, n1), s2, cx);
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, n1, s3, cx); });
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, b, s3, cx); });
      return flat_map(got, [&](const State& s3) { return op_union(n1, b, n, s3, cx); });
    });
    out.insert(out.end(), cur.begin(), cur.end());
  }
  {
    // from b only
    States cur = flat_map({st}, [&](const State& s) {
      State s2 = s;
      Term n2 = var(s2.next_var);
      s2.next_var++;
      States got = unify(b, cell_from({t}, n2), s2, cx);
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, n2, s3, cx); });
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, a, s3, cx); });
      return flat_map(got, [&](const State& s3) { return op_union(a, n2, n, s3, cx); });
    });
    out.insert(out.end(), cur.begin(), cur.end());
  }
  {
    // from both
    States cur = flat_map({st}, [&](const State& s) {
      State s2 = s;
      Term n1 = var(s2.next_var);
      s2.next_var++;
      Term n2 = var(s2.next_var);
      s2.next_var++;
      States got = unify(a, cell_from({t}, n1), s2, cx);
      got = flat_map(got, [&](const State& s3) { return unify(b, cell_from({t}, n2), s3, cx); });
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, n1, s3, cx); });
      got = flat_map(got, [&](const State& s3) { return op_not_member(t, n2, s3, cx); });
      return flat_map(got, [&](const State& s3) { return op_union(n1, n2, n, s3, cx); });
    });
    out.insert(out.end(), cur.begin(), cur.end());
  }
  return out;
}

States union_rules(const Term& a0, const Term& b0, const Term& c0, const State& st, Ctx& cx) {
  Term a = walk(a0, st.subst);
  Term b = walk(b0, st.subst);
  Term c = walk(c0, st.subst);
  if (is_empty_set(a)) return unify(b, c, st, cx);
  if (is_empty_set(b)) return unify(a, c, st, cx);
  if (is_empty_set(c)) {
    States cur = unify(a, empty_set(), st, cx);
    return flat_map(cur, [&](const State& s) { return unify(b, empty_set(), s, cx); });
  }
  if (is_var(a) && is_var(b) && as_var(a).id == as_var(b).id) return unify(a, c, st, cx);
  if (is_set_cell(c)) {
    // c = {t|n}, t not in n: n is c minus t, then distribute t over a and b.
    Spine sc = spine_of(c, st.subst);
    Term t = sc.elems[0];
    State s2 = st;
    Term n = var(s2.next_var);
    s2.next_var++;
    States cur = unify(c, cell_from({t}, n), s2, cx);
    cur = flat_map(cur, [&](const State& s3) { return op_not_member(t, n, s3, cx); });
    return flat_map(cur, [&](const State& s3) { return union_split(t, a, b, n, s3, cx); });
  }
  if (is_set_cell(a) || is_set_cell(b)) {
    // c is a var; pull the first element of whichever input is concrete.
    bool from_a = is_set_cell(a);
    const Term& src = from_a ? a : b;
    const Term& oth = from_a ? b : a;
    Spine ss = spine_of(src, st.subst);
    Term t = ss.elems[0];
    State s2 = st;
    Term n = var(s2.next_var);
    s2.next_var++;
    Term n1 = var(s2.next_var);
    s2.next_var++;
    States cur = unify(c, cell_from({t}, n), s2, cx);
    cur = flat_map(cur, [&](const State& s3) { return op_not_member(t, n, s3, cx); });
    cur = flat_map(cur, [&](const State& s3) { return unify(src, cell_from({t}, n1), s3, cx); });
    cur = flat_map(cur, [&](const State& s3) { return op_not_member(t, n1, s3, cx); });
    States out;
    // t only in src
    States only = flat_map(cur, [&](const State& s3) { return op_not_member(t, oth, s3, cx); });
    only = flat_map(only, [&](const State& s3) {
      return from_a ? op_union(n1, oth, n, s3, cx) : op_union(oth, n1, n, s3, cx);
    });
    out.insert(out.end(), only.begin(), only.end());
    // t in both
    States both = flat_map(cur, [&](const State& s3) {
      State s4 = s3;
      Term n2 = var(s4.next_var);
      s4.next_var++;
      States got = unify(oth, cell_from({t}, n2), s4, cx);
      got = flat_map(got, [&](const State& s5) { return op_not_member(t, n2, s5, cx); });
      return flat_map(got, [&](const State& s5) {
        return from_a ? op_union(n1, n2, n, s5, cx) : op_union(n2, n1, n, s5, cx);
      });
    });
    out.insert(out.end(), both.begin(), both.end());
    return out;
  }
  // Three unresolved set vars: park on all of them.
  std::vector<VarId> idx;
  for (const Term* t : {&a, &b, &c}) {
    if (is_var(*t)) {
      VarId id = as_var(*t).id;
      if (std::find(idx.begin(), idx.end(), id) == idx.end()) idx.push_back(id);
    }
  }
  return {suspend(st, Constraint{CKind::Union, {a, b, c}, {}, std::move(idx)})};
}

}  // namespace

States op_sub_absent(const Term& p0, const Term& q0, const State& st, Ctx& cx) {
  Term p = walk(p0, st.subst);
  Term q = walk(q0, st.subst);
  if (is_var(q)) {
    return {suspend(st, Constraint{CKind::SubAbsent, {p, q}, {}, {as_var(q).id}})};
  }
  if (is_pair(q)) {
    States cur = op_absento(p, as_pair(q).car, st, cx);
    return flat_map(cur, [&](const State& s) { return op_absento(p, as_pair(q).cdr, s, cx); });
  }
  if (is_set_cell(q)) {
    const auto& cell = as_set_cell(q);
    States cur = {st};
    for (const auto& e : cell.elems) {
      cur = flat_map(cur, [&](const State& s) { return op_absento(p, e, s, cx); });
      if (cur.empty()) return cur;
    }
    // The rest is a subset, not a subterm: recurse without a disequality.
    cur = flat_map(cur, [&](const State& s) { return op_type(CKind::TypeSet, cell.rest, s, cx); });
    return flat_map(cur, [&](const State& s) { return op_sub_absent(p, cell.rest, s, cx); });
  }
  return {st};
}

States op_absento(const Term& p, const Term& q, const State& st, Ctx& cx) {
  States cur = op_diseq(p, q, st, cx);
  return flat_map(cur, [&](const State& s) { return op_sub_absent(p, q, s, cx); });
}

States op_free(const Term& k0, const Term& l0, const State& st, Ctx& cx) {
  Term k = walk(k0, st.subst);
  Term l = walk(l0, st.subst);
  if (is_nil(l)) return {st};
  if (is_pair(l)) {
    Term h = walk(as_pair(l).car, st.subst);
    Term tl = as_pair(l).cdr;
    if (is_pair(h)) {
      States cur = op_diseq(k, as_pair(h).car, st, cx);
      return flat_map(cur, [&](const State& s) { return op_free(k, tl, s, cx); });
    }
    if (is_var(h)) {
      State s2 = st;
      Term hk = var(s2.next_var);
      s2.next_var++;
      Term hv = var(s2.next_var);
      s2.next_var++;
      States cur = unify(h, cons(hk, hv), s2, cx);
      cur = flat_map(cur, [&](const State& s3) { return op_diseq(k, hk, s3, cx); });
      return flat_map(cur, [&](const State& s3) { return op_free(k, tl, s3, cx); });
    }
    return {};
  }
  if (is_var(l)) {
    VarId lv = as_var(l).id;
    States cur = op_type(CKind::TypeList, l, st, cx);
    // Any lookup pending on the same spine must be for a different key.
    std::vector<Term> lookup_keys;
    if (const auto* lst = store_get(st, lv)) {
      for (const auto& c : *lst) {
        if (c->kind == CKind::Lookup) lookup_keys.push_back(c->args[0]);
      }
    }
    for (const auto& lk : lookup_keys) {
      cur = flat_map(cur, [&](const State& s) { return op_diseq(k, lk, s, cx); });
    }
    return flat_map(cur, [&](const State& s) {
      return States{suspend(s, Constraint{CKind::Free, {k, l}, {}, {lv}})};
    });
  }
  return {};
}

States op_lookup(const Term& k0, const Term& l0, const Term& v0, const State& st, Ctx& cx) {
  Term k = walk(k0, st.subst);
  Term l = walk(l0, st.subst);
  Term v = walk(v0, st.subst);
  if (is_nil(l)) return {};
  if (is_pair(l)) {
    Term h = walk(as_pair(l).car, st.subst);
    Term tl = as_pair(l).cdr;
    Term hk, hv;
    States pre = {st};
    if (is_pair(h)) {
      hk = as_pair(h).car;
      hv = as_pair(h).cdr;
    } else if (is_var(h)) {
      State s2 = st;
      hk = var(s2.next_var);
      s2.next_var++;
      hv = var(s2.next_var);
      s2.next_var++;
      pre = unify(h, cons(hk, hv), s2, cx);
    } else {
      return {};
    }
    States out;
    States found = flat_map(pre, [&](const State& s) { return unify(hk, k, s, cx); });
    found = flat_map(found, [&](const State& s) { return unify(hv, v, s, cx); });
    out.insert(out.end(), found.begin(), found.end());
    States miss = flat_map(pre, [&](const State& s) { return op_diseq(hk, k, s, cx); });
    miss = flat_map(miss, [&](const State& s) { return op_lookup(k, tl, v, s, cx); });
    out.insert(out.end(), miss.begin(), miss.end());
    return out;
  }
  if (is_var(l)) {
    VarId lv = as_var(l).id;
    States cur = {st};
    std::vector<Term> free_keys;
    if (const auto* lst = store_get(st, lv)) {
      for (const auto& c : *lst) {
        if (c->kind == CKind::Free) free_keys.push_back(c->args[0]);
      }
    }
    for (const auto& fk : free_keys) {
      cur = flat_map(cur, [&](const State& s) { return op_diseq(fk, k, s, cx); });
    }
    return flat_map(cur, [&](const State& s) {
      return States{suspend(s, Constraint{CKind::Lookup, {k, l, v}, {}, {lv}})};
    });
  }
  return {};
}

States run_constraint(const CPtr& c, const State& st, Ctx& cx) {
  if (cx.stats) {
    cx.stats->constraint_fires++;
    if (c->kind == CKind::Diseq) cx.stats->diseq_reexams++;
  }
  switch (c->kind) {
    case CKind::TypeSet:
    case CKind::TypeSym:
    case CKind::TypeNum:
    case CKind::TypeList:
      return op_type(c->kind, c->args[0], st, cx);
    case CKind::NotMember:
      return op_not_member(c->args[0], c->args[1], st, cx);
    case CKind::Diseq:
      return diseq_pairs(c->pairs, st, cx);
    case CKind::Disjoint:
      return op_disjoint(c->args[0], c->args[1], st, cx);
    case CKind::Union:
      return op_union(c->args[0], c->args[1], c->args[2], st, cx);
    case CKind::SubAbsent:
      return op_sub_absent(c->args[0], c->args[1], st, cx);
    case CKind::Free:
      return op_free(c->args[0], c->args[1], st, cx);
    case CKind::Lookup:
      return op_lookup(c->args[0], c->args[1], c->args[2], st, cx);
  }
  return {};
}

}  // namespace setkanren
