#include "setkanren/reify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "setkanren/setnorm.hpp"

namespace setkanren {

namespace {

Term list_of(const std::vector<Term>& items) {
  Term acc = nil();
  for (size_t i = items.size(); i-- > 0;) acc = cons(items[i], acc);
  return acc;
}

Term list2(const Term& a, const Term& b) { return cons(a, cons(b, nil())); }
Term list3(const Term& a, const Term& b, const Term& c) { return cons(a, cons(b, cons(c, nil()))); }

int class_of(const Term& t) {
  if (is_num(t)) return 0;
  if (is_sym(t)) return 1;
  if (is_bool(t)) return 2;
  if (is_nil(t)) return 3;
  if (is_pair(t)) return 4;
  if (is_setlike(t)) return 5;
  return 6;
}

bool type_admits(CKind kind, int rank) {
  switch (kind) {
    case CKind::TypeSet:
      return rank == 5;
    case CKind::TypeSym:
      return rank == 1;
    case CKind::TypeNum:
      return rank == 0;
    case CKind::TypeList:
      return rank == 3 || rank == 4;
    default:
      return true;
  }
}

void term_vars(const Term& t, std::vector<VarId>& out) {
  if (is_var(t)) {
    VarId id = as_var(t).id;
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    return;
  }
  if (is_pair(t)) {
    term_vars(as_pair(t).car, out);
    term_vars(as_pair(t).cdr, out);
    return;
  }
  if (is_set_cell(t)) {
    const auto& cell = as_set_cell(t);
    for (const auto& e : cell.elems) term_vars(e, out);
    term_vars(cell.rest, out);
  }
}

Term rename(const Term& t, std::map<VarId, Term>& names) {
  if (is_var(t)) {
    VarId id = as_var(t).id;
    auto it = names.find(id);
    if (it == names.end()) {
      it = names.emplace(id, sym("_." + std::to_string(names.size()))).first;
    }
    return it->second;
  }
  if (is_pair(t)) return cons(rename(as_pair(t).car, names), rename(as_pair(t).cdr, names));
  if (is_set_cell(t)) {
    const auto& cell = as_set_cell(t);
    std::vector<Term> elems;
    elems.reserve(cell.elems.size());
    for (const auto& e : cell.elems) elems.push_back(rename(e, names));
    return set_cell(std::move(elems), rename(cell.rest, names));
  }
  return t;
}

struct Kept {
  CPtr c;
  std::vector<Term> args;
  std::vector<std::pair<Term, Term>> pairs;
  bool consumed = false;
};

bool term_less(const Term& a, const Term& b) { return term_cmp(a, b) < 0; }

void sort_dedup(std::vector<Term>& v) {
  std::sort(v.begin(), v.end(), term_less);
  v.erase(std::unique(v.begin(), v.end(), [](const Term& a, const Term& b) { return term_eq(a, b); }),
          v.end());
}

}  // namespace

Term reify_answer(const State& st, const std::vector<Term>& qvars) {
  std::vector<Term> values;
  values.reserve(qvars.size());
  for (const auto& q : qvars) values.push_back(sort_sets(walk_deep(q, st.subst)));

  std::vector<VarId> vvars;
  for (const auto& v : values) term_vars(v, vvars);

  // Gather live suspensions, smallest index var first, one entry each.
  std::vector<std::pair<std::uint32_t, CList>> buckets;
  st.store.for_each([&](std::uint32_t k, const CList& lst) { buckets.emplace_back(k, lst); });
  std::sort(buckets.begin(), buckets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Kept> kept;
  std::set<const Constraint*> seen;
  for (const auto& [vid, lst] : buckets) {
    (void)vid;
    for (const auto& c : *lst) {
      if (!seen.insert(c.get()).second) continue;
      Kept k;
      k.c = c;
      bool hidden = false;
      std::vector<VarId> cvars;
      for (const auto& a : c->args) {
        Term w = walk_deep(a, st.subst);
        term_vars(w, cvars);
        k.args.push_back(std::move(w));
      }
      for (const auto& p : c->pairs) {
        Term l = walk_deep(p.first, st.subst);
        Term r = walk_deep(p.second, st.subst);
        term_vars(l, cvars);
        term_vars(r, cvars);
        k.pairs.emplace_back(std::move(l), std::move(r));
      }
      for (VarId v : cvars) {
        if (std::find(vvars.begin(), vvars.end(), v) == vvars.end()) {
          hidden = true;
          break;
        }
      }
      // A suspension touching any variable outside the answer is mute: the
      // hidden variable can always be chosen to satisfy it.
      if (!hidden) kept.push_back(std::move(k));
    }
  }

  // Absence upgrade: sub-absence plus an (explicit or type-entailed)
  // disequality on the same two terms reads as full absence. The witness
  // constraint is folded in rather than shown twice.
  std::vector<std::pair<Term, Term>> absentos;
  for (auto& k : kept) {
    if (k.c->kind != CKind::SubAbsent || k.consumed) continue;
    const Term& p = k.args[0];
    const Term& q = k.args[1];
    bool done = false;
    for (auto& d : kept) {
      if (d.c->kind != CKind::Diseq || d.consumed || d.pairs.size() != 1) continue;
      const Term& l = d.pairs[0].first;
      const Term& r = d.pairs[0].second;
      if ((term_eq(l, p) && term_eq(r, q)) || (term_eq(l, q) && term_eq(r, p))) {
        d.consumed = true;
        done = true;
        break;
      }
    }
    if (!done && is_var(q) && class_of(p) != 6) {
      for (auto& t : kept) {
        if (t.consumed) continue;
        bool is_type = t.c->kind == CKind::TypeSet || t.c->kind == CKind::TypeSym ||
                       t.c->kind == CKind::TypeNum || t.c->kind == CKind::TypeList;
        if (!is_type) continue;
        if (!is_var(t.args[0]) || as_var(t.args[0]).id != as_var(q).id) continue;
        if (!type_admits(t.c->kind, class_of(p))) {
          t.consumed = true;
          done = true;
        }
        break;
      }
    }
    if (done) {
      k.consumed = true;
      absentos.emplace_back(p, q);
    }
  }

  // Names come from the values alone; every kept constraint var appears there.
  std::map<VarId, Term> names;
  {
    std::vector<VarId> traversal;
    for (const auto& v : values) term_vars(v, traversal);
    for (VarId id : traversal) {
      names.emplace(id, sym("_." + std::to_string(names.size())));
    }
  }

  std::vector<Term> named_values;
  named_values.reserve(values.size());
  for (const auto& v : values) named_values.push_back(sort_sets(rename(v, names)));

  auto out_term = [&](const Term& t) { return sort_sets(rename(t, names)); };

  std::vector<Term> diseq_pl, notmem_pl, disj_pl, union_pl, free_pl, lookup_pl, subabs_pl, abs_pl;
  std::vector<Term> set_vs, sym_vs, num_vs, lst_vs;
  for (const auto& k : kept) {
    if (k.consumed) continue;
    switch (k.c->kind) {
      case CKind::Diseq: {
        std::vector<Term> ps;
        ps.reserve(k.pairs.size());
        for (const auto& p : k.pairs) {
          Term a = out_term(p.first);
          Term b = out_term(p.second);
          // Each pair prints smaller side first.
          if (term_cmp(b, a) < 0) std::swap(a, b);
          ps.push_back(list2(std::move(a), std::move(b)));
        }
        std::sort(ps.begin(), ps.end(), term_less);
        diseq_pl.push_back(list_of(ps));
        break;
      }
      case CKind::TypeSet:
        set_vs.push_back(out_term(k.args[0]));
        break;
      case CKind::TypeSym:
        sym_vs.push_back(out_term(k.args[0]));
        break;
      case CKind::TypeNum:
        num_vs.push_back(out_term(k.args[0]));
        break;
      case CKind::TypeList:
        lst_vs.push_back(out_term(k.args[0]));
        break;
      case CKind::NotMember:
        notmem_pl.push_back(list2(out_term(k.args[0]), out_term(k.args[1])));
        break;
      case CKind::Disjoint:
        disj_pl.push_back(list2(out_term(k.args[0]), out_term(k.args[1])));
        break;
      case CKind::Union:
        union_pl.push_back(list3(out_term(k.args[0]), out_term(k.args[1]), out_term(k.args[2])));
        break;
      case CKind::SubAbsent:
        subabs_pl.push_back(list2(out_term(k.args[0]), out_term(k.args[1])));
        break;
      case CKind::Free:
        free_pl.push_back(list2(out_term(k.args[0]), out_term(k.args[1])));
        break;
      case CKind::Lookup:
        lookup_pl.push_back(list3(out_term(k.args[0]), out_term(k.args[1]), out_term(k.args[2])));
        break;
    }
  }
  for (const auto& [p, q] : absentos) abs_pl.push_back(list2(out_term(p), out_term(q)));

  for (auto* v : {&diseq_pl, &notmem_pl, &disj_pl, &union_pl, &free_pl, &lookup_pl, &subabs_pl,
                  &abs_pl, &set_vs, &sym_vs, &num_vs, &lst_vs}) {
    sort_dedup(*v);
  }

  std::vector<Term> groups;
  auto add_group = [&](const char* token, const std::vector<Term>& payloads) {
    if (payloads.empty()) return;
    std::vector<Term> items;
    items.reserve(payloads.size() + 1);
    items.push_back(sym(token));
    items.insert(items.end(), payloads.begin(), payloads.end());
    groups.push_back(list_of(items));
  };
  add_group("=/=", diseq_pl);
  add_group("lst", lst_vs);
  add_group("set", set_vs);
  add_group("∥", disj_pl);          // ∥
  add_group("∪₃", union_pl);   // ∪₃
  add_group("∉", notmem_pl);        // ∉
  add_group("sym", sym_vs);
  add_group("num", num_vs);
  add_group("free", free_pl);
  add_group("lookup", lookup_pl);
  add_group("absento", abs_pl);
  add_group("sub-absento", subabs_pl);

  Term value_node = qvars.size() == 1 ? named_values[0] : list_of(named_values);
  if (groups.empty()) return value_node;
  std::vector<Term> all;
  all.reserve(groups.size() + 1);
  all.push_back(value_node);
  all.insert(all.end(), groups.begin(), groups.end());
  return list_of(all);
}

std::string answer_str(const State& st, const std::vector<Term>& qvars) {
  return term_str(reify_answer(st, qvars));
}

}  // namespace setkanren
