#include "setkanren/setnorm.hpp"

#include <algorithm>

namespace setkanren {

namespace {

template <typename Rec>
Term rebuild_set(const Term& t, Rec rec, bool sort) {
  std::vector<Term> elems;
  Term cur = t;
  while (is_set_cell(cur)) {
    const auto& cell = as_set_cell(cur);
    for (const auto& e : cell.elems) elems.push_back(rec(e));
    cur = cell.rest;
  }
  Term rest = is_empty_set(cur) ? cur : rec(cur);
  if (sort) {
    std::stable_sort(elems.begin(), elems.end(),
                     [](const Term& a, const Term& b) { return term_cmp(a, b) < 0; });
  }
  std::vector<Term> dedup;
  dedup.reserve(elems.size());
  for (const auto& e : elems) {
    bool seen = false;
    for (const auto& d : dedup) {
      if (term_eq(d, e)) {
        seen = true;
        break;
      }
    }
    if (!seen) dedup.push_back(e);
  }
  return set_cell(std::move(dedup), std::move(rest));
}

template <typename Rec>
Term norm_rec(const Term& t, Rec rec, bool sort) {
  if (is_pair(t)) return cons(rec(as_pair(t).car), rec(as_pair(t).cdr));
  if (is_set_cell(t)) return rebuild_set(t, rec, sort);
  return t;
}

}  // namespace

Term norm_sets(const Term& t) {
  return norm_rec(t, [](const Term& u) { return norm_sets(u); }, false);
}

Term sort_sets(const Term& t) {
  return norm_rec(t, [](const Term& u) { return sort_sets(u); }, true);
}

}  // namespace setkanren
