#include "setkanren/oracle.hpp"

#include <algorithm>
#include <functional>

namespace setkanren {

namespace {

// Sorted distinct subsets of pool, sizes 0..max_size. pool must be sorted.
void subsets_of(const std::vector<Term>& pool, int max_size, std::vector<Term>& out) {
  std::vector<Term> picked;
  std::function<void(size_t)> go = [&](size_t from) {
    if (picked.empty()) {
      out.push_back(empty_set());
    } else {
      out.push_back(set_cell(picked, empty_set()));
    }
    if (static_cast<int>(picked.size()) == max_size) return;
    for (size_t i = from; i < pool.size(); i++) {
      picked.push_back(pool[i]);
      go(i + 1);
      picked.pop_back();
    }
  };
  go(0);
}

Term list_from(const std::vector<Term>& items) {
  Term t = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = cons(*it, t);
  return t;
}

void sequences_of(const std::vector<Term>& pool, int max_len, std::vector<Term>& out) {
  std::vector<Term> picked;
  std::function<void()> go = [&]() {
    out.push_back(list_from(picked));
    if (static_cast<int>(picked.size()) == max_len) return;
    for (const auto& p : pool) {
      picked.push_back(p);
      go();
      picked.pop_back();
    }
  };
  go();
}

// Canonical elements of a ground set term; nullopt when not a set.
std::optional<std::vector<Term>> set_elems(const Term& t) {
  auto c = canon(t);
  if (!c) return std::nullopt;
  if (is_empty_set(*c)) return std::vector<Term>{};
  if (!is_set_cell(*c)) return std::nullopt;
  return as_set_cell(*c).elems;
}

bool elem_of(const Term& x, const std::vector<Term>& elems) {
  auto cx = canon(x);
  if (!cx) return false;
  for (const auto& e : elems) {
    if (term_cmp(*cx, e) == 0) return true;
  }
  return false;
}

// Sorted-merge union of two canonical element lists.
std::vector<Term> elem_union(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size()) {
      out.push_back(b[j++]);
    } else if (j == b.size()) {
      out.push_back(a[i++]);
    } else {
      int c = term_cmp(a[i], b[j]);
      if (c < 0) {
        out.push_back(a[i++]);
      } else if (c > 0) {
        out.push_back(b[j++]);
      } else {
        out.push_back(a[i++]);
        j++;
      }
    }
  }
  return out;
}

bool elems_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); i++) {
    if (term_cmp(a[i], b[i]) != 0) return false;
  }
  return true;
}

bool is_empty_canon(const Term& t) {
  auto c = canon(t);
  return c && is_empty_set(*c);
}

bool o_seto(const Term& t) { return set_elems(t).has_value(); }

bool o_listo(const Term& t) {
  Term cur = t;
  while (is_pair(cur)) cur = as_pair(cur).cdr;
  return is_nil(cur);
}

bool o_ino(const Term& el, const Term& s) {
  auto es = set_elems(s);
  return es && elem_of(el, *es);
}

// Not-membership short-circuits on the empty set before demanding a set on
// the right, mirroring the solver.
bool o_not_ino(const Term& el, const Term& s) {
  if (is_empty_canon(s)) return true;
  auto es = set_elems(s);
  return es && !elem_of(el, *es);
}

bool o_uniono(const Term& a, const Term& b, const Term& c) {
  auto ea = set_elems(a), eb = set_elems(b), ec = set_elems(c);
  if (!ea || !eb || !ec) return false;
  return elems_equal(elem_union(*ea, *eb), *ec);
}

bool o_disjo(const Term& a, const Term& b) {
  if (is_empty_canon(a) || is_empty_canon(b)) return true;
  auto ea = set_elems(a), eb = set_elems(b);
  if (!ea || !eb) return false;
  for (const auto& e : *ea) {
    if (elem_of(e, *eb)) return false;
  }
  return true;
}

bool o_not_disjo(const Term& a, const Term& b) {
  auto ea = set_elems(a), eb = set_elems(b);
  if (!ea || !eb) return false;
  for (const auto& e : *ea) {
    if (elem_of(e, *eb)) return true;
  }
  return false;
}

// Witnesses for the not-union existential can only come from the elements
// of the three arguments; non-sets contribute none.
bool o_not_uniono(const Term& l, const Term& r, const Term& c) {
  std::vector<Term> pool;
  for (const Term* t : {&l, &r, &c}) {
    if (auto es = set_elems(*t)) {
      for (const auto& e : *es) pool.push_back(e);
    }
  }
  for (const auto& n : pool) {
    if (o_ino(n, c) && o_not_ino(n, l) && o_not_ino(n, r)) return true;
    if (o_not_ino(n, c) && (o_ino(n, l) || o_ino(n, r))) return true;
  }
  return false;
}

bool o_subseteqo(const Term& b, const Term& p) { return o_uniono(b, p, p); }

bool o_subseto(const Term& b, const Term& p) {
  if (!o_subseteqo(b, p)) return false;
  auto eb = set_elems(b), ep = set_elems(p);
  for (const auto& n : *ep) {
    if (!elem_of(n, *eb)) return true;
  }
  return false;
}

bool o_subtracto(const Term& l, const Term& o, const Term& w) {
  if (!o_not_ino(o, w)) return false;
  return ext_equal(l, set_cell({o}, w)) || ext_equal(l, w);
}

bool o_sub_absent(const Term& p, const Term& q) {
  if (is_pair(q)) {
    const auto& pr = as_pair(q);
    return !ext_equal(p, pr.car) && o_sub_absent(p, pr.car) && !ext_equal(p, pr.cdr) &&
           o_sub_absent(p, pr.cdr);
  }
  if (auto es = set_elems(q)) {
    for (const auto& e : *es) {
      if (ext_equal(p, e) || !o_sub_absent(p, e)) return false;
    }
    return true;
  }
  return true;
}

bool o_absento(const Term& p, const Term& q) {
  return !ext_equal(p, q) && o_sub_absent(p, q);
}

bool o_freeo(const Term& k, const Term& l) {
  Term cur = l;
  while (is_pair(cur)) {
    const Term& h = as_pair(cur).car;
    if (!is_pair(h)) return false;
    if (ext_equal(as_pair(h).car, k)) return false;
    cur = as_pair(cur).cdr;
  }
  return is_nil(cur);
}

// Leftmost match wins: a later pair with the same key is shadowed.
bool o_lookupo(const Term& k, const Term& l, const Term& v) {
  Term cur = l;
  while (is_pair(cur)) {
    const Term& h = as_pair(cur).car;
    if (!is_pair(h)) return false;
    if (ext_equal(as_pair(h).car, k)) return ext_equal(as_pair(h).cdr, v);
    cur = as_pair(cur).cdr;
  }
  return false;
}

}  // namespace

Universe standard_universe() {
  Universe u;
  u.atoms = {num(0), num(1), sym("a")};
  u.max_set_size = 3;
  u.max_set_depth = 2;
  u.max_list_len = 3;
  return u;
}

std::vector<Term> enumerate_terms(const Universe& u) {
  std::vector<Term> out = u.atoms;

  std::vector<Term> pool = u.atoms;
  std::sort(pool.begin(), pool.end(),
            [](const Term& a, const Term& b) { return term_cmp(a, b) < 0; });
  std::vector<Term> sets;
  for (int d = 1; d <= u.max_set_depth; d++) {
    // Regenerating from the enriched pool reproduces every shallower set,
    // so only the last round is kept.
    sets.clear();
    subsets_of(pool, u.max_set_size, sets);
    pool = u.atoms;
    pool.insert(pool.end(), sets.begin(), sets.end());
    std::sort(pool.begin(), pool.end(),
              [](const Term& a, const Term& b) { return term_cmp(a, b) < 0; });
  }
  out.insert(out.end(), sets.begin(), sets.end());

  std::vector<Term> lists;
  sequences_of(u.atoms, u.max_list_len, lists);
  out.insert(out.end(), lists.begin(), lists.end());
  return out;
}

std::vector<Term> enumerate_alists(const Universe& u) {
  std::vector<Term> entries;
  for (const auto& k : u.atoms) {
    for (const auto& v : u.atoms) entries.push_back(cons(k, v));
  }
  std::vector<Term> out;
  sequences_of(entries, u.max_list_len, out);
  return out;
}

std::optional<Term> canon(const Term& t) {
  if (is_var(t)) return std::nullopt;
  if (is_pair(t)) {
    auto car = canon(as_pair(t).car);
    if (!car) return std::nullopt;
    auto cdr = canon(as_pair(t).cdr);
    if (!cdr) return std::nullopt;
    return cons(*car, *cdr);
  }
  if (is_set_cell(t)) {
    std::vector<Term> elems;
    Term cur = t;
    while (is_set_cell(cur)) {
      for (const auto& e : as_set_cell(cur).elems) {
        auto ce = canon(e);
        if (!ce) return std::nullopt;
        elems.push_back(*ce);
      }
      cur = as_set_cell(cur).rest;
    }
    if (!is_empty_set(cur)) return std::nullopt;
    std::sort(elems.begin(), elems.end(),
              [](const Term& a, const Term& b) { return term_cmp(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end(),
                            [](const Term& a, const Term& b) { return term_cmp(a, b) == 0; }),
                elems.end());
    if (elems.empty()) return empty_set();
    return set_cell(std::move(elems), empty_set());
  }
  return t;
}

bool ext_equal(const Term& a, const Term& b) {
  auto ca = canon(a);
  if (!ca) return false;
  auto cb = canon(b);
  if (!cb) return false;
  return term_cmp(*ca, *cb) == 0;
}

bool holds(OracleTag tag, const std::vector<Term>& args) {
  switch (tag) {
    case OracleTag::Eq: return ext_equal(args[0], args[1]);
    case OracleTag::Diseq: return !ext_equal(args[0], args[1]);
    case OracleTag::Seto: return o_seto(args[0]);
    case OracleTag::Symbolo: return is_sym(args[0]);
    case OracleTag::Numbero: return is_num(args[0]);
    case OracleTag::Listo: return o_listo(args[0]);
    case OracleTag::Ino: return o_ino(args[0], args[1]);
    case OracleTag::NotIno: return o_not_ino(args[0], args[1]);
    case OracleTag::Uniono: return o_uniono(args[0], args[1], args[2]);
    case OracleTag::UnionPluso:
      return o_uniono(args[0], args[1], args[2]) && o_disjo(args[0], args[1]);
    case OracleTag::NotUniono: return o_not_uniono(args[0], args[1], args[2]);
    case OracleTag::Disjo: return o_disjo(args[0], args[1]);
    case OracleTag::NotDisjo: return o_not_disjo(args[0], args[1]);
    case OracleTag::Subseteqo: return o_subseteqo(args[0], args[1]);
    case OracleTag::Subseto: return o_subseto(args[0], args[1]);
    case OracleTag::Subtracto: return o_subtracto(args[0], args[1], args[2]);
    case OracleTag::SubAbsento: return o_sub_absent(args[0], args[1]);
    case OracleTag::Absento: return o_absento(args[0], args[1]);
    case OracleTag::Freeo: return o_freeo(args[0], args[1]);
    case OracleTag::Lookupo: return o_lookupo(args[0], args[1], args[2]);
  }
  return false;
}

std::vector<std::vector<Term>> solutions(OracleTag tag,
                                         const std::vector<std::optional<Term>>& args,
                                         const std::vector<Term>& universe) {
  std::vector<size_t> holes;
  for (size_t i = 0; i < args.size(); i++) {
    if (!args[i]) holes.push_back(i);
  }
  std::vector<Term> filled(args.size());
  for (size_t i = 0; i < args.size(); i++) {
    if (args[i]) filled[i] = *args[i];
  }
  std::vector<std::vector<Term>> out;
  std::vector<Term> binding(holes.size());
  std::function<void(size_t)> go = [&](size_t h) {
    if (h == holes.size()) {
      if (holds(tag, filled)) out.push_back(binding);
      return;
    }
    for (const auto& t : universe) {
      filled[holes[h]] = t;
      binding[h] = t;
      go(h + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace setkanren
