#include "setkanren/term.hpp"

#include <sstream>

namespace setkanren {

Term sym(std::string name) {
  return std::make_shared<const TermNode>(TermNode{Sym{std::move(name)}});
}

Term num(std::int64_t value) {
  return std::make_shared<const TermNode>(TermNode{Num{value}});
}

Term boolean(bool value) {
  static const Term t = std::make_shared<const TermNode>(TermNode{Bool{true}});
  static const Term f = std::make_shared<const TermNode>(TermNode{Bool{false}});
  return value ? t : f;
}

Term nil() {
  static const Term n = std::make_shared<const TermNode>(TermNode{Nil{}});
  return n;
}

Term var(VarId id) {
  return std::make_shared<const TermNode>(TermNode{Var{id}});
}

Term cons(Term car, Term cdr) {
  return std::make_shared<const TermNode>(TermNode{Pair{std::move(car), std::move(cdr)}});
}

Term empty_set() {
  static const Term e = std::make_shared<const TermNode>(TermNode{EmptySet{}});
  return e;
}

Term set_cell(std::vector<Term> elems, Term rest) {
  if (elems.empty()) return rest;
  return std::make_shared<const TermNode>(TermNode{SetCell{std::move(elems), std::move(rest)}});
}

bool term_eq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->data.index() != b->data.index()) return false;
  if (is_sym(a)) return as_sym(a).name == as_sym(b).name;
  if (is_num(a)) return as_num(a).value == as_num(b).value;
  if (is_bool(a)) return as_bool(a).value == as_bool(b).value;
  if (is_nil(a) || is_empty_set(a)) return true;
  if (is_var(a)) return as_var(a).id == as_var(b).id;
  if (is_pair(a)) {
    return term_eq(as_pair(a).car, as_pair(b).car) && term_eq(as_pair(a).cdr, as_pair(b).cdr);
  }
  const auto& sa = as_set_cell(a);
  const auto& sb = as_set_cell(b);
  if (sa.elems.size() != sb.elems.size()) return false;
  for (size_t i = 0; i < sa.elems.size(); i++) {
    if (!term_eq(sa.elems[i], sb.elems[i])) return false;
  }
  return term_eq(sa.rest, sb.rest);
}

namespace {

int class_rank(const Term& t) {
  if (is_num(t)) return 0;
  if (is_sym(t)) return 1;
  if (is_bool(t)) return 2;
  if (is_nil(t)) return 3;
  if (is_pair(t)) return 4;
  if (is_setlike(t)) return 5;
  return 6;  // variable
}

int cmp_int(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

int term_cmp(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  int ra = class_rank(a), rb = class_rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (ra) {
    case 0:
      return cmp_int(as_num(a).value, as_num(b).value);
    case 1: {
      int c = as_sym(a).name.compare(as_sym(b).name);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case 2:
      return cmp_int(as_bool(a).value ? 1 : 0, as_bool(b).value ? 1 : 0);
    case 3:
      return 0;
    case 4: {
      int c = term_cmp(as_pair(a).car, as_pair(b).car);
      if (c != 0) return c;
      return term_cmp(as_pair(a).cdr, as_pair(b).cdr);
    }
    case 5: {
      // Empty set sorts before any cell; cells compare elementwise then by rest.
      bool ea = is_empty_set(a), eb = is_empty_set(b);
      if (ea || eb) return ea == eb ? 0 : (ea ? -1 : 1);
      const auto& sa = as_set_cell(a);
      const auto& sb = as_set_cell(b);
      size_t n = std::min(sa.elems.size(), sb.elems.size());
      for (size_t i = 0; i < n; i++) {
        int c = term_cmp(sa.elems[i], sb.elems[i]);
        if (c != 0) return c;
      }
      if (sa.elems.size() != sb.elems.size())
        return sa.elems.size() < sb.elems.size() ? -1 : 1;
      return term_cmp(sa.rest, sb.rest);
    }
    default:
      return cmp_int(as_var(a).id, as_var(b).id);
  }
}

namespace {

void write_term(std::ostringstream& out, const Term& t) {
  if (is_sym(t)) {
    out << as_sym(t).name;
  } else if (is_num(t)) {
    out << as_num(t).value;
  } else if (is_bool(t)) {
    out << (as_bool(t).value ? "#t" : "#f");
  } else if (is_nil(t)) {
    out << "()";
  } else if (is_var(t)) {
    out << "#<v " << as_var(t).id << ">";
  } else if (is_pair(t)) {
    out << "(";
    Term cur = t;
    bool first = true;
    while (is_pair(cur)) {
      if (!first) out << " ";
      first = false;
      write_term(out, as_pair(cur).car);
      cur = as_pair(cur).cdr;
    }
    if (!is_nil(cur)) {
      out << " . ";
      write_term(out, cur);
    }
    out << ")";
  } else if (is_empty_set(t)) {
    out << "#(set)";
  } else {
    const auto& s = as_set_cell(t);
    out << "#(set (";
    for (size_t i = 0; i < s.elems.size(); i++) {
      if (i) out << " ";
      write_term(out, s.elems[i]);
    }
    out << ")";
    if (!is_empty_set(s.rest)) {
      out << " ";
      write_term(out, s.rest);
    }
    out << ")";
  }
}

}  // namespace

std::string term_str(const Term& t) {
  std::ostringstream out;
  write_term(out, t);
  return out.str();
}

}  // namespace setkanren
