#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace setkanren {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

using VarId = std::uint32_t;

struct Sym {
  std::string name;
};
struct Num {
  std::int64_t value;
};
struct Bool {
  bool value;
};
struct Nil {};
struct Var {
  VarId id;
};
struct Pair {
  Term car;
  Term cdr;
};
struct EmptySet {};
// A set cell lists one or more elements in front of a rest-set. The rest is
// either EmptySet, another SetCell, or a variable; elems is never empty.
struct SetCell {
  std::vector<Term> elems;
  Term rest;
};

struct TermNode {
  std::variant<Sym, Num, Bool, Nil, Var, Pair, EmptySet, SetCell> data;
};

Term sym(std::string name);
Term num(std::int64_t value);
Term boolean(bool value);
Term nil();
Term var(VarId id);
Term cons(Term car, Term cdr);
Term empty_set();
Term set_cell(std::vector<Term> elems, Term rest);

inline bool is_sym(const Term& t) { return std::holds_alternative<Sym>(t->data); }
inline bool is_num(const Term& t) { return std::holds_alternative<Num>(t->data); }
inline bool is_bool(const Term& t) { return std::holds_alternative<Bool>(t->data); }
inline bool is_nil(const Term& t) { return std::holds_alternative<Nil>(t->data); }
inline bool is_var(const Term& t) { return std::holds_alternative<Var>(t->data); }
inline bool is_pair(const Term& t) { return std::holds_alternative<Pair>(t->data); }
inline bool is_empty_set(const Term& t) { return std::holds_alternative<EmptySet>(t->data); }
inline bool is_set_cell(const Term& t) { return std::holds_alternative<SetCell>(t->data); }
inline bool is_setlike(const Term& t) { return is_empty_set(t) || is_set_cell(t); }

inline const Sym& as_sym(const Term& t) { return std::get<Sym>(t->data); }
inline const Num& as_num(const Term& t) { return std::get<Num>(t->data); }
inline const Bool& as_bool(const Term& t) { return std::get<Bool>(t->data); }
inline const Var& as_var(const Term& t) { return std::get<Var>(t->data); }
inline const Pair& as_pair(const Term& t) { return std::get<Pair>(t->data); }
inline const SetCell& as_set_cell(const Term& t) { return std::get<SetCell>(t->data); }

// Structural equality. Shared subterms compare by pointer first.
bool term_eq(const Term& a, const Term& b);

// Total order over ground and non-ground terms alike; used for canonical
// element ordering inside displayed sets and for oracle canonicalization.
// Class order: numbers < symbols < booleans < () < pairs < sets < variables.
int term_cmp(const Term& a, const Term& b);

// Raw printer: variables as #<v N>, sets as #(set (e ...) rest?). Debugging
// and test diagnostics only; answer display lives in reify.
std::string term_str(const Term& t);

}  // namespace setkanren
