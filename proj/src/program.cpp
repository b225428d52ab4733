#include "setkanren/program.hpp"

#include <utility>

namespace setkanren {
namespace {

struct Builtin {
  enum class Kind {
    Eq,
    Op,
    UnionPlus,
    NotUnion,
    NotDisjoint,
    Subseteq,
    Subset,
    Subtract,
    Succeed,
    Fail,
  };
  Kind kind;
  OpTag op = OpTag::Diseq;
  int arity = 0;
};

const std::map<std::string, Builtin>& builtins() {
  static const std::map<std::string, Builtin> table = {
      {"==", {Builtin::Kind::Eq, OpTag::Diseq, 2}},
      {"=/=", {Builtin::Kind::Op, OpTag::Diseq, 2}},
      {"seto", {Builtin::Kind::Op, OpTag::Seto, 1}},
      {"symbolo", {Builtin::Kind::Op, OpTag::Symbolo, 1}},
      {"numbero", {Builtin::Kind::Op, OpTag::Numbero, 1}},
      {"listo", {Builtin::Kind::Op, OpTag::Listo, 1}},
      {"ino", {Builtin::Kind::Op, OpTag::Ino, 2}},
      {"!ino", {Builtin::Kind::Op, OpTag::NotIno, 2}},
      {"uniono", {Builtin::Kind::Op, OpTag::Uniono, 3}},
      {"disjo", {Builtin::Kind::Op, OpTag::Disjo, 2}},
      {"union+o", {Builtin::Kind::UnionPlus, OpTag::Uniono, 3}},
      {"!uniono", {Builtin::Kind::NotUnion, OpTag::Uniono, 3}},
      {"!disjo", {Builtin::Kind::NotDisjoint, OpTag::Disjo, 2}},
      {"subseteqo", {Builtin::Kind::Subseteq, OpTag::Uniono, 2}},
      {"subseto", {Builtin::Kind::Subset, OpTag::Uniono, 2}},
      {"subtracto", {Builtin::Kind::Subtract, OpTag::Uniono, 3}},
      {"absento", {Builtin::Kind::Op, OpTag::Absento, 2}},
      {"sub-absento", {Builtin::Kind::Op, OpTag::SubAbsento, 2}},
      {"freeo", {Builtin::Kind::Op, OpTag::Freeo, 2}},
      {"lookupo", {Builtin::Kind::Op, OpTag::Lookupo, 3}},
      {"succeed", {Builtin::Kind::Succeed, OpTag::Diseq, 0}},
      {"fail", {Builtin::Kind::Fail, OpTag::Diseq, 0}},
  };
  return table;
}

bool is_head(const Datum& d, const char* name) {
  return d.kind == Datum::Kind::List && !d.items.empty() &&
         d.items[0].kind == Datum::Kind::Sym && d.items[0].text == name;
}

bool proper_list(const Datum& d) { return d.kind == Datum::Kind::List && !d.tail; }

// Quote/quasiquote/unquote forms read as two-element lists; anything else
// with those heads was written by hand and is malformed.
const Datum& quoted_arg(const Datum& d) {
  if (!proper_list(d) || d.items.size() != 2) {
    throw CompileError(d.pos, "malformed " + d.items[0].text + " form");
  }
  return d.items[1];
}

bool contains_unquote(const Datum& d) {
  if (is_head(d, "unquote") || is_head(d, "unquote-splicing")) return true;
  for (const auto& it : d.items) {
    if (contains_unquote(it)) return true;
  }
  return d.tail && contains_unquote(*d.tail);
}

// Fully quoted data: every datum maps to a ground term, unquote included.
Term datum_literal(const Datum& d) {
  switch (d.kind) {
    case Datum::Kind::Sym:
      return sym(d.text);
    case Datum::Kind::Num:
      return num(d.value);
    case Datum::Kind::Bool:
      return boolean(d.flag);
    case Datum::Kind::List: {
      Term t = d.tail ? datum_literal(*d.tail) : nil();
      for (auto it = d.items.rbegin(); it != d.items.rend(); ++it) {
        t = cons(datum_literal(*it), t);
      }
      return t;
    }
    case Datum::Kind::Set: {
      Term rest = d.tail ? datum_literal(*d.tail) : empty_set();
      if (!is_setlike(rest)) {
        throw CompileError(d.tail->pos, "set literal tail must be a set");
      }
      if (d.items.empty()) return rest;
      std::vector<Term> elems;
      for (const auto& it : d.items) elems.push_back(datum_literal(it));
      return set_cell(std::move(elems), rest);
    }
  }
  throw CompileError(d.pos, "unreadable datum");
}

const Term* lit_of(const TTerm& t) {
  if (const auto* l = std::get_if<TLit>(&t->data)) return &l->value;
  return nullptr;
}

TTerm fold_pair(TTerm car, TTerm cdr) {
  const Term* a = lit_of(car);
  const Term* b = lit_of(cdr);
  if (a && b) return t_lit(cons(*a, *b));
  return t_pair(std::move(car), std::move(cdr));
}

TTerm fold_set(std::vector<TTerm> elems, TTerm rest, SourcePos rest_pos) {
  bool ground = true;
  for (const auto& e : elems) {
    if (!lit_of(e)) ground = false;
  }
  const Term* rl = rest ? lit_of(rest) : nullptr;
  if (rest && rl && !is_setlike(*rl)) {
    throw CompileError(rest_pos, "set literal tail must be a set");
  }
  if (ground && (!rest || rl)) {
    std::vector<Term> vals;
    for (const auto& e : elems) vals.push_back(*lit_of(e));
    return t_lit(set_cell(std::move(vals), rest ? *rl : empty_set()));
  }
  return t_set(std::move(elems), std::move(rest));
}

using Env = std::map<std::string, int>;

TTerm compile_term(const Datum& d, const Env& env);

TTerm compile_qq(const Datum& d, const Env& env, int depth) {
  switch (d.kind) {
    case Datum::Kind::Sym:
      return t_lit(sym(d.text));
    case Datum::Kind::Num:
      return t_lit(num(d.value));
    case Datum::Kind::Bool:
      return t_lit(boolean(d.flag));
    case Datum::Kind::List: {
      if (is_head(d, "unquote")) {
        const Datum& a = quoted_arg(d);
        if (depth == 1) return compile_term(a, env);
        TTerm inner = compile_qq(a, env, depth - 1);
        return fold_pair(t_lit(sym("unquote")), fold_pair(inner, t_lit(nil())));
      }
      if (is_head(d, "quasiquote")) {
        TTerm inner = compile_qq(quoted_arg(d), env, depth + 1);
        return fold_pair(t_lit(sym("quasiquote")), fold_pair(inner, t_lit(nil())));
      }
      if (is_head(d, "unquote-splicing")) {
        throw CompileError(d.pos, "unquote-splicing is not supported");
      }
      TTerm t = d.tail ? compile_qq(*d.tail, env, depth) : t_lit(nil());
      for (auto it = d.items.rbegin(); it != d.items.rend(); ++it) {
        t = fold_pair(compile_qq(*it, env, depth), std::move(t));
      }
      return t;
    }
    case Datum::Kind::Set: {
      TTerm rest = d.tail ? compile_qq(*d.tail, env, depth) : nullptr;
      if (d.items.empty()) {
        return rest ? rest : t_lit(empty_set());
      }
      std::vector<TTerm> elems;
      for (const auto& it : d.items) elems.push_back(compile_qq(it, env, depth));
      return fold_set(std::move(elems), std::move(rest), d.tail ? d.tail->pos : d.pos);
    }
  }
  throw CompileError(d.pos, "unreadable datum");
}

TTerm compile_term(const Datum& d, const Env& env) {
  switch (d.kind) {
    case Datum::Kind::Sym: {
      auto it = env.find(d.text);
      if (it == env.end()) throw CompileError(d.pos, "unbound identifier: " + d.text);
      return t_slot(it->second);
    }
    case Datum::Kind::Num:
      return t_lit(num(d.value));
    case Datum::Kind::Bool:
      return t_lit(boolean(d.flag));
    case Datum::Kind::List:
      if (is_head(d, "quote")) return t_lit(datum_literal(quoted_arg(d)));
      if (is_head(d, "quasiquote")) return compile_qq(quoted_arg(d), env, 1);
      if (is_head(d, "unquote") || is_head(d, "unquote-splicing")) {
        throw CompileError(d.pos, "unquote outside quasiquote");
      }
      throw CompileError(d.pos, "expected a term; quote structured data");
    case Datum::Kind::Set:
      if (contains_unquote(d)) throw CompileError(d.pos, "unquote outside quasiquote");
      return t_lit(datum_literal(d));
  }
  throw CompileError(d.pos, "unreadable datum");
}

struct SlotAlloc {
  int next = 0;
};

GoalT compile_goal(const Datum& d, const Env& env, SlotAlloc& alloc,
                   const std::vector<Relation>& rels, const std::map<std::string, int>& index);

GoalT compile_conj(const std::vector<Datum>& items, std::size_t from, const Env& env,
                   SlotAlloc& alloc, const std::vector<Relation>& rels,
                   const std::map<std::string, int>& index) {
  std::vector<GoalT> gs;
  for (std::size_t i = from; i < items.size(); i++) {
    gs.push_back(compile_goal(items[i], env, alloc, rels, index));
  }
  return g_conj_all(gs);
}

// Binder lists ((fresh ...) vars, defrel params, query vars) share shape:
// a proper list of distinct symbols.
std::vector<std::string> binder_names(const Datum& d, const char* what) {
  if (!proper_list(d)) throw CompileError(d.pos, std::string("expected a list of ") + what);
  std::vector<std::string> names;
  for (const auto& it : d.items) {
    if (it.kind != Datum::Kind::Sym) {
      throw CompileError(it.pos, std::string(what) + " must be symbols");
    }
    for (const auto& n : names) {
      if (n == it.text) throw CompileError(it.pos, "duplicate variable: " + it.text);
    }
    names.push_back(it.text);
  }
  return names;
}

GoalT compile_goal(const Datum& d, const Env& env, SlotAlloc& alloc,
                   const std::vector<Relation>& rels, const std::map<std::string, int>& index) {
  // succeed and fail are goals in their own right, not calls.
  if (d.kind == Datum::Kind::Sym && d.text == "succeed") return g_succeed();
  if (d.kind == Datum::Kind::Sym && d.text == "fail") return g_fail();
  if (!proper_list(d) || d.items.empty() || d.items[0].kind != Datum::Kind::Sym) {
    throw CompileError(d.pos, "expected a goal form");
  }
  const std::string& name = d.items[0].text;

  if (name == "conde") {
    std::vector<GoalT> clauses;
    for (std::size_t i = 1; i < d.items.size(); i++) {
      const Datum& cl = d.items[i];
      if (!proper_list(cl)) throw CompileError(cl.pos, "conde clause must be a list of goals");
      clauses.push_back(compile_conj(cl.items, 0, env, alloc, rels, index));
    }
    return g_conde(std::move(clauses));
  }
  if (name == "fresh") {
    if (d.items.size() < 2) throw CompileError(d.pos, "malformed fresh form");
    Env inner = env;
    for (const auto& v : binder_names(d.items[1], "fresh variables")) {
      inner[v] = alloc.next++;
    }
    return g_fresh(compile_conj(d.items, 2, inner, alloc, rels, index));
  }

  auto check_arity = [&](int want) {
    int got = static_cast<int>(d.items.size()) - 1;
    if (got != want) {
      throw CompileError(d.pos, name + " expects " + std::to_string(want) + " arguments, got " +
                                    std::to_string(got));
    }
  };
  auto arg = [&](int i) { return compile_term(d.items[static_cast<std::size_t>(i) + 1], env); };

  // User definitions shadow the builtin heads.
  auto ri = index.find(name);
  if (ri != index.end()) {
    const Relation& rel = rels[static_cast<std::size_t>(ri->second)];
    check_arity(rel.arity);
    std::vector<TTerm> args;
    for (int i = 0; i < rel.arity; i++) args.push_back(arg(i));
    return g_call(ri->second, std::move(args));
  }

  auto bi = builtins().find(name);
  if (bi == builtins().end()) throw CompileError(d.pos, "unknown relation: " + name);
  const Builtin& b = bi->second;
  check_arity(b.arity);
  switch (b.kind) {
    case Builtin::Kind::Eq:
      return g_eq(arg(0), arg(1));
    case Builtin::Kind::Op: {
      std::vector<TTerm> args;
      for (int i = 0; i < b.arity; i++) args.push_back(arg(i));
      return g_op(b.op, std::move(args));
    }
    case Builtin::Kind::UnionPlus:
      return d_union_plus(arg(0), arg(1), arg(2));
    case Builtin::Kind::NotUnion:
      return d_not_union(arg(0), arg(1), arg(2), alloc.next++);
    case Builtin::Kind::NotDisjoint:
      return d_not_disjoint(arg(0), arg(1), alloc.next++);
    case Builtin::Kind::Subseteq:
      return d_subseteq(arg(0), arg(1));
    case Builtin::Kind::Subset:
      return d_subset(arg(0), arg(1), alloc.next++);
    case Builtin::Kind::Subtract:
      return d_subtract(arg(0), arg(1), arg(2));
    case Builtin::Kind::Succeed:
      return g_succeed();
    case Builtin::Kind::Fail:
      return g_fail();
  }
  throw CompileError(d.pos, "unknown relation: " + name);
}

}  // namespace

bool is_defrel(const Datum& form) { return is_head(form, "defrel"); }

int Session::declare(const Datum& form, bool allow_redefine, std::vector<std::string>* warnings) {
  if (!proper_list(form) || form.items.size() < 2) {
    throw CompileError(form.pos, "malformed defrel form");
  }
  const Datum& head = form.items[1];
  if (!proper_list(head) || head.items.empty() || head.items[0].kind != Datum::Kind::Sym) {
    throw CompileError(head.pos, "defrel head must be (name params ...)");
  }
  const std::string& name = head.items[0].text;
  std::vector<Datum> params(head.items.begin() + 1, head.items.end());
  binder_names(d_list(params, head.pos), "parameters");
  if (index_.count(name)) {
    if (!allow_redefine) throw CompileError(head.pos, "duplicate definition of " + name);
    if (warnings) warnings->push_back("redefining " + name);
  }
  Relation rel;
  rel.name = name;
  rel.arity = static_cast<int>(params.size());
  rel.slot_count = rel.arity;
  rel.body = g_fail();
  int idx = static_cast<int>(rels_.size());
  rels_.push_back(std::move(rel));
  index_[name] = idx;
  return idx;
}

void Session::compile_body(const Datum& form, int rel_index) {
  Relation& rel = rels_[static_cast<std::size_t>(rel_index)];
  const Datum& head = form.items[1];
  Env env;
  for (std::size_t i = 1; i < head.items.size(); i++) {
    env[head.items[i].text] = static_cast<int>(i) - 1;
  }
  SlotAlloc alloc{rel.arity};
  rel.body = compile_conj(form.items, 2, env, alloc, rels_, index_);
  rel.slot_count = alloc.next;
}

Query Session::compile_query(const Datum& form) const {
  if (!proper_list(form) || form.items.empty() || form.items[0].kind != Datum::Kind::Sym) {
    throw CompileError(form.pos, "expected a definition or a run form");
  }
  const std::string& head = form.items[0].text;
  Query q;
  q.pos = form.pos;
  std::size_t vars_at;
  if (head == "run") {
    if (form.items.size() < 3 || form.items[1].kind != Datum::Kind::Num ||
        form.items[1].value < 0) {
      throw CompileError(form.pos, "run expects a count, query variables, and goals");
    }
    q.mode = Query::Mode::RunN;
    q.n = static_cast<long>(form.items[1].value);
    vars_at = 2;
  } else if (head == "run*" || head == "run-unique*") {
    q.mode = head == "run*" ? Query::Mode::RunStar : Query::Mode::RunUnique;
    vars_at = 1;
  } else {
    throw CompileError(form.pos, "expected a definition or a run form");
  }
  if (form.items.size() < vars_at + 1) {
    throw CompileError(form.pos, "missing query variables");
  }
  auto names = binder_names(form.items[vars_at], "query variables");
  if (names.empty()) throw CompileError(form.items[vars_at].pos, "need a query variable");
  Env env;
  SlotAlloc alloc{0};
  for (const auto& n : names) env[n] = alloc.next++;
  q.qvar_count = static_cast<int>(names.size());
  q.body = compile_conj(form.items, vars_at + 1, env, alloc, rels_, index_);
  q.slot_count = alloc.next;
  return q;
}

FeedResult Session::feed(const Datum& form) {
  FeedResult res;
  if (is_defrel(form)) {
    std::size_t size0 = rels_.size();
    std::optional<int> prior;
    if (proper_list(form) && form.items.size() >= 2 && proper_list(form.items[1]) &&
        !form.items[1].items.empty() && form.items[1].items[0].kind == Datum::Kind::Sym) {
      auto it = index_.find(form.items[1].items[0].text);
      if (it != index_.end()) prior = it->second;
    }
    int idx = declare(form, true, &res.warnings);
    try {
      compile_body(form, idx);
    } catch (...) {
      // Leave the session as it was before the broken definition.
      const std::string name = rels_.back().name;
      rels_.resize(size0);
      if (prior) {
        index_[name] = *prior;
      } else {
        index_.erase(name);
      }
      throw;
    }
    return res;
  }
  res.query = compile_query(form);
  return res;
}

std::vector<Query> Session::load(const std::vector<Datum>& forms) {
  std::size_t size0 = rels_.size();
  std::map<std::string, int> index0 = index_;
  try {
    std::vector<std::pair<const Datum*, int>> defs;
    for (const auto& f : forms) {
      if (is_defrel(f)) defs.emplace_back(&f, declare(f, false, nullptr));
    }
    for (auto& [form, idx] : defs) compile_body(*form, idx);
    std::vector<Query> queries;
    for (const auto& f : forms) {
      if (!is_defrel(f)) queries.push_back(compile_query(f));
    }
    return queries;
  } catch (...) {
    rels_.resize(size0);
    index_ = index0;
    throw;
  }
}

}  // namespace setkanren
