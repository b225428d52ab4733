#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "setkanren/term.hpp"

namespace setkanren {

// Relation bodies are stored as templates: terms with slot indices where
// variables go. A call instantiates the template against a frame holding the
// actual arguments plus freshly allocated vars for the body's own slots.

struct TTermNode;
using TTerm = std::shared_ptr<const TTermNode>;

struct TLit {
  Term value;
};
struct TSlot {
  int index;
};
struct TPairT {
  TTerm car;
  TTerm cdr;
};
struct TSetT {
  std::vector<TTerm> elems;
  TTerm rest;  // null rest means the empty set
};

struct TTermNode {
  std::variant<TLit, TSlot, TPairT, TSetT> data;
};

TTerm t_lit(Term value);
TTerm t_slot(int index);
TTerm t_pair(TTerm car, TTerm cdr);
TTerm t_set(std::vector<TTerm> elems, TTerm rest);

enum class OpTag {
  Diseq,
  Seto,
  Symbolo,
  Numbero,
  Listo,
  Ino,
  NotIno,
  Disjo,
  Uniono,
  SubAbsento,
  Absento,
  Freeo,
  Lookupo,
};

struct GoalTNode;
using GoalT = std::shared_ptr<const GoalTNode>;

struct TEq {
  TTerm u, v;
};
struct TOp {
  OpTag op;
  std::vector<TTerm> args;
};
struct TConj {
  GoalT a, b;
};
struct TConde {
  std::vector<GoalT> clauses;
};
// Fresh slots are allocated with the enclosing frame; the node survives only
// as the search suspension point.
struct TFresh {
  GoalT body;
};
struct TCall {
  int rel;
  std::vector<TTerm> args;
};
struct TSucceed {};
struct TFail {};

struct GoalTNode {
  std::variant<TEq, TOp, TConj, TConde, TFresh, TCall, TSucceed, TFail> data;
};

GoalT g_eq(TTerm u, TTerm v);
GoalT g_op(OpTag op, std::vector<TTerm> args);
GoalT g_conj(GoalT a, GoalT b);
GoalT g_conj_all(const std::vector<GoalT>& gs);  // empty -> succeed
GoalT g_conde(std::vector<GoalT> clauses);
GoalT g_fresh(GoalT body);
GoalT g_call(int rel, std::vector<TTerm> args);
GoalT g_succeed();
GoalT g_fail();

// Derived set constraints, expanded into primitive goals. Expansions that
// introduce an existential take the slot index for it; the caller owns slot
// allocation and the fresh slot must not be used elsewhere.
GoalT d_union_plus(TTerm l, TTerm r, TTerm c);
GoalT d_not_union(TTerm l, TTerm r, TTerm c, int fresh_slot);
GoalT d_not_disjoint(TTerm l, TTerm r, int fresh_slot);
GoalT d_subseteq(TTerm b, TTerm p);
GoalT d_subset(TTerm b, TTerm p, int fresh_slot);
GoalT d_subtract(TTerm l, TTerm o, TTerm w);

struct Relation {
  std::string name;
  int arity = 0;
  int slot_count = 0;  // >= arity; params occupy slots [0, arity)
  GoalT body;
};

// Instantiated goals: templates with real terms filled in.

struct RGoalNode;
using Goal = std::shared_ptr<const RGoalNode>;

struct REq {
  Term u, v;
};
struct ROp {
  OpTag op;
  std::vector<Term> args;
};
struct RConj {
  Goal a, b;
};
struct RConde {
  std::vector<Goal> clauses;
};
struct RDelay {
  Goal inner;
};
struct RCall {
  int rel;
  std::vector<Term> args;
};
struct RSucceed {};
struct RFail {};

struct RGoalNode {
  std::variant<REq, ROp, RConj, RConde, RDelay, RCall, RSucceed, RFail> data;
};

std::vector<Term> make_frame(int slot_count, const std::vector<Term>& args, VarId& next);
Term instantiate_term(const TTerm& t, const std::vector<Term>& frame);
Goal instantiate(const GoalT& g, const std::vector<Term>& frame);

}  // namespace setkanren
