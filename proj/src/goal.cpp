#include "setkanren/goal.hpp"

namespace setkanren {

TTerm t_lit(Term value) {
  return std::make_shared<const TTermNode>(TTermNode{TLit{std::move(value)}});
}
TTerm t_slot(int index) { return std::make_shared<const TTermNode>(TTermNode{TSlot{index}}); }
TTerm t_pair(TTerm car, TTerm cdr) {
  return std::make_shared<const TTermNode>(TTermNode{TPairT{std::move(car), std::move(cdr)}});
}
TTerm t_set(std::vector<TTerm> elems, TTerm rest) {
  return std::make_shared<const TTermNode>(TTermNode{TSetT{std::move(elems), std::move(rest)}});
}

GoalT g_eq(TTerm u, TTerm v) {
  return std::make_shared<const GoalTNode>(GoalTNode{TEq{std::move(u), std::move(v)}});
}
GoalT g_op(OpTag op, std::vector<TTerm> args) {
  return std::make_shared<const GoalTNode>(GoalTNode{TOp{op, std::move(args)}});
}
GoalT g_conj(GoalT a, GoalT b) {
  return std::make_shared<const GoalTNode>(GoalTNode{TConj{std::move(a), std::move(b)}});
}
GoalT g_conj_all(const std::vector<GoalT>& gs) {
  if (gs.empty()) return g_succeed();
  GoalT acc = gs[0];
  for (size_t i = 1; i < gs.size(); i++) acc = g_conj(acc, gs[i]);
  return acc;
}
GoalT g_conde(std::vector<GoalT> clauses) {
  return std::make_shared<const GoalTNode>(GoalTNode{TConde{std::move(clauses)}});
}
GoalT g_fresh(GoalT body) {
  return std::make_shared<const GoalTNode>(GoalTNode{TFresh{std::move(body)}});
}
GoalT g_call(int rel, std::vector<TTerm> args) {
  return std::make_shared<const GoalTNode>(GoalTNode{TCall{rel, std::move(args)}});
}
GoalT g_succeed() {
  static const GoalT g = std::make_shared<const GoalTNode>(GoalTNode{TSucceed{}});
  return g;
}
GoalT g_fail() {
  static const GoalT g = std::make_shared<const GoalTNode>(GoalTNode{TFail{}});
  return g;
}

GoalT d_union_plus(TTerm l, TTerm r, TTerm c) {
  return g_conj(g_op(OpTag::Uniono, {l, r, c}), g_op(OpTag::Disjo, {l, r}));
}

GoalT d_not_union(TTerm l, TTerm r, TTerm c, int fresh_slot) {
  TTerm n = t_slot(fresh_slot);
  GoalT extra = g_conj_all({g_op(OpTag::Ino, {n, c}), g_op(OpTag::NotIno, {n, l}),
                            g_op(OpTag::NotIno, {n, r})});
  GoalT missing = g_conj(g_op(OpTag::NotIno, {n, c}),
                         g_conde({g_op(OpTag::Ino, {n, l}), g_op(OpTag::Ino, {n, r})}));
  return g_fresh(g_conde({extra, missing}));
}

GoalT d_not_disjoint(TTerm l, TTerm r, int fresh_slot) {
  TTerm n = t_slot(fresh_slot);
  return g_fresh(g_conj(g_op(OpTag::Ino, {n, l}), g_op(OpTag::Ino, {n, r})));
}

GoalT d_subseteq(TTerm b, TTerm p) { return g_op(OpTag::Uniono, {b, p, p}); }

GoalT d_subset(TTerm b, TTerm p, int fresh_slot) {
  TTerm n = t_slot(fresh_slot);
  return g_conj(d_subseteq(b, p),
                g_fresh(g_conj(g_op(OpTag::Ino, {n, p}), g_op(OpTag::NotIno, {n, b}))));
}

GoalT d_subtract(TTerm l, TTerm o, TTerm w) {
  return g_conj(g_op(OpTag::NotIno, {o, w}),
                g_conde({g_eq(l, t_set({o}, w)), g_eq(l, w)}));
}

std::vector<Term> make_frame(int slot_count, const std::vector<Term>& args, VarId& next) {
  std::vector<Term> frame = args;
  frame.reserve(static_cast<size_t>(slot_count));
  for (int i = static_cast<int>(args.size()); i < slot_count; i++) {
    frame.push_back(var(next));
    next++;
  }
  return frame;
}

Term instantiate_term(const TTerm& t, const std::vector<Term>& frame) {
  if (const auto* lit = std::get_if<TLit>(&t->data)) return lit->value;
  if (const auto* slot = std::get_if<TSlot>(&t->data))
    return frame[static_cast<size_t>(slot->index)];
  if (const auto* p = std::get_if<TPairT>(&t->data))
    return cons(instantiate_term(p->car, frame), instantiate_term(p->cdr, frame));
  const auto& s = std::get<TSetT>(t->data);
  std::vector<Term> elems;
  elems.reserve(s.elems.size());
  for (const auto& e : s.elems) elems.push_back(instantiate_term(e, frame));
  Term rest = s.rest ? instantiate_term(s.rest, frame) : empty_set();
  return set_cell(std::move(elems), std::move(rest));
}

namespace {

Goal mk(RGoalNode node) { return std::make_shared<const RGoalNode>(std::move(node)); }

}  // namespace

Goal instantiate(const GoalT& g, const std::vector<Term>& frame) {
  if (const auto* eq = std::get_if<TEq>(&g->data)) {
    return mk({REq{instantiate_term(eq->u, frame), instantiate_term(eq->v, frame)}});
  }
  if (const auto* op = std::get_if<TOp>(&g->data)) {
    std::vector<Term> args;
    args.reserve(op->args.size());
    for (const auto& a : op->args) args.push_back(instantiate_term(a, frame));
    return mk({ROp{op->op, std::move(args)}});
  }
  if (const auto* cj = std::get_if<TConj>(&g->data)) {
    return mk({RConj{instantiate(cj->a, frame), instantiate(cj->b, frame)}});
  }
  if (const auto* cd = std::get_if<TConde>(&g->data)) {
    std::vector<Goal> clauses;
    clauses.reserve(cd->clauses.size());
    for (const auto& c : cd->clauses) clauses.push_back(instantiate(c, frame));
    return mk({RConde{std::move(clauses)}});
  }
  if (const auto* fr = std::get_if<TFresh>(&g->data)) {
    return mk({RDelay{instantiate(fr->body, frame)}});
  }
  if (const auto* call = std::get_if<TCall>(&g->data)) {
    std::vector<Term> args;
    args.reserve(call->args.size());
    for (const auto& a : call->args) args.push_back(instantiate_term(a, frame));
    return mk({RCall{call->rel, std::move(args)}});
  }
  if (std::holds_alternative<TSucceed>(g->data)) return mk({RSucceed{}});
  return mk({RFail{}});
}

}  // namespace setkanren
