#include "setkanren/stream.hpp"

namespace setkanren {

Stream s_nil() {
  static const Stream n = std::make_shared<const StreamNode>(StreamNode{SNil{}});
  return n;
}
Stream s_unit(State st) {
  return std::make_shared<const StreamNode>(StreamNode{SUnit{std::move(st)}});
}
Stream s_choice(State st, Thunk rest) {
  return std::make_shared<const StreamNode>(StreamNode{SChoice{std::move(st), std::move(rest)}});
}
Stream s_inc(Thunk force) {
  return std::make_shared<const StreamNode>(StreamNode{SInc{std::move(force)}});
}

Stream to_stream(const States& sts) {
  if (sts.empty()) return s_nil();
  Stream acc = s_unit(sts.back());
  for (size_t i = sts.size() - 1; i-- > 0;) {
    acc = s_choice(sts[i], [acc]() { return acc; });
  }
  return acc;
}

Stream mplus(Stream a, Thunk f, RunCtx& cx) {
  if (std::holds_alternative<SNil>(a->v)) return f();
  if (const auto* inc = std::get_if<SInc>(&a->v)) {
    Thunk g = inc->force;
    return s_inc([f, g, &cx]() { return mplus(f(), g, cx); });
  }
  if (const auto* unit = std::get_if<SUnit>(&a->v)) {
    return s_choice(unit->st, f);
  }
  const auto& ch = std::get<SChoice>(a->v);
  Thunk g = ch.rest;
  return s_choice(ch.st, [f, g, &cx]() { return mplus(f(), g, cx); });
}

Stream bind_stream(Stream s, const Goal& g, RunCtx& cx) {
  if (std::holds_alternative<SNil>(s->v)) return s_nil();
  if (const auto* inc = std::get_if<SInc>(&s->v)) {
    Thunk h = inc->force;
    return s_inc([h, g, &cx]() { return bind_stream(h(), g, cx); });
  }
  if (const auto* unit = std::get_if<SUnit>(&s->v)) {
    return apply_goal(g, unit->st, cx);
  }
  const auto& ch = std::get<SChoice>(s->v);
  Thunk h = ch.rest;
  State st = ch.st;
  return mplus(apply_goal(g, st, cx), [h, g, &cx]() { return bind_stream(h(), g, cx); }, cx);
}

namespace {

struct DepthGuard {
  RunCtx& cx;
  explicit DepthGuard(RunCtx& c) : cx(c) {
    cx.call_depth++;
    if (cx.call_depth > cx.max_call_depth) {
      throw EngineError(
          "relation call expanded past the depth limit without reaching a choice point");
    }
  }
  ~DepthGuard() { cx.call_depth--; }
};

States dispatch_op(OpTag op, const std::vector<Term>& a, const State& st, Ctx& cx) {
  switch (op) {
    case OpTag::Diseq:
      return op_diseq(a[0], a[1], st, cx);
    case OpTag::Seto:
      return op_type(CKind::TypeSet, a[0], st, cx);
    case OpTag::Symbolo:
      return op_type(CKind::TypeSym, a[0], st, cx);
    case OpTag::Numbero:
      return op_type(CKind::TypeNum, a[0], st, cx);
    case OpTag::Listo:
      return op_type(CKind::TypeList, a[0], st, cx);
    case OpTag::Ino:
      return op_ino(a[0], a[1], st, cx);
    case OpTag::NotIno:
      return op_not_member(a[0], a[1], st, cx);
    case OpTag::Disjo:
      return op_disjoint(a[0], a[1], st, cx);
    case OpTag::Uniono:
      return op_union(a[0], a[1], a[2], st, cx);
    case OpTag::SubAbsento:
      return op_sub_absent(a[0], a[1], st, cx);
    case OpTag::Absento:
      return op_absento(a[0], a[1], st, cx);
    case OpTag::Freeo:
      return op_free(a[0], a[1], st, cx);
    case OpTag::Lookupo:
      return op_lookup(a[0], a[1], a[2], st, cx);
  }
  return {};
}

Stream conde_chain(const std::vector<Goal>& clauses, size_t i, const State& st, RunCtx& cx) {
  if (i + 1 == clauses.size()) return apply_goal(clauses[i], st, cx);
  Stream first = apply_goal(clauses[i], st, cx);
  std::vector<Goal> cls = clauses;
  State stc = st;
  return mplus(first, [cls, i, stc, &cx]() { return conde_chain(cls, i + 1, stc, cx); }, cx);
}

}  // namespace

Stream apply_goal(const Goal& g, const State& st, RunCtx& cx) {
  if (const auto* eq = std::get_if<REq>(&g->data)) {
    return to_stream(unify(eq->u, eq->v, st, cx.solve));
  }
  if (const auto* op = std::get_if<ROp>(&g->data)) {
    return to_stream(dispatch_op(op->op, op->args, st, cx.solve));
  }
  if (const auto* cj = std::get_if<RConj>(&g->data)) {
    return bind_stream(apply_goal(cj->a, st, cx), cj->b, cx);
  }
  if (const auto* cd = std::get_if<RConde>(&g->data)) {
    if (cd->clauses.empty()) return s_nil();
    std::vector<Goal> cls = cd->clauses;
    State stc = st;
    return s_inc([cls, stc, &cx]() { return conde_chain(cls, 0, stc, cx); });
  }
  if (const auto* dl = std::get_if<RDelay>(&g->data)) {
    Goal inner = dl->inner;
    State stc = st;
    return s_inc([inner, stc, &cx]() { return apply_goal(inner, stc, cx); });
  }
  if (const auto* call = std::get_if<RCall>(&g->data)) {
    DepthGuard guard(cx);
    const Relation& rel = (*cx.relations)[static_cast<size_t>(call->rel)];
    State st2 = st;
    std::vector<Term> frame = make_frame(rel.slot_count, call->args, st2.next_var);
    Goal body = instantiate(rel.body, frame);
    return apply_goal(body, st2, cx);
  }
  if (std::holds_alternative<RSucceed>(g->data)) return s_unit(st);
  return s_nil();
}

void take(long n, const Thunk& f, const std::function<bool(const State&)>& emit) {
  if (n == 0) return;
  long left = n;
  Stream s = f();
  for (;;) {
    if (std::holds_alternative<SNil>(s->v)) return;
    if (const auto* inc = std::get_if<SInc>(&s->v)) {
      s = inc->force();
      continue;
    }
    if (const auto* unit = std::get_if<SUnit>(&s->v)) {
      emit(unit->st);
      return;
    }
    const auto& ch = std::get<SChoice>(s->v);
    if (!emit(ch.st)) return;
    if (left > 0) {
      left--;
      if (left == 0) return;
    }
    s = ch.rest();
  }
}

}  // namespace setkanren
