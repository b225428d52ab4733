#pragma once

#include <functional>
#include <stdexcept>
#include <variant>

#include "setkanren/goal.hpp"
#include "setkanren/solve.hpp"

namespace setkanren {

// Raised for runtime misbehavior the search cannot recover from, e.g. a
// relation that keeps expanding without ever reaching a suspension point.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StreamNode;
using Stream = std::shared_ptr<const StreamNode>;
using Thunk = std::function<Stream()>;

struct SNil {};
struct SUnit {
  State st;
};
struct SChoice {
  State st;
  Thunk rest;
};
struct SInc {
  Thunk force;
};

struct StreamNode {
  std::variant<SNil, SUnit, SChoice, SInc> v;
};

Stream s_nil();
Stream s_unit(State st);
Stream s_choice(State st, Thunk rest);
Stream s_inc(Thunk force);
Stream to_stream(const States& sts);

struct RunCtx {
  Ctx solve;
  const std::vector<Relation>* relations = nullptr;
  int call_depth = 0;
  int max_call_depth = 5000;
};

// Interleaving disjunction: a suspension on the left swaps the two sides, so
// no clause starves another.
Stream mplus(Stream a, Thunk f, RunCtx& cx);
Stream bind_stream(Stream s, const Goal& g, RunCtx& cx);
Stream apply_goal(const Goal& g, const State& st, RunCtx& cx);

// Pulls up to n answers (n < 0: all). emit returning false stops the pull.
void take(long n, const Thunk& f, const std::function<bool(const State&)>& emit);

}  // namespace setkanren
