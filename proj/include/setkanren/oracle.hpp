#pragma once

#include <optional>
#include <vector>

#include "setkanren/term.hpp"

namespace setkanren {

// Brute-force finite-universe semantics. Everything here is deliberately
// independent of the solver: constraints are decided directly from their
// mathematical denotations on ground terms, so tests can confront the
// engine with an answer it had no hand in producing.

struct Universe {
  std::vector<Term> atoms;
  int max_set_size = 0;
  int max_set_depth = 0;
  int max_list_len = 0;
};

// atoms {0, 1, a}, sets up to size 3 and nesting depth 2, lists up to 3.
Universe standard_universe();

// All ground terms within bounds: the atoms, every canonical set whose
// elements are atoms or shallower such sets, and proper lists of atoms
// (nil always included as the empty list).
std::vector<Term> enumerate_terms(const Universe& u);

// Association lists: proper lists of (atom . atom) pairs, length up to
// max_list_len, order significant, duplicate keys allowed.
std::vector<Term> enumerate_alists(const Universe& u);

// Canonical form: set spines flattened, elements sorted and deduplicated,
// recursively through pairs and nested sets. nullopt when the term holds a
// variable or a set spine ends in something other than the empty set.
std::optional<Term> canon(const Term& t);

// Extensional equality of ground terms; false when either side has no
// canonical form.
bool ext_equal(const Term& a, const Term& b);

enum class OracleTag {
  Eq,
  Diseq,
  Seto,
  Symbolo,
  Numbero,
  Listo,
  Ino,
  NotIno,
  Uniono,
  UnionPluso,
  NotUniono,
  Disjo,
  NotDisjo,
  Subseteqo,
  Subseto,
  Subtracto,
  SubAbsento,
  Absento,
  Freeo,
  Lookupo,
};

// Denotation on ground arguments. Ill-typed edges follow the solver's
// short-circuits (e.g. disjo holds when either side is the empty set,
// whatever the other argument is) so differential tests can demand exact
// agreement rather than agreement-up-to-typing.
bool holds(OracleTag tag, const std::vector<Term>& args);

// Ground bindings for the holes (nullopt positions) in args: every
// assignment of universe terms to holes under which the constraint holds,
// in universe enumeration order.
std::vector<std::vector<Term>> solutions(OracleTag tag,
                                         const std::vector<std::optional<Term>>& args,
                                         const std::vector<Term>& universe);

}  // namespace setkanren
