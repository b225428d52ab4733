#pragma once

#include "setkanren/term.hpp"

namespace setkanren {

// Rebuilds t with every set spine flattened ({a | {b | r}} -> {a b | r}) and
// syntactically duplicate elements dropped, first occurrence kept. Element
// order is otherwise preserved. Assumes t is fully walked; tolerates non-set
// spine tails by leaving them in place.
Term norm_sets(const Term& t);

// Rebuilds t with every set flattened, its elements sorted by term_cmp and
// deduplicated. Meaningful once variables have been replaced by reified
// names (or the term is ground), making the order stable under display.
Term sort_sets(const Term& t);

}  // namespace setkanren
