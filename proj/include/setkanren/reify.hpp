#pragma once

#include <string>
#include <vector>

#include "setkanren/state.hpp"

namespace setkanren {

// Builds the printable answer for one solved state: the walked query values
// with fresh vars named _.0, _.1, ... in traversal order, followed by the
// residual constraint groups that mention only answer variables.
Term reify_answer(const State& st, const std::vector<Term>& qvars);

std::string answer_str(const State& st, const std::vector<Term>& qvars);

}  // namespace setkanren
