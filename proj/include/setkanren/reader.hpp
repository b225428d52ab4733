#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace setkanren {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ReadError : public std::runtime_error {
 public:
  ReadError(SourcePos p, const std::string& msg) : std::runtime_error(msg), pos(p) {}
  SourcePos pos;
};

// One parsed datum. Code is data here: special forms arrive as plain lists
// whose head is a symbol (quote, quasiquote, unquote, defrel, run, ...).
struct Datum {
  enum class Kind { Sym, Num, Bool, List, Set };
  Kind kind = Kind::Sym;
  std::string text;          // Sym
  std::int64_t value = 0;    // Num
  bool flag = false;         // Bool
  std::vector<Datum> items;  // List elements / Set elements
  // Dotted-list tail, or the rest term of a set literal. Null when absent;
  // a List without a tail is proper.
  std::shared_ptr<Datum> tail;
  SourcePos pos;
};

Datum d_sym(std::string name, SourcePos pos = {});
Datum d_num(std::int64_t v, SourcePos pos = {});
Datum d_list(std::vector<Datum> items, SourcePos pos = {});

// Parses every datum in src. Throws ReadError with the offending position.
std::vector<Datum> read_all(std::string_view src);

// Count of unclosed ( and [ after scanning src, ignoring comments. Negative
// means an extra closer; the REPL uses <= 0 to decide a form is complete.
int paren_depth(std::string_view src);

}  // namespace setkanren
