#include "setkanren/reader.hpp"

#include <cctype>
#include <charconv>

namespace setkanren {

Datum d_sym(std::string name, SourcePos pos) {
  Datum d;
  d.kind = Datum::Kind::Sym;
  d.text = std::move(name);
  d.pos = pos;
  return d;
}

Datum d_num(std::int64_t v, SourcePos pos) {
  Datum d;
  d.kind = Datum::Kind::Num;
  d.value = v;
  d.pos = pos;
  return d;
}

Datum d_list(std::vector<Datum> items, SourcePos pos) {
  Datum d;
  d.kind = Datum::Kind::List;
  d.items = std::move(items);
  d.pos = pos;
  return d;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  SourcePos pos;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  char take() {
    char c = s[i++];
    if (c == '\n') {
      pos.line++;
      pos.col = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // Continuation bytes of a UTF-8 sequence do not advance the column.
      pos.col++;
    }
    return c;
  }
};

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '\'' || c == '`' || c == ',' ||
         c == ';' || c == '"' || std::isspace(static_cast<unsigned char>(c));
}

void skip_blank(Cursor& c) {
  while (!c.done()) {
    char ch = c.peek();
    if (std::isspace(static_cast<unsigned char>(ch))) {
      c.take();
    } else if (ch == ';') {
      while (!c.done() && c.peek() != '\n') c.take();
    } else {
      return;
    }
  }
}

bool token_is_number(std::string_view t) {
  std::size_t k = 0;
  if (t[0] == '+' || t[0] == '-') k = 1;
  if (k >= t.size()) return false;
  for (std::size_t j = k; j < t.size(); j++) {
    if (!std::isdigit(static_cast<unsigned char>(t[j]))) return false;
  }
  return true;
}

Datum parse_datum(Cursor& c);

Datum parse_list(Cursor& c, SourcePos open_pos, char closer) {
  Datum d;
  d.kind = Datum::Kind::List;
  d.pos = open_pos;
  bool dotted = false;
  for (;;) {
    skip_blank(c);
    if (c.done()) throw ReadError(open_pos, "unterminated list");
    char ch = c.peek();
    if (ch == ')' || ch == ']') {
      if (ch != closer) throw ReadError(c.pos, "mismatched bracket");
      c.take();
      return d;
    }
    if (dotted) throw ReadError(c.pos, "expected ) after dotted tail");
    // A lone "." introduces the tail of an improper list.
    if (ch == '.' && (c.i + 1 >= c.s.size() || is_delimiter(c.s[c.i + 1]))) {
      if (d.items.empty()) throw ReadError(c.pos, "dot with no preceding element");
      c.take();
      skip_blank(c);
      if (c.done()) throw ReadError(open_pos, "unterminated list");
      d.tail = std::make_shared<Datum>(parse_datum(c));
      dotted = true;
      continue;
    }
    d.items.push_back(parse_datum(c));
  }
}

Datum parse_set(Cursor& c, SourcePos open_pos) {
  // #(set), #(set (e ...)) or #(set (e ...) rest), read as a vector literal
  // and checked for that shape.
  std::vector<Datum> parts;
  for (;;) {
    skip_blank(c);
    if (c.done()) throw ReadError(open_pos, "unterminated set literal");
    if (c.peek() == ')') {
      c.take();
      break;
    }
    parts.push_back(parse_datum(c));
  }
  if (parts.empty() || parts[0].kind != Datum::Kind::Sym || parts[0].text != "set") {
    throw ReadError(open_pos, "malformed set literal: expected #(set ...)");
  }
  Datum d;
  d.kind = Datum::Kind::Set;
  d.pos = open_pos;
  if (parts.size() >= 2) {
    if (parts[1].kind != Datum::Kind::List || parts[1].tail) {
      throw ReadError(parts[1].pos, "malformed set literal: elements must be a list");
    }
    d.items = parts[1].items;
  }
  if (parts.size() == 3) d.tail = std::make_shared<Datum>(parts[2]);
  if (parts.size() > 3) throw ReadError(parts[3].pos, "malformed set literal: too many parts");
  return d;
}

Datum wrap(const char* head, Cursor& c, SourcePos pos) {
  skip_blank(c);
  if (c.done()) throw ReadError(pos, std::string("expected a datum after ") + head);
  std::vector<Datum> items;
  items.push_back(d_sym(head, pos));
  items.push_back(parse_datum(c));
  return d_list(std::move(items), pos);
}

Datum parse_datum(Cursor& c) {
  skip_blank(c);
  if (c.done()) throw ReadError(c.pos, "unexpected end of input");
  SourcePos pos = c.pos;
  char ch = c.peek();
  if (ch == '(' || ch == '[') {
    c.take();
    return parse_list(c, pos, ch == '(' ? ')' : ']');
  }
  if (ch == ')' || ch == ']') throw ReadError(pos, "unexpected closer");
  if (ch == '\'') {
    c.take();
    return wrap("quote", c, pos);
  }
  if (ch == '`') {
    c.take();
    return wrap("quasiquote", c, pos);
  }
  if (ch == ',') {
    c.take();
    if (!c.done() && c.peek() == '@') {
      c.take();
      return wrap("unquote-splicing", c, pos);
    }
    return wrap("unquote", c, pos);
  }
  if (ch == '"') throw ReadError(pos, "strings are not part of the language");
  if (ch == '#') {
    c.take();
    if (c.done()) throw ReadError(pos, "lone #");
    char n = c.take();
    if (n == '(') return parse_set(c, pos);
    if ((n == 't' || n == 'f') && (c.done() || is_delimiter(c.peek()))) {
      Datum d;
      d.kind = Datum::Kind::Bool;
      d.flag = n == 't';
      d.pos = pos;
      return d;
    }
    throw ReadError(pos, "unknown # syntax");
  }
  std::size_t start = c.i;
  while (!c.done() && !is_delimiter(c.peek())) c.take();
  std::string_view tok = c.s.substr(start, c.i - start);
  if (tok.empty()) throw ReadError(pos, "unexpected character");
  if (tok == ".") throw ReadError(pos, "unexpected dot");
  if (token_is_number(tok)) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ReadError(pos, "number out of range");
    }
    return d_num(v, pos);
  }
  return d_sym(std::string(tok), pos);
}

}  // namespace

std::vector<Datum> read_all(std::string_view src) {
  Cursor c{src, 0, {}};
  std::vector<Datum> out;
  for (;;) {
    skip_blank(c);
    if (c.done()) return out;
    out.push_back(parse_datum(c));
  }
}

int paren_depth(std::string_view src) {
  int depth = 0;
  bool in_comment = false;
  for (char ch : src) {
    if (in_comment) {
      if (ch == '\n') in_comment = false;
      continue;
    }
    if (ch == ';') {
      in_comment = true;
    } else if (ch == '(' || ch == '[') {
      depth++;
    } else if (ch == ')' || ch == ']') {
      depth--;
    }
  }
  return depth;
}

}  // namespace setkanren
