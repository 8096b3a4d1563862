#include "exthall/expr.hpp"

#include "exthall/errors.hpp"

namespace exthall {

namespace {

struct Parser {
  HallAlgebra& alg;
  MulType type;
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  HallElement parse_factor() {
    skip_ws();
    if (eat('(')) {
      HallElement e = parse_expr();
      if (!eat(')')) throw ParseError("expected ')' in expression: " + s);
      return e;
    }
    if (pos + 1 < s.size() && s[pos] == 'u' && s[pos + 1] == '[') {
      pos += 2;
      int depth = 1;
      std::string name;
      while (pos < s.size() && depth > 0) {
        if (s[pos] == '[') ++depth;
        if (s[pos] == ']') {
          --depth;
          if (depth == 0) break;
        }
        name += s[pos++];
      }
      if (pos >= s.size() || s[pos] != ']') throw ParseError("expected ']' in expression: " + s);
      ++pos;
      return alg.basis(alg.model().parse_object(name));
    }
    throw ParseError("expected 'u[...]' or '(' at position " + std::to_string(pos) + " in: " + s);
  }

  HallElement parse_expr() {
    HallElement e = parse_factor();
    while (true) {
      skip_ws();
      if (!eat('*')) break;
      e = alg.mul(e, parse_factor(), type);
    }
    return e;
  }
};

}  // namespace

HallElement eval_expr(HallAlgebra& alg, MulType type, const std::string& expr) {
  Parser p{alg, type, expr};
  HallElement e = p.parse_expr();
  p.skip_ws();
  if (p.pos != expr.size()) throw ParseError("trailing input in expression: " + expr);
  return e;
}

}  // namespace exthall
