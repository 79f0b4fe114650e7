#include "dynforge/expr.hpp"

#include <cctype>
#include <utility>

#include "dynforge/config.hpp"
#include "dynforge/errors.hpp"

namespace dynforge {

namespace {

BiPoly int_const(FieldPtr F, long k) {
  Fq acc(*F, 0);
  Fq one(*F, 1);
  for (long i = 0; i < k; ++i) acc = acc + one;
  return BiPoly::from_tpoly(TPoly::constant(acc));
}

BiPoly bipow(const BiPoly& base, long k) {
  BiPoly acc = int_const(base.field(), 1);
  BiPoly sq = base;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) acc = acc * sq;
    if (e > 1) sq = sq * sq;
  }
  return acc;
}

struct Parser {
  const std::string& src;
  FieldPtr F;
  bool allow_z;
  size_t pos = 0;

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool at(char c) {
    skip();
    return pos < src.size() && src[pos] == c;
  }
  bool eat(char c) {
    if (!at(c)) return false;
    ++pos;
    return true;
  }

  // literal reduced mod p on the fly; the raw value is also returned when it
  // fits, for use as an exponent
  std::pair<long, bool> literal(long& reduced) {
    long p = F->p();
    long raw = 0;
    bool fits = true;
    reduced = 0;
    while (pos < src.size() &&
           std::isdigit(static_cast<unsigned char>(src[pos]))) {
      long d = src[pos] - '0';
      reduced = (reduced * 10 + d) % p;
      if (fits && raw <= (options().degree_cap - d) / 10)
        raw = raw * 10 + d;
      else
        fits = false;
      ++pos;
    }
    return {raw, fits};
  }

  long exponent() {
    skip();
    size_t here = pos;
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      throw parse_error("expected a number after '^'", here);
    long reduced = 0;
    auto [raw, fits] = literal(reduced);
    if (!fits)
      throw parse_error("exponent exceeds the degree cap", here);
    return raw;
  }

  BiPoly atom() {
    skip();
    size_t here = pos;
    if (pos >= src.size())
      throw parse_error("unexpected end of expression", here);
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long reduced = 0;
      literal(reduced);
      return int_const(F, reduced);
    }
    if (c == 't') {
      ++pos;
      return BiPoly::from_tpoly(TPoly(F, {0, 1}));
    }
    if (c == 'z') {
      if (!allow_z)
        throw parse_error("z is not allowed in this expression", here);
      ++pos;
      return BiPoly::z(F).dehom();
    }
    if (c == '(') {
      ++pos;
      BiPoly inner = expr();
      if (!eat(')'))
        throw parse_error("expected ')'", pos);
      return inner;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", here);
  }

  BiPoly factor() {
    if (eat('-')) return -factor();
    BiPoly base = atom();
    while (at('^')) {
      size_t caret = pos;
      ++pos;
      long e = exponent();
      if (e > options().degree_cap ||
          (base.deg_z() + base.deg_t()) * e > options().degree_cap)
        throw parse_error("exponent exceeds the degree cap", caret);
      base = bipow(base, e);
    }
    return base;
  }

  BiPoly term() {
    BiPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  BiPoly expr() {
    BiPoly acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  BiPoly run() {
    BiPoly out = expr();
    skip();
    if (pos != src.size())
      throw parse_error("trailing input after the expression", pos);
    return out;
  }
};

}  // namespace

BiPoly parse_poly(const std::string& src, FieldPtr F) {
  Parser p{src, F, true};
  return p.run();
}

TPoly parse_tpoly(const std::string& src, FieldPtr F) {
  Parser p{src, F, false};
  BiPoly out = p.run();
  return out.coeff(0);
}

RatFamily parse_family(const std::string& src, FieldPtr F) {
  long depth = 0;
  size_t slash = std::string::npos;
  for (size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      if (slash != std::string::npos)
        throw parse_error("only one top-level division is allowed", i);
      slash = i;
    }
  }
  if (slash == std::string::npos) {
    BiPoly a = parse_poly(src, F);
    return RatFamily(a, int_const(F, 1));
  }
  BiPoly a = parse_poly(src.substr(0, slash), F);
  Parser den{src, F, true};
  den.pos = slash + 1;
  BiPoly b = den.expr();
  den.skip();
  if (den.pos != src.size())
    throw parse_error("trailing input after the expression", den.pos);
  return RatFamily(a, b);
}

}  // namespace dynforge
