#pragma once

// Recursive-descent parser for the polynomial grammar
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'
//
// Integer coefficients are reduced mod p. Whitespace is ignored.

#include <cctype>
#include <string>
#include <string_view>

#include "frobmult/errors.hpp"
#include "frobmult/poly.hpp"

namespace frobmult {

namespace detail {

class PolyParser {
public:
  PolyParser(const PolyRing* ring, std::string_view text) : ring_(ring), s_(text) {}

  Poly parse() {
    Poly f = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(ring_);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    Poly t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*'))
      acc *= factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      unsigned long k = integer();
      if (k > 100000)
        fail("exponent too large");
      base = base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  unsigned long integer() {
    skip();
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = (v * 10 + unsigned(s_[pos_] - '0')) % (1ul << 40);
      ++pos_;
    }
    if (start == pos_)
      fail("expected an integer");
    return v;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!eat(')'))
        fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::uint64_t v = 0;
      const std::uint32_t p = ring_->characteristic();
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = (v * 10 + unsigned(s_[pos_++] - '0')) % p;
      (void)start;
      return Poly::constant(ring_, static_cast<long long>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      const auto& names = ring_->names();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
          return Poly::variable(ring_, i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const PolyRing* ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(const PolyRing* ring, std::string_view text) {
  return detail::PolyParser(ring, text).parse();
}

} // namespace frobmult
