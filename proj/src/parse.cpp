#include "sallykit/parse.hpp"

#include <cctype>

namespace sallykit {
namespace {

using Raw = std::map<std::vector<unsigned>, mpq_class>;

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars, std::size_t line, std::size_t column)
      : text_(text), vars_(vars), line_(line), column_(column) {}

  Raw parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    Raw r = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return r;
  }

 private:
  Raw expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Raw acc = term();
    if (negate) acc = scale(acc, -1);
    for (;;) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Raw t = term();
      acc = add(acc, c == '-' ? scale(t, -1) : t);
    }
    return acc;
  }

  Raw term() {
    Raw acc = factor();
    for (;;) {
      skip_space();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, factor());
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        acc = mul(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  Raw factor() {
    Raw base = primary();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
      unsigned long e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
        if (e > 0xFFFF) fail("exponent too large");
      }
      Raw r = constant(1);
      for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  Raw primary() {
    skip_space();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Raw r = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      mpz_class num(std::string(text_.substr(start, pos_ - start)));
      mpq_class value(num);
      if (peek() == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (ds == pos_) fail("expected denominator");
        mpz_class den(std::string(text_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
        value = mpq_class(num, den);
        value.canonicalize();
      }
      Raw r;
      if (value != 0) r[std::vector<unsigned>(vars_.size(), 0)] = value;
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
          std::vector<unsigned> e(vars_.size(), 0);
          e[i] = 1;
          Raw r;
          r[e] = 1;
          return r;
        }
      }
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    if (at_end()) fail("unexpected end of polynomial");
    fail(std::string("unexpected character '") + c + "'");
  }

  Raw constant(long v) const {
    Raw r;
    if (v != 0) r[std::vector<unsigned>(vars_.size(), 0)] = v;
    return r;
  }

  static Raw scale(const Raw& a, long c) {
    Raw r;
    for (const auto& [m, v] : a) r[m] = v * c;
    return r;
  }

  static Raw add(const Raw& a, const Raw& b) {
    Raw r = a;
    for (const auto& [m, v] : b) {
      mpq_class s = r[m] + v;
      if (s == 0) {
        r.erase(m);
      } else {
        r[m] = s;
      }
    }
    return r;
  }

  Raw mul(const Raw& a, const Raw& b) const {
    Raw r;
    for (const auto& [ma, va] : a) {
      for (const auto& [mb, vb] : b) {
        std::vector<unsigned> m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        mpq_class s = r[m] + va * vb;
        if (s == 0) {
          r.erase(m);
        } else {
          r[m] = s;
        }
      }
    }
    return r;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_ + pos_); }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace

RawPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables, std::size_t line,
                               std::size_t column) {
  return RawPolynomial{PolyParser(text, variables, line, column).parse()};
}

}  // namespace sallykit
