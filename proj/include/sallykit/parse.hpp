#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sallykit/error.hpp"
#include "sallykit/polynomial.hpp"

namespace sallykit {

/// Syntax or name error with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Field-independent polynomial with rational coefficients, as read from text.
struct RawPolynomial {
  std::map<std::vector<unsigned>, mpq_class> terms;
};

/// Parses `X^2*Z - 3*Y*W` style text. `*` may be omitted between factors and
/// parentheses expand. `line`/`column` locate the text inside a larger file.
RawPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables,
                               std::size_t line = 1, std::size_t column = 1);

template <class F>
Polynomial<F> to_polynomial(const RawPolynomial& raw, const RingPtr<F>& ring) {
  std::vector<Term<F>> terms;
  for (const auto& [exps, c] : raw.terms) {
    terms.push_back({ring->field().from_rational(c), Monomial(exps)});
  }
  return Polynomial<F>(ring, std::move(terms));
}

template <class F>
Polynomial<F> parse_polynomial(std::string_view text, const RingPtr<F>& ring) {
  return to_polynomial(parse_polynomial(text, ring->names()), ring);
}

}  // namespace sallykit
