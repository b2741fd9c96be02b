#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sallykit/parse.hpp"

namespace sallykit {

/// `q` or `fp:<prime>`; a bare prime is accepted as well.
struct FieldSpec {
  bool rational = false;
  std::uint32_t prime = 32003;

  std::string to_string() const;
  /// Throws Error on anything that is not `q`, `fp:<p>` or `<p>` with p a prime below 2^31.
  static FieldSpec parse(std::string_view text);
};

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct DefiningIdeal {
  enum class Kind { kZero, kInline, kIntersection, kMonomialCurve };
  Kind kind = Kind::kZero;
  std::vector<std::vector<RawPolynomial>> parts;  // one part for kInline, several for kIntersection
  std::vector<std::pair<unsigned, unsigned>> curve;
  std::string text;
  Position where;
};

struct IdealExpr {
  enum class Kind { kInline, kColon, kGenericReduction, kAlias };
  Kind kind = Kind::kInline;
  std::vector<RawPolynomial> gens;
  std::vector<std::string> operands;  // names referenced by colon / generic_reduction / alias
  std::string text;
  Position where;
};

struct NamedIdeal {
  std::string name;
  IdealExpr expr;
};

struct Command {
  std::string name;               // hilbert, reduction, sally, fiber, check, buchsbaum
  std::vector<std::string> args;  // for `check`, args[0] is the checker name
  std::string text;
  Position where;
};

/// Parsed session file. Every name is resolved and every argument count is
/// validated, so running a Session never fails on syntax.
struct Session {
  std::optional<FieldSpec> field;
  std::string ring_name;
  std::vector<std::string> variables;
  DefiningIdeal defining;
  std::vector<NamedIdeal> ideals;
  std::vector<Command> commands;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> max_power;
  std::optional<unsigned> reduction_cap;
  std::optional<unsigned> trials;
};

/// Checker names with the ideal arguments each takes. The J argument may be
/// omitted, in which case a generic minimal reduction is used.
struct CheckerSignature {
  std::string_view name;
  bool takes_I;  // first argument is I; otherwise the only argument is J (a reduction of 𝔪)
  bool needs_buchsbaum;
};

const std::vector<CheckerSignature>& checker_signatures();
const CheckerSignature* find_checker(std::string_view name);

/// Throws ParseError with the line and column of the first problem.
Session parse_session(std::string_view text);

}  // namespace sallykit
