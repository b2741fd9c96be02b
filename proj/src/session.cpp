#include "sallykit/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "sallykit/field.hpp"

namespace sallykit {

std::string FieldSpec::to_string() const { return rational ? "q" : "fp:" + std::to_string(prime); }

FieldSpec FieldSpec::parse(std::string_view text) {
  FieldSpec f;
  if (text == "q" || text == "Q") {
    f.rational = true;
    return f;
  }
  std::string_view digits = text;
  if (digits.substr(0, 3) == "fp:") digits.remove_prefix(3);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error("unknown field '" + std::string(text) + "' (expected q or fp:<prime>)");
  }
  if (p < 2 || p >= (1ull << 31) || !PrimeField::is_prime(static_cast<std::uint32_t>(p))) {
    throw Error("field modulus " + std::string(digits) + " is not a prime below 2^31");
  }
  f.prime = static_cast<std::uint32_t>(p);
  return f;
}

namespace {

constexpr std::string_view kCommands[] = {"hilbert", "reduction", "sally", "fiber", "check", "buchsbaum"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Cursor over one statement; columns are 1-based positions in the source line.
class Scanner {
 public:
  Scanner(std::string_view text, std::size_t line, std::size_t column) : text_(text), line_(line), column_(column) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t column() const { return column_ + pos_; }
  Position position() const { return {line_, column()}; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column()); }

  std::string ident(const char* what = "identifier") {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  /// A run of non-space characters.
  std::string word(const char* what) {
    skip_space();
    if (pos_ >= text_.size()) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && is_ident_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  /// Contents of a parenthesized group starting at the cursor, as a sub-scanner.
  Scanner group() {
    expect('(');
    std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) break;
      ++pos_;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses", line_, column_ + start - 1);
    Scanner inner(text_.substr(start, pos_ - start), line_, column_ + start);
    ++pos_;
    return inner;
  }

  /// Splits at top-level occurrences of `sep`.
  std::vector<Scanner> split(char sep) const {
    std::vector<Scanner> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == sep && depth == 0) {
        parts.emplace_back(text_.substr(start, i - start), line_, column_ + start);
        start = i + 1;
      }
    }
    parts.emplace_back(text_.substr(start), line_, column_ + start);
    return parts;
  }

  std::string_view rest() const { return text_.substr(pos_); }
  std::string_view text() const { return text_; }

  void expect_end(const char* after) {
    if (!at_end()) fail(std::string("unexpected text after ") + after);
  }

  std::uint64_t integer(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    std::uint64_t v = 0;
    auto ec = std::from_chars(text_.data() + start, text_.data() + pos_, v).ec;
    if (ec != std::errc()) throw ParseError(std::string(what) + " out of range", line_, column_ + start);
    return v;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

class SessionParser {
 public:
  Session run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
      std::size_t end = text.find('\n', begin);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(begin, end - begin);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      for (auto& stmt : Scanner(line, line_no, 1).split(';')) {
        if (!stmt.at_end()) statement(stmt);
      }
      begin = end + 1;
    }
    return std::move(s_);
  }

 private:
  void statement(Scanner& sc) {
    sc.skip_space();
    const Position start = sc.position();
    const std::string head = sc.ident("a statement");
    if (sc.peek() == '=') {
      sc.expect('=');
      assignment(head, start, sc);
      return;
    }
    if (head == "field") {
      if (s_.field) throw ParseError("field declared twice", start.line, start.column);
      sc.skip_space();
      const auto spec_pos = sc.position();
      const auto spec = sc.word("field (q or fp:<prime>)");
      try {
        s_.field = FieldSpec::parse(spec);
      } catch (const Error& e) {
        throw ParseError(e.what(), spec_pos.line, spec_pos.column);
      }
      sc.expect_end("field");
    } else if (head == "ring") {
      ring(start, sc);
    } else if (head == "seed") {
      s_.seed = sc.integer("seed");
      sc.expect_end("seed");
    } else if (head == "max_power") {
      s_.max_power = small(sc, "max_power");
    } else if (head == "reduction_cap") {
      s_.reduction_cap = small(sc, "reduction_cap");
    } else if (head == "trials") {
      s_.trials = small(sc, "trials");
      if (*s_.trials < 3) throw ParseError("trials must be at least 3", start.line, start.column);
    } else if (std::find(std::begin(kCommands), std::end(kCommands), head) != std::end(kCommands)) {
      command(head, start, sc);
    } else {
      throw ParseError("unknown statement '" + head + "'", start.line, start.column);
    }
  }

  static unsigned small(Scanner& sc, const char* what) {
    auto v = sc.integer(what);
    if (v == 0 || v > 10000) sc.fail(std::string(what) + " must be between 1 and 10000");
    sc.expect_end(what);
    return static_cast<unsigned>(v);
  }

  void ring(const Position& start, Scanner& sc) {
    if (!s_.variables.empty()) throw ParseError("ring declared twice", start.line, start.column);
    s_.ring_name = sc.ident("ring name");
    sc.expect('=');
    if (!sc.accept_word("poly")) sc.fail("expected poly(...)");
    auto inner = sc.group();
    std::set<std::string> seen;
    for (auto& v : inner.split(',')) {
      v.skip_space();
      const auto pos = v.position();
      auto name = v.ident("variable name");
      v.expect_end("variable name");
      if (!seen.insert(name).second) throw ParseError("duplicate variable '" + name + "'", pos.line, pos.column);
      s_.variables.push_back(name);
    }
    if (s_.variables.size() > 16) throw ParseError("at most 16 variables are supported", start.line, start.column);
    sc.expect_end("ring declaration");
  }

  void require_ring(const Position& p) const {
    if (s_.variables.empty()) throw ParseError("declare the ring before using it", p.line, p.column);
  }

  std::vector<RawPolynomial> polynomial_list(Scanner& sc) {
    auto inner = sc.group();
    std::vector<RawPolynomial> out;
    if (inner.at_end()) return out;
    for (auto& part : inner.split(',')) {
      part.skip_space();
      const auto col = part.column();
      out.push_back(parse_polynomial(part.rest(), s_.variables, part.line(), col));
    }
    return out;
  }

  void assignment(const std::string& name, const Position& start, Scanner& sc) {
    require_ring(start);
    sc.skip_space();
    const auto expr_pos = sc.position();
    const std::string text(sc.rest());
    if (name == "a") {
      if (s_.defining.kind != DefiningIdeal::Kind::kZero || defining_set_) {
        throw ParseError("defining ideal declared twice", start.line, start.column);
      }
      if (!s_.ideals.empty() || !s_.commands.empty()) {
        throw ParseError("the defining ideal must precede named ideals and commands", start.line, start.column);
      }
      defining_set_ = true;
      auto& d = s_.defining;
      d.where = start;
      d.text = trim(text);
      if (sc.peek() == '(') {
        d.kind = DefiningIdeal::Kind::kInline;
        d.parts.push_back(polynomial_list(sc));
      } else if (sc.accept_word("intersect")) {
        d.kind = DefiningIdeal::Kind::kIntersection;
        auto inner = sc.group();
        for (auto& part : inner.split(',')) d.parts.push_back(polynomial_list(part));
        if (d.parts.size() < 2) throw ParseError("intersect needs at least two ideals", expr_pos.line, expr_pos.column);
      } else if (sc.accept_word("monomial_curve")) {
        d.kind = DefiningIdeal::Kind::kMonomialCurve;
        auto inner = sc.group();
        for (auto& pair : inner.split(';')) {
          const auto p = pair.integer("exponent");
          pair.expect(',');
          const auto q = pair.integer("exponent");
          pair.expect_end("exponent pair");
          d.curve.emplace_back(static_cast<unsigned>(p), static_cast<unsigned>(q));
        }
        if (d.curve.size() != s_.variables.size()) {
          throw ParseError("monomial_curve needs one exponent pair per variable", expr_pos.line, expr_pos.column);
        }
      } else {
        sc.fail("expected (...), intersect(...) or monomial_curve(...)");
      }
      sc.expect_end("defining ideal");
      return;
    }
    if (name == "m") throw ParseError("'m' is the predefined maximal ideal", start.line, start.column);
    if (defined(name)) throw ParseError("ideal '" + name + "' defined twice", start.line, start.column);

    NamedIdeal ni;
    ni.name = name;
    ni.expr.where = expr_pos;
    ni.expr.text = trim(text);
    if (sc.peek() == '(') {
      ni.expr.kind = IdealExpr::Kind::kInline;
      ni.expr.gens = polynomial_list(sc);
      if (ni.expr.gens.empty()) throw ParseError("empty ideal", expr_pos.line, expr_pos.column);
    } else if (sc.accept_word("colon")) {
      ni.expr.kind = IdealExpr::Kind::kColon;
      auto inner = sc.group();
      auto parts = inner.split(',');
      if (parts.size() != 2) throw ParseError("colon takes two ideals", expr_pos.line, expr_pos.column);
      for (auto& p : parts) ni.expr.operands.push_back(reference(p));
    } else if (sc.accept_word("generic_reduction")) {
      ni.expr.kind = IdealExpr::Kind::kGenericReduction;
      auto inner = sc.group();
      ni.expr.operands.push_back(reference(inner));
    } else {
      ni.expr.kind = IdealExpr::Kind::kAlias;
      ni.expr.operands.push_back(reference(sc));
    }
    sc.expect_end("ideal expression");
    s_.ideals.push_back(std::move(ni));
  }

  bool defined(const std::string& name) const {
    return name == "m" || std::any_of(s_.ideals.begin(), s_.ideals.end(), [&](const auto& i) { return i.name == name; });
  }

  std::string reference(Scanner& sc) {
    sc.skip_space();
    const auto p = sc.position();
    auto name = sc.ident("ideal name");
    if (!defined(name)) throw ParseError("unknown ideal '" + name + "'", p.line, p.column);
    return name;
  }

  void command(const std::string& head, const Position& start, Scanner& sc) {
    require_ring(start);
    Command c;
    c.name = head;
    c.where = start;
    c.text = head + (sc.at_end() ? "" : " " + trim(std::string(sc.rest())));
    auto ideals = [&](std::size_t lo, std::size_t hi) {
      while (!sc.at_end()) {
        if (c.args.size() - (head == "check" ? 1 : 0) == hi) sc.fail("too many arguments to " + head);
        c.args.push_back(reference(sc));
      }
      if (c.args.size() - (head == "check" ? 1 : 0) < lo) sc.fail("missing argument to " + head);
    };
    if (head == "hilbert" || head == "fiber") {
      ideals(1, 1);
    } else if (head == "reduction" || head == "sally") {
      ideals(1, 2);
    } else if (head == "buchsbaum") {
      if (!sc.at_end()) {
        auto t = sc.integer("trial count");
        if (t < 3 || t > 1000) sc.fail("trial count must be between 3 and 1000");
        c.args.push_back(std::to_string(t));
      }
      sc.expect_end("buchsbaum");
    } else {
      sc.skip_space();
      const auto q = sc.position();
      auto name = sc.ident("checker name");
      const auto* sig = find_checker(name);
      if (!sig) throw ParseError("unknown check '" + name + "'", q.line, q.column);
      c.args.push_back(name);
      if (sig->takes_I) {
        ideals(1, 2);
      } else {
        ideals(0, 1);
      }
    }
    s_.commands.push_back(std::move(c));
  }

  static std::string trim(std::string s) {
    auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
    while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
  }

  Session s_;
  bool defining_set_ = false;
};

}  // namespace

const std::vector<CheckerSignature>& checker_signatures() {
  static const std::vector<CheckerSignature> sigs = {
      {"northcott", true, false},         {"elias_valla", false, false},          {"sally_bound", true, false},
      {"fiber_bound", true, false},       {"fiber_bound_buchsbaum", true, true}, {"ev2", true, false},
      {"corollary_27", false, true},      {"yamagishi", true, true},              {"dimension_dichotomy", true, true},
      {"goto_nishida", false, false},
  };
  return sigs;
}

const CheckerSignature* find_checker(std::string_view name) {
  for (const auto& s : checker_signatures())
    if (s.name == name) return &s;
  return nullptr;
}

Session parse_session(std::string_view text) { return SessionParser().run(text); }

}  // namespace sallykit
