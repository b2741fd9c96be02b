#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sallykit/report.hpp"
#include "sallykit/session.hpp"

using namespace sallykit;

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(SALLYKIT_FIXTURE_DIR) + "/" + name + ".session");
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void expect_error_at(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment) {
  try {
    parse_session(text);
    FAIL("expected a parse error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
    CHECK(e.message().find(fragment) != std::string::npos);
  }
}

const Json* find_command(const Json& report, const std::string& text) {
  for (const auto& c : report["commands"])
    if (c["text"] == text) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("field specifications") {
  CHECK(FieldSpec::parse("q").rational);
  CHECK(FieldSpec::parse("fp:101").prime == 101);
  CHECK(FieldSpec::parse("7").prime == 7);
  CHECK(FieldSpec::parse("fp:32003").to_string() == "fp:32003");
  CHECK_THROWS_AS(FieldSpec::parse("fp:100"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("fp:"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("gf4"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("fp:4294967311"), Error);
}

TEST_CASE("parse the shipped fixtures") {
  auto s = parse_session(fixture_text("example_2_2"));
  CHECK(s.variables == std::vector<std::string>{"X", "Y", "Z", "W"});
  CHECK(s.defining.kind == DefiningIdeal::Kind::kIntersection);
  CHECK(s.defining.parts.size() == 2);
  REQUIRE(s.ideals.size() == 1);
  CHECK(s.ideals[0].name == "J");
  CHECK(s.ideals[0].expr.gens.size() == 2);
  CHECK(s.field->prime == 32003);

  auto m = parse_session(fixture_text("macaulay"));
  CHECK(m.defining.kind == DefiningIdeal::Kind::kMonomialCurve);
  CHECK(m.defining.curve == std::vector<std::pair<unsigned, unsigned>>{{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  CHECK(m.ideals[0].expr.kind == IdealExpr::Kind::kGenericReduction);

  auto e = parse_session(fixture_text("example_3_6"));
  CHECK(e.variables.size() == 8);
  CHECK(e.ideals[1].expr.kind == IdealExpr::Kind::kColon);
  CHECK(e.ideals[1].expr.operands == std::vector<std::string>{"J", "m"});
  for (const auto& name : {"regular", "embedded_point"}) CHECK_NOTHROW(parse_session(fixture_text(name)));
}

TEST_CASE("session grammar") {
  auto s = parse_session(
      "# comment\n"
      "ring R = poly(x, y)  # trailing comment\n"
      "seed 9; trials 4; max_power 12; reduction_cap 7\n"
      "I = (x^2, x y, y^2); K = I\n"
      "hilbert I; reduction K; sally I; check elias_valla; check yamagishi I m; buchsbaum 6\n");
  CHECK_FALSE(s.field.has_value());
  CHECK(*s.seed == 9);
  CHECK(*s.trials == 4);
  CHECK(*s.max_power == 12);
  CHECK(*s.reduction_cap == 7);
  CHECK(s.defining.kind == DefiningIdeal::Kind::kZero);
  CHECK(s.ideals[1].expr.kind == IdealExpr::Kind::kAlias);
  REQUIRE(s.commands.size() == 6);
  CHECK(s.commands[3].args == std::vector<std::string>{"elias_valla"});
  CHECK(s.commands[4].args == std::vector<std::string>{"yamagishi", "I", "m"});
  CHECK(s.commands[5].args == std::vector<std::string>{"6"});
  CHECK(s.commands[2].where.line == 5);
  CHECK(s.commands[2].where.column == 25);
}

TEST_CASE("positioned parse errors") {
  expect_error_at("ring S = poly(x, y)\nI = (x^2, z)\n", 2, 11, "unknown variable 'z'");
  expect_error_at("ring S = poly(x, y)\nhilbert K\n", 2, 9, "unknown ideal 'K'");
  expect_error_at("I = (x)\n", 1, 1, "declare the ring");
  expect_error_at("field gf:4\n", 1, 7, "unknown field");
  expect_error_at("ring S = poly(x, x)\n", 1, 18, "duplicate variable");
  expect_error_at("ring S = poly(x, y)\n  frobnicate m\n", 2, 3, "unknown statement");
  expect_error_at("ring S = poly(x, y)\ncheck nope m\n", 2, 7, "unknown check 'nope'");
  expect_error_at("ring S = poly(x, y)\nhilbert m m\n", 2, 11, "too many arguments");
  expect_error_at("ring S = poly(x, y)\nsally\n", 2, 6, "missing argument");
  expect_error_at("ring S = poly(x, y)\nbuchsbaum 2\n", 2, 12, "between 3 and 1000");
  expect_error_at("ring S = poly(x, y)\nI = (x^2 + , y)\n", 2, 12, "unexpected");
  expect_error_at("ring S = poly(x, y)\nI = (x^2, y\n", 2, 5, "unbalanced");
  expect_error_at("ring S = poly(x, y)\nm = (x)\n", 2, 1, "predefined");
  expect_error_at("ring S = poly(x, y)\nI = (x)\nI = (y)\n", 3, 1, "defined twice");
  expect_error_at("ring S = poly(x, y)\nI = (x)\na = (x^2)\n", 3, 1, "must precede");
  expect_error_at("ring S = poly(x, y, z)\na = monomial_curve(2,0; 1,1)\n", 2, 5, "one exponent pair per variable");
  expect_error_at("ring S = poly(x, y)\nI = colon(m)\n", 2, 5, "two ideals");
}

TEST_CASE("empty command list gives a metadata-only report") {
  RunOptions o;
  auto r = run_session(parse_session(""), o);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["metadata"]["seed"] == "0");
  CHECK(r.report["metadata"]["field"] == "fp:32003");
  CHECK(r.report["ring"].is_null());
  CHECK(r.report["commands"].empty());
  CHECK(r.report["status"] == "ok");
}

TEST_CASE("Macaulay fixture report") {
  RunOptions o;
  o.seed = 7;
  auto out = run_session(parse_session(fixture_text("macaulay")), o);
  CHECK(out.exit_code == kExitOk);
  const auto& rep = out.report;
  const auto* h = find_command(rep, "hilbert m");
  REQUIRE(h);
  CHECK((*h)["e"][0] == "4");
  CHECK((*h)["e"][1] == "3");
  const auto* red = find_command(rep, "reduction m");
  REQUIRE(red);
  CHECK((*red)["r"] == "2");
  const auto* s = find_command(rep, "sally m J");
  REQUIRE(s);
  CHECK((*s)["dim"] == "2");
  CHECK((*s)["multiplicity"] == "1");

  const auto text = render_text(rep);
  CHECK(text.find("check elias_valla J\n  4 ≤ 4 (equality)  holds") != std::string::npos);

  // byte-identical reruns
  auto again = run_session(parse_session(fixture_text("macaulay")), o);
  CHECK(render_json(out.report) == render_json(again.report));
}

TEST_CASE("integers are serialized as decimal strings") {
  RunOptions o;
  auto out = run_session(parse_session("ring S = poly(x, y)\nhilbert m\n"), o);
  const auto& c = out.report["commands"][0];
  for (const auto& v : c["e"]) CHECK(v.is_string());
  CHECK(c["postulation_bound"].is_string());
  CHECK(render_json(out.report).find("\"e\": [\n        \"1\"") != std::string::npos);
}

TEST_CASE("engine errors are reported with the failing command") {
  RunOptions o;
  auto out = run_session(parse_session("ring S = poly(x, y)\nI = (x)\nhilbert m\nhilbert I\nhilbert m\n"), o);
  CHECK(out.exit_code == kExitError);
  CHECK(out.report["status"] == "error");
  CHECK(out.report["commands"].size() == 1);
  CHECK(out.report["error"]["kind"] == "domain");
  CHECK(out.report["error"]["line"] == "4");
  CHECK(out.report["error"]["message"].get<std::string>().find("m-primary") != std::string::npos);

  auto parse = parse_failure(ParseError("bad", 3, 4), o);
  CHECK(parse.exit_code == kExitError);
  CHECK(parse.report["error"]["column"] == "4");
  CHECK(render_text(parse.report).find("line 3, column 4: bad") != std::string::npos);
}

TEST_CASE("a given J that is not a reduction is an error") {
  // e(x^3, xy, y^2) = 5 but e(x^3, y^2) = 6
  RunOptions o;
  auto out = run_session(parse_session("ring S = poly(x, y)\nI = (x^3, x*y, y^2)\nJ = (x^3, y^2)\nreduction I J\n"), o);
  CHECK(out.exit_code == kExitError);

  auto ok = run_session(parse_session("ring S = poly(x, y)\ncheck northcott m m\n"), o);
  CHECK(ok.exit_code == kExitOk);
}

TEST_CASE("rational coefficients") {
  RunOptions o;
  o.field = FieldSpec::parse("q");
  auto out = run_session(parse_session("ring S = poly(x, y)\nI = (x^2 - 1/2*y^2, x*y)\nhilbert I\nreduction I\n"), o);
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report["metadata"]["field"] == "q");
  CHECK(out.report["commands"][0]["e"][0] == "4");
}
