#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sallykit/report.hpp"
#include "sallykit/session.hpp"

namespace fs = std::filesystem;
using namespace sallykit;

namespace {

/// A path, or the name of a file in the fixture directory (with or without `.session`).
fs::path resolve_session(const std::string& arg) {
  fs::path p(arg);
  if (fs::exists(p)) return p;
  fs::path dir(SALLYKIT_FIXTURE_DIR);
  for (auto candidate : {dir / arg, dir / (arg + ".session")}) {
    if (fs::exists(candidate)) return candidate;
  }
  return p;
}

int list_fixtures() {
  fs::path dir(SALLYKIT_FIXTURE_DIR);
  if (!fs::is_directory(dir)) {
    std::cerr << "fixture directory " << dir << " not found\n";
    return kExitError;
  }
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".session") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  for (const auto& n : names) std::cout << n << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert coefficients, Sally modules and fiber multiplicities of m-primary ideals"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a session file and print the report");
  std::string session_arg;
  std::uint64_t seed = 0;
  std::string modulus = "fp:32003";
  unsigned max_power = 30;
  unsigned reduction_cap = 30;
  unsigned trials = 5;
  std::string format = "text";
  bool timings = false;
  run->add_option("session", session_arg, "Session file, or the name of a shipped fixture")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Seed for reductions and parameter samples")->capture_default_str();
  auto* modulus_opt = run->add_option("--modulus", modulus, "Coefficient field: a prime, fp:<prime>, or q")
                          ->capture_default_str();
  auto* power_opt =
      run->add_option("--max-power", max_power, "Largest power used when fitting polynomials")
          ->check(CLI::Range(1u, 10000u))
          ->capture_default_str();
  auto* cap_opt = run->add_option("--reduction-cap", reduction_cap, "Largest reduction number searched")
                      ->check(CLI::Range(1u, 10000u))
                      ->capture_default_str();
  auto* trials_opt = run->add_option("--trials", trials, "Parameter ideals sampled for the Buchsbaum invariant")
                         ->check(CLI::Range(3u, 1000u))
                         ->capture_default_str();
  run->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  run->add_flag("--timings", timings, "Include wall-clock times (makes reports non-reproducible)");

  app.add_subcommand("list", "List the shipped fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (app.got_subcommand("list")) return list_fixtures();

  RunOptions options;
  options.seed = seed;
  options.max_power = max_power;
  options.reduction_cap = reduction_cap;
  options.trials = trials;
  options.timings = timings;
  try {
    options.field = FieldSpec::parse(modulus);
  } catch (const Error& e) {
    std::cerr << "--modulus: " << e.what() << "\n";
    return kExitError;
  }

  const fs::path path = resolve_session(session_arg);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read session file " << path << "\n";
    return kExitError;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  RunOutcome outcome;
  try {
    const Session session = parse_session(buf.str());
    // Session directives apply unless the flag was given explicitly.
    if (session.field && modulus_opt->count() == 0) options.field = *session.field;
    if (session.seed && seed_opt->count() == 0) options.seed = *session.seed;
    if (session.max_power && power_opt->count() == 0) options.max_power = *session.max_power;
    if (session.reduction_cap && cap_opt->count() == 0) options.reduction_cap = *session.reduction_cap;
    if (session.trials && trials_opt->count() == 0) options.trials = *session.trials;
    outcome = run_session(session, options);
  } catch (const ParseError& e) {
    outcome = parse_failure(e, options);
    std::cerr << path.string() << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
  }

  std::cout << (format == "json" ? render_json(outcome.report) : render_text(outcome.report));
  if (outcome.exit_code == kExitError && outcome.report.contains("error") &&
      outcome.report["error"]["kind"] != "parse") {
    std::cerr << "error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  }
  return outcome.exit_code;
}
