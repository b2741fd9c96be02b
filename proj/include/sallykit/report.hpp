#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "sallykit/session.hpp"

namespace sallykit {

using Json = nlohmann::ordered_json;

/// Effective settings for one run, after session directives and command-line
/// overrides have been merged.
struct RunOptions {
  FieldSpec field;
  std::uint64_t seed = 0;
  unsigned max_power = 30;
  unsigned reduction_cap = 30;
  unsigned trials = 5;
  bool timings = false;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitError = 2,
};

struct RunOutcome {
  Json report;
  int exit_code = kExitOk;
};

/// Executes the commands in order. Engine errors stop the run and are recorded
/// under "error"; results gathered before the error are kept.
RunOutcome run_session(const Session& session, const RunOptions& options);

/// Report for input that failed to parse.
RunOutcome parse_failure(const ParseError& error, const RunOptions& options);

/// Integers are decimal strings and keys keep insertion order, so equal runs
/// give equal bytes.
std::string render_json(const Json& report);
std::string render_text(const Json& report);

}  // namespace sallykit
