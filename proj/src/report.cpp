#include "sallykit/report.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "sallykit/ideal.hpp"
#include "sallykit/theorems.hpp"

namespace sallykit {
namespace {

constexpr const char* kToolName = "sally-kit";
constexpr const char* kVersion = "0.1.0";

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(unsigned v) { return std::to_string(v); }

Json strings(const std::vector<mpz_class>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

Json strings(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(str(x));
  return a;
}

template <class F>
Json generators(const RIdeal<F>& I) {
  Json a = Json::array();
  for (const auto& g : I.gens()) a.push_back(g.to_string());
  return a;
}

Json metadata(const RunOptions& o) {
  Json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["seed"] = str(o.seed);
  m["field"] = o.field.to_string();
  m["max_power"] = str(o.max_power);
  m["reduction_cap"] = str(o.reduction_cap);
  m["trials"] = str(o.trials);
  return m;
}

template <class F>
class Runner {
 public:
  Runner(const Session& s, const RunOptions& o, F field) : session_(s), options_(o), field_(std::move(field)) {
    fit_.max_power = o.max_power;
    check_.fit = fit_;
    check_.reduction_cap = o.reduction_cap;
    check_.seed = o.seed;
  }

  RunOutcome run() {
    RunOutcome out;
    out.report["metadata"] = metadata(options_);
    Json commands = Json::array();
    bool failed = false;
    try {
      build_ring(out.report);
      for (const auto& cmd : session_.commands) {
        current_ = &cmd;
        const auto t0 = std::chrono::steady_clock::now();
        Json entry;
        entry["command"] = cmd.name;
        entry["text"] = cmd.text;
        entry["line"] = str(static_cast<std::uint64_t>(cmd.where.line));
        bool ok = execute(cmd, entry);
        failed = failed || !ok;
        if (options_.timings) {
          std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", dt.count());
          entry["seconds"] = buf;
        }
        commands.push_back(std::move(entry));
      }
      current_ = nullptr;
    } catch (const std::exception& e) {
      out.report["commands"] = std::move(commands);
      Json err;
      err["kind"] = dynamic_cast<const DomainError*>(&e) ? "domain" : "engine";
      err["message"] = e.what();
      if (current_) {
        err["line"] = str(static_cast<std::uint64_t>(current_->where.line));
        err["command"] = current_->text;
      }
      out.report["status"] = "error";
      out.report["error"] = std::move(err);
      out.exit_code = kExitError;
      return out;
    }
    out.report["commands"] = std::move(commands);
    out.report["status"] = failed ? "check failed" : "ok";
    out.exit_code = failed ? kExitCheckFailed : kExitOk;
    return out;
  }

 private:
  Polynomial<F> poly(const RawPolynomial& raw) const { return to_polynomial(raw, S_); }

  IdealGens<F> gens_of(const std::vector<RawPolynomial>& raws) const {
    IdealGens<F> g(S_);
    for (const auto& r : raws) g.push_back(poly(r));
    return g;
  }

  void build_ring(Json& report) {
    if (session_.variables.empty()) {
      report["ring"] = nullptr;
      return;
    }
    S_ = PolyRing<F>::make(field_, session_.variables, MonomialOrder::grevlex());
    const auto& d = session_.defining;
    IdealGens<F> a(S_);
    switch (d.kind) {
      case DefiningIdeal::Kind::kZero:
        break;
      case DefiningIdeal::Kind::kInline:
        a = gens_of(d.parts.front());
        break;
      case DefiningIdeal::Kind::kIntersection: {
        a = gens_of(d.parts.front());
        for (std::size_t i = 1; i < d.parts.size(); ++i) a = ideal_intersection(a, gens_of(d.parts[i]));
        break;
      }
      case DefiningIdeal::Kind::kMonomialCurve:
        a = implicitize_monomial_map<F>(d.curve, S_);
        break;
    }
    R_ = make_ring(S_, a);
    Json ring;
    ring["name"] = session_.ring_name;
    ring["variables"] = session_.variables;
    ring["defining_ideal"] = d.kind == DefiningIdeal::Kind::kZero ? std::string("0") : d.text;
    Json lifted = Json::array();
    for (const auto& g : R_->defining().gens()) lifted.push_back(g.to_string());
    ring["defining_generators"] = std::move(lifted);
    ring["dim"] = str(static_cast<std::uint64_t>(R_->dim()));
    report["ring"] = std::move(ring);

    Json ideals = Json::array();
    names_.emplace("m", R_->maximal_ideal());
    for (const auto& ni : session_.ideals) {
      const auto& e = ni.expr;
      RIdeal<F> I;
      switch (e.kind) {
        case IdealExpr::Kind::kInline:
          I = R_->ideal(gens_of(e.gens));
          break;
        case IdealExpr::Kind::kColon:
          I = R_->colon(lookup(e.operands[0]), lookup(e.operands[1]));
          break;
        case IdealExpr::Kind::kGenericReduction:
          I = reduction_of(e.operands[0]).J;
          break;
        case IdealExpr::Kind::kAlias:
          I = lookup(e.operands[0]);
          break;
      }
      names_.emplace(ni.name, I);
      Json entry;
      entry["name"] = ni.name;
      entry["definition"] = e.text;
      entry["generators"] = generators(I);
      ideals.push_back(std::move(entry));
    }
    report["ideals"] = std::move(ideals);
  }

  const RIdeal<F>& lookup(const std::string& name) const { return names_.at(name); }

  const ReductionReport<F>& reduction_of(const std::string& name) {
    auto it = reductions_.find(name);
    if (it == reductions_.end()) {
      it = reductions_.emplace(name, generic_minimal_reduction(*R_, lookup(name), options_.seed, options_.reduction_cap))
               .first;
    }
    return it->second;
  }

  const BuchsbaumReport<F>& buchsbaum(unsigned trials) {
    if (!buchsbaum_ || buchsbaum_->samples.size() != trials) {
      buchsbaum_ = buchsbaum_invariant(*R_, trials, options_.seed, fit_);
    }
    return *buchsbaum_;
  }

  /// Returns false when an identity or check in the command failed.
  bool execute(const Command& cmd, Json& entry) {
    if (!R_) throw Error("no ring declared");
    if (cmd.name == "hilbert") return hilbert(cmd, entry);
    if (cmd.name == "reduction") return reduction(cmd, entry);
    if (cmd.name == "sally") return sally(cmd, entry);
    if (cmd.name == "fiber") return fiber(cmd, entry);
    if (cmd.name == "buchsbaum") return buchsbaum_command(cmd, entry);
    return check(cmd, entry);
  }

  bool hilbert(const Command& cmd, Json& entry) {
    const auto& I = lookup(cmd.args[0]);
    auto hs = hilbert_samuel(*R_, I, fit_);
    entry["ideal"] = cmd.args[0];
    entry["length"] = str(R_->length(I));
    entry["e"] = strings(hs.coefficients.e);
    entry["postulation_bound"] = str(hs.coefficients.postulation_bound);
    entry["verified_through"] = str(hs.coefficients.verified_through);
    std::vector<std::int64_t> lengths;
    for (const auto& [n, v] : hs.table.values) lengths.push_back(v);
    entry["lengths_from"] = str(hs.table.values.begin()->first);
    entry["lengths"] = strings(lengths);
    return true;
  }

  bool reduction(const Command& cmd, Json& entry) {
    const auto& I = lookup(cmd.args[0]);
    entry["ideal"] = cmd.args[0];
    RIdeal<F> J;
    unsigned r = 0;
    if (cmd.args.size() == 2) {
      J = lookup(cmd.args[1]);
      auto found = reduction_number(*R_, J, I, options_.reduction_cap);
      if (!found) throw DomainError(cmd.args[1] + " is not a reduction of " + cmd.args[0] + " within the cap");
      r = *found;
      entry["reduction"] = cmd.args[1];
    } else {
      const auto& rep = reduction_of(cmd.args[0]);
      J = rep.J;
      r = rep.r;
      entry["reduction"] = "generic";
      entry["attempts"] = str(rep.attempts);
    }
    entry["J"] = generators(J);
    entry["r"] = str(r);
    const auto Ir = R_->power(I, r);
    entry["next_power_equal"] = R_->equal(R_->product(I, Ir), R_->product(J, Ir));
    if (r > 0) entry["previous_power_equal"] = R_->equal(Ir, R_->product(J, R_->power(I, r - 1)));
    const auto e0I = hilbert_samuel(*R_, I, fit_).coefficients.e[0];
    const auto e0J = hilbert_samuel(*R_, J, fit_).coefficients.e[0];
    entry["e0(I)"] = str(e0I);
    entry["e0(J)"] = str(e0J);
    entry["e0_preserved"] = e0I == e0J;
    return e0I == e0J;
  }

  RIdeal<F> second_or_reduction(const Command& cmd, std::size_t index, Json& entry) {
    if (cmd.args.size() > index) {
      entry["J"] = cmd.args[index];
      return lookup(cmd.args[index]);
    }
    entry["J"] = "generic";
    return reduction_of(cmd.args[index - 1]).J;
  }

  bool sally(const Command& cmd, Json& entry) {
    const auto& I = lookup(cmd.args[0]);
    entry["I"] = cmd.args[0];
    const auto J = second_or_reduction(cmd, 1, entry);
    entry["J_generators"] = generators(J);
    auto s = sally_invariants(*R_, I, J, fit_);
    const auto d = R_->dim();
    bool ok = true;
    entry["h_from"] = str(s.h.first());
    entry["h"] = strings(s.h.values);
    entry["trivial"] = s.trivial;
    entry["dim"] = s.dim ? str(static_cast<std::uint64_t>(*s.dim)) : std::string("trivial");
    entry["multiplicity"] = str(s.multiplicity);
    if (!s.s.empty()) {
      entry["s"] = strings(s.s);
      entry["s_from_e"] = strings(s.s_from_e);
    }
    if (s.dim && *s.dim == d) {
      const auto eI = hilbert_samuel(*R_, I, fit_).coefficients.e;
      const auto eJ = hilbert_samuel(*R_, J, fit_).coefficients.e;
      const auto hat = e_hat0(*R_, J, I, fit_);
      const mpz_class rhs = eI[1] - eI[0] - eJ[1] + hat;
      Json id;
      id["e0(I)"] = str(eI[0]);
      id["e1(I)"] = str(eI[1]);
      id["e1(J)"] = str(eJ[1]);
      id["e_hat0(J,I)"] = str(hat);
      id["rhs"] = str(rhs);
      id["holds"] = rhs == s.multiplicity;
      ok = ok && rhs == s.multiplicity;
      entry["multiplicity_identity"] = std::move(id);
    }
    if (R_->equal(I, R_->maximal_ideal())) {
      Json rows = Json::array();
      bool agree = true;
      for (const auto& row : sally_three_term_crosscheck(*R_, J, s.h.first(), s.h.last())) {
        Json r;
        r["n"] = str(row.n);
        r["two_term"] = str(row.two_term);
        r["three_term"] = str(row.three_term);
        r["third"] = str(row.third);
        r["fiber_binomial"] = str(row.fiber_binomial);
        r["agree"] = row.agree;
        agree = agree && row.agree;
        rows.push_back(std::move(r));
      }
      entry["three_term"] = std::move(rows);
      entry["three_term_agree"] = agree;
      ok = ok && agree;
    }
    entry["annihilated_by_m_through"] = str(s.h.last());
    entry["annihilated_by_m"] = annihilated_by_m(*R_, I, J, s.h.last());
    return ok;
  }

  bool fiber(const Command& cmd, Json& entry) {
    const auto& I = lookup(cmd.args[0]);
    auto f = fiber_multiplicity(*R_, I, fit_);
    entry["ideal"] = cmd.args[0];
    entry["mu_from"] = str(f.g.first());
    entry["mu"] = strings(f.g.values);
    entry["f0"] = str(f.f0);
    return true;
  }

  bool buchsbaum_command(const Command& cmd, Json& entry) {
    const unsigned trials = cmd.args.empty() ? options_.trials : static_cast<unsigned>(std::stoul(cmd.args[0]));
    const auto& b = buchsbaum(trials);
    entry["trials"] = str(trials);
    entry["seed"] = str(b.seed);
    Json samples = Json::array();
    for (const auto& s : b.samples) {
      Json j;
      j["J"] = generators(s.J);
      j["length"] = str(s.length);
      j["e0"] = str(s.e0);
      j["difference"] = str(s.difference);
      j["e"] = strings(s.e);
      j["alternating_sum"] = str(s.alternating);
      samples.push_back(std::move(j));
    }
    entry["samples"] = std::move(samples);
    entry["constant"] = b.constant;
    entry["invariant_value"] = b.invariant_value ? Json(str(*b.invariant_value)) : Json(nullptr);
    entry["ei_invariance"] = b.ei_invariance;
    entry["alt_sum_check"] = b.alt_sum_check;
    return true;
  }

  bool check(const Command& cmd, Json& entry) {
    const auto* sig = find_checker(cmd.args[0]);
    entry["name"] = cmd.args[0];
    std::optional<RIdeal<F>> I;
    RIdeal<F> J;
    if (sig->takes_I) {
      I = lookup(cmd.args[1]);
      entry["I"] = cmd.args[1];
      J = second_or_reduction(cmd, 2, entry);
    } else if (cmd.args.size() > 1) {
      J = lookup(cmd.args[1]);
      entry["J"] = cmd.args[1];
    } else {
      J = reduction_of("m").J;
      entry["J"] = "generic";
    }
    entry["J_generators"] = generators(J);
    const std::string& n = cmd.args[0];
    CheckResult c;
    if (n == "northcott") {
      c = check_northcott(*R_, *I, J, check_);
    } else if (n == "elias_valla") {
      c = check_elias_valla(*R_, J, check_);
    } else if (n == "sally_bound") {
      c = check_sally_bound(*R_, *I, J, check_);
    } else if (n == "fiber_bound") {
      c = check_fiber_bound(*R_, *I, J, check_);
    } else if (n == "fiber_bound_buchsbaum") {
      c = check_fiber_bound_buchsbaum(*R_, *I, J, buchsbaum(options_.trials), check_);
    } else if (n == "ev2") {
      c = check_ev2(*R_, *I, J, check_);
    } else if (n == "corollary_27") {
      c = check_corollary_27(*R_, J, buchsbaum(options_.trials), check_);
    } else if (n == "yamagishi") {
      c = check_yamagishi(*R_, *I, J, buchsbaum(options_.trials), check_);
    } else if (n == "dimension_dichotomy") {
      c = check_dimension_dichotomy(*R_, *I, J, buchsbaum(options_.trials), check_);
    } else {
      c = check_goto_nishida(*R_, J, check_);
    }
    entry["lhs"] = str(c.lhs);
    entry["relation"] = c.identity ? "=" : "≤";
    entry["rhs"] = str(c.rhs);
    entry["equality"] = c.equality;
    entry["holds"] = c.holds;
    entry["status"] = to_string(c.status);
    Json facts;
    for (const auto& [k, v] : c.facts) facts[k] = v;
    entry["facts"] = std::move(facts);
    return c.status != CheckStatus::kFails;
  }

  const Session& session_;
  RunOptions options_;
  F field_;
  FitPolicy fit_;
  CheckOptions check_;
  RingPtr<F> S_;
  RingHandle<F> R_;
  std::map<std::string, RIdeal<F>> names_;
  std::map<std::string, ReductionReport<F>> reductions_;
  std::optional<BuchsbaumReport<F>> buchsbaum_;
  const Command* current_ = nullptr;
};

std::string join(const Json& arr, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += sep;
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

std::string text_of(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_command(std::ostringstream& os, const Json& c) {
  const auto& name = c["command"].get_ref<const std::string&>();
  os << "[line " << text_of(c["line"]) << "] " << text_of(c["text"]) << "\n";
  if (name == "hilbert") {
    os << "  e = (" << join(c["e"]) << "), colength " << text_of(c["length"])
       << ", postulation bound " << text_of(c["postulation_bound"]) << "\n";
    os << "  lengths from n = " << text_of(c["lengths_from"]) << ": " << join(c["lengths"], " ") << "\n";
  } else if (name == "reduction") {
    os << "  J = (" << join(c["J"]) << "), r = " << text_of(c["r"]) << "\n";
    os << "  e0(I) = " << text_of(c["e0(I)"]) << ", e0(J) = " << text_of(c["e0(J)"])
       << (c["e0_preserved"].get<bool>() ? " (equal)" : " (DIFFER)") << "\n";
  } else if (name == "sally") {
    os << "  J = (" << join(c["J_generators"]) << ")\n";
    os << "  h(n) from n = " << text_of(c["h_from"]) << ": " << join(c["h"], " ") << "\n";
    os << "  dim " << text_of(c["dim"]) << ", multiplicity " << text_of(c["multiplicity"]);
    if (c.contains("s")) os << ", s = (" << join(c["s"]) << ")";
    os << "\n";
    if (c.contains("multiplicity_identity")) {
      const auto& id = c["multiplicity_identity"];
      os << "  multiplicity = e1(I) - e0(I) - e1(J) + e_hat0(J,I) = " << text_of(id["rhs"])
         << (id["holds"].get<bool>() ? " (holds)" : " (FAILS)") << "\n";
    }
    if (c.contains("three_term_agree")) {
      os << "  three-term lengths " << (c["three_term_agree"].get<bool>() ? "agree" : "DISAGREE") << "\n";
    }
    os << "  m annihilates through n = " << text_of(c["annihilated_by_m_through"]) << ": "
       << (c["annihilated_by_m"].get<bool>() ? "yes" : "no") << "\n";
  } else if (name == "fiber") {
    os << "  f0 = " << text_of(c["f0"]) << ", mu(I^n) from n = " << text_of(c["mu_from"]) << ": "
       << join(c["mu"], " ") << "\n";
  } else if (name == "buchsbaum") {
    for (const auto& s : c["samples"]) {
      os << "  J = (" << join(s["J"]) << "): " << text_of(s["length"]) << " - " << text_of(s["e0"]) << " = "
         << text_of(s["difference"]) << ", e = (" << join(s["e"]) << ")\n";
    }
    os << "  constant: " << (c["constant"].get<bool>() ? "yes, I(R) = " + text_of(c["invariant_value"]) : "no")
       << "\n";
  } else {
    const auto& status = c["status"].get_ref<const std::string&>();
    if (status == "holds" || status == "fails") {
      os << "  " << text_of(c["lhs"]) << " " << text_of(c["relation"]) << " " << text_of(c["rhs"]) << " ("
         << (c["equality"].get<bool>() ? "equality" : "strict") << ")  " << status << "\n";
    } else {
      os << "  " << status << "\n";
    }
    std::string facts;
    for (const auto& [k, v] : c["facts"].items()) facts += " " + k + "=" + text_of(v);
    os << "  facts:" << facts << "\n";
  }
  if (c.contains("seconds")) os << "  time " << text_of(c["seconds"]) << " s\n";
}

}  // namespace

RunOutcome run_session(const Session& session, const RunOptions& options) {
  if (options.field.rational) return Runner<RationalField>(session, options, RationalField{}).run();
  return Runner<PrimeField>(session, options, PrimeField(options.field.prime)).run();
}

RunOutcome parse_failure(const ParseError& error, const RunOptions& options) {
  RunOutcome out;
  out.report["metadata"] = metadata(options);
  out.report["status"] = "error";
  Json err;
  err["kind"] = "parse";
  err["message"] = error.message();
  err["line"] = str(static_cast<std::uint64_t>(error.line()));
  err["column"] = str(static_cast<std::uint64_t>(error.column()));
  out.report["error"] = std::move(err);
  out.exit_code = kExitError;
  return out;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_text(const Json& report) {
  std::ostringstream os;
  const auto& m = report["metadata"];
  os << text_of(m["tool"]) << " " << text_of(m["version"]) << "  field " << text_of(m["field"]) << "  seed "
     << text_of(m["seed"]) << "  max-power " << text_of(m["max_power"]) << "  reduction-cap "
     << text_of(m["reduction_cap"]) << "  trials " << text_of(m["trials"]) << "\n";
  if (report.contains("ring") && !report["ring"].is_null()) {
    const auto& r = report["ring"];
    os << "ring " << text_of(r["name"]) << " = poly(" << join(r["variables"]) << ") / (" << text_of(r["defining_ideal"])
       << "), dim " << text_of(r["dim"]) << "\n";
    for (const auto& i : report["ideals"]) {
      os << "  " << text_of(i["name"]) << " = " << text_of(i["definition"]) << " = (" << join(i["generators"]) << ")\n";
    }
  }
  if (report.contains("commands")) {
    for (const auto& c : report["commands"]) render_command(os, c);
  }
  os << "status: " << text_of(report["status"]) << "\n";
  if (report.contains("error")) {
    const auto& e = report["error"];
    os << "error (" << text_of(e["kind"]) << ")";
    if (e.contains("line")) os << " at line " << text_of(e["line"]);
    if (e.contains("column")) os << ", column " << text_of(e["column"]);
    os << ": " << text_of(e["message"]) << "\n";
  }
  return os.str();
}

}  // namespace sallykit
