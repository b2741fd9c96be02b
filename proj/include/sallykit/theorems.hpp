#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/hilbert.hpp"
#include "sallykit/reductions.hpp"
#include "sallykit/ring.hpp"
#include "sallykit/sally.hpp"

namespace sallykit {

enum class CheckStatus {
  kHolds,
  kFails,
  kNotApplicable,
  kHypothesisNotVerified,
  kRequiresHigherCohomology,
};

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kHolds:
      return "holds";
    case CheckStatus::kFails:
      return "fails";
    case CheckStatus::kNotApplicable:
      return "not applicable";
    case CheckStatus::kHypothesisNotVerified:
      return "hypothesis not verified";
    case CheckStatus::kRequiresHigherCohomology:
      return "requires higher local cohomology";
  }
  return "unknown";
}

/// One comparison lhs ≤ rhs (or lhs = rhs for identities) with the facts used.
/// For statuses that skip the comparison, holds is vacuously true.
struct CheckResult {
  std::string name;
  bool identity = false;
  mpz_class lhs;
  mpz_class rhs;
  bool holds = true;
  bool equality = false;
  CheckStatus status = CheckStatus::kHolds;
  std::vector<std::pair<std::string, std::string>> facts;

  void fact(const std::string& key, const mpz_class& v) { facts.emplace_back(key, v.get_str()); }
  void fact(const std::string& key, std::int64_t v) { facts.emplace_back(key, std::to_string(v)); }
  void fact(const std::string& key, bool v) { facts.emplace_back(key, v ? "true" : "false"); }
  void fact(const std::string& key, const char* v) { facts.emplace_back(key, v); }
  void fact(const std::string& key, const std::string& v) { facts.emplace_back(key, v); }
  void fact_vector(const std::string& prefix, const std::vector<mpz_class>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) fact(prefix + std::to_string(i), v[i]);
  }

  /// Sets lhs/rhs and derives holds, equality and status.
  void compare(mpz_class l, mpz_class r) {
    lhs = std::move(l);
    rhs = std::move(r);
    equality = lhs == rhs;
    holds = identity ? equality : lhs <= rhs;
    status = holds ? CheckStatus::kHolds : CheckStatus::kFails;
  }
  void skip(CheckStatus s) {
    status = s;
    holds = true;
  }
};

struct CheckOptions {
  FitPolicy fit;
  unsigned reduction_cap = kDefaultReductionCap;
  std::uint64_t seed = 0;
};

template <class F>
struct BuchsbaumSample {
  RIdeal<F> J;
  std::int64_t length = 0;
  mpz_class e0;
  mpz_class difference;  // λ(R/J) - e_0(J)
  std::vector<mpz_class> e;
  mpz_class alternating;  // Σ_{i=1}^{d} (-1)^i e_i(J)
};

template <class F>
struct BuchsbaumReport {
  std::vector<BuchsbaumSample<F>> samples;
  bool constant = false;
  std::optional<mpz_class> invariant_value;
  bool ei_invariance = false;
  bool alt_sum_check = false;
  std::uint64_t seed = 0;
};

/// Exponents (1 or 2) for the generators of sample t: sample 0 keeps them
/// linear, sample 1 squares all of them, later samples mix. Linear systems of
/// parameters alone cannot tell a Buchsbaum ring from one where only generic
/// systems share λ(R/J) - e_0(J).
inline std::vector<unsigned> sample_exponents(std::size_t d, std::uint64_t seed, unsigned sample) {
  std::vector<unsigned> e(d, 1);
  if (sample == 0) return e;
  auto rng = detail::seeded_rng(seed, 2000 + sample);
  for (auto& x : e) x = (sample == 1 || rng() % 2 == 0) ? 2 : 1;
  return e;
}

template <class F>
RIdeal<F> raise_generators(const RingPresentation<F>& R, const std::vector<Polynomial<F>>& gens,
                           const std::vector<unsigned>& exponents) {
  std::vector<Polynomial<F>> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Polynomial<F> p = Polynomial<F>::one(R.ambient());
    for (unsigned e = 0; e < exponents[i]; ++e) p = p * gens[i];
    out.push_back(p);
  }
  return R.ideal(out);
}

/// Samples random parameter ideals and records λ(R/J) - e_0(J).
template <class F>
BuchsbaumReport<F> buchsbaum_invariant(const RingPresentation<F>& R, unsigned trials, std::uint64_t seed,
                                       const FitPolicy& policy = {}) {
  if (trials < 3) throw DomainError("buchsbaum_invariant needs at least 3 trials");
  BuchsbaumReport<F> out;
  out.seed = seed;
  for (unsigned t = 0; t < trials; ++t) {
    BuchsbaumSample<F> s;
    const std::uint64_t sample_seed = seed * 7919 + t;
    const auto linear = random_parameter_ideal(R, sample_seed);
    const auto exponents = sample_exponents(R.dim(), sample_seed, t);
    s.J = raise_generators(R, linear.gens(), exponents);
    if (auto chart = R.chart_for(linear.gens())) {
      std::vector<Polynomial<F>> coords;
      for (const auto& g : linear.gens()) coords.push_back(chart->map(g));
      const auto Jc = raise_generators(*chart->ring, coords, exponents);
      s.length = chart->ring->length(Jc);
      s.e = hilbert_samuel(*chart->ring, Jc, policy).coefficients.e;
    } else {
      s.length = R.length(s.J);
      s.e = hilbert_samuel(R, s.J, policy).coefficients.e;
    }
    s.e0 = s.e[0];
    s.difference = s.length - s.e0;
    for (std::size_t i = 1; i < s.e.size(); ++i) s.alternating += (i % 2 == 0) ? s.e[i] : mpz_class(-s.e[i]);
    out.samples.push_back(std::move(s));
  }
  const auto& first = out.samples.front();
  out.constant = std::all_of(out.samples.begin(), out.samples.end(),
                             [&](const auto& s) { return s.difference == first.difference; });
  if (out.constant) out.invariant_value = first.difference;
  out.ei_invariance = std::all_of(out.samples.begin(), out.samples.end(), [&](const auto& s) {
    return std::equal(s.e.begin() + 1, s.e.end(), first.e.begin() + 1);
  });
  out.alt_sum_check = std::all_of(out.samples.begin(), out.samples.end(),
                                  [](const auto& s) { return s.alternating == s.difference; });
  return out;
}

namespace detail {

template <class F>
unsigned require_reduction(const RingPresentation<F>& R, const RIdeal<F>& J, const RIdeal<F>& I, unsigned cap) {
  if (J.size() != R.dim() || mu(R, J) != static_cast<std::int64_t>(R.dim())) {
    throw DomainError("J must be generated by d = " + std::to_string(R.dim()) + " elements");
  }
  auto r = reduction_number(R, J, I, cap);
  if (!r) throw DomainError("J is not a reduction of I within the reduction cap");
  return *r;
}

template <class F>
void record_buchsbaum(CheckResult& c, const BuchsbaumReport<F>& b) {
  c.fact("buchsbaum_samples", static_cast<std::int64_t>(b.samples.size()));
  c.fact("buchsbaum_constant", b.constant);
  if (b.invariant_value) c.fact("I(R)", *b.invariant_value);
  c.fact("buchsbaum_seed", std::to_string(b.seed));
}

}  // namespace detail

/// 0 ≤ e_1(I) - e_0(I) + λ(R/I); equality should coincide with r ≤ 1.
template <class F>
CheckResult check_northcott(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                            const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "northcott";
  const unsigned r = detail::require_reduction(R, J, I, opt.reduction_cap);
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto lenI = R.length(I);
  const auto lenJ = R.length(J);
  const bool cohen_macaulay = eJ[0] == lenJ;
  c.compare(0, eI[1] - eI[0] + lenI);
  const bool structural = c.equality == (r <= 1);
  c.fact("d", static_cast<std::int64_t>(R.dim()));
  c.fact("e0(I)", eI[0]);
  c.fact("e1(I)", eI[1]);
  c.fact("length(R/I)", lenI);
  c.fact("r", static_cast<std::int64_t>(r));
  c.fact("length(R/J)", lenJ);
  c.fact("e0(J)", eJ[0]);
  c.fact("cohen_macaulay", cohen_macaulay);
  c.fact("equality_matches_r_le_1", structural);
  c.fact("seed", std::to_string(opt.seed));
  if (!cohen_macaulay) {
    c.status = CheckStatus::kHypothesisNotVerified;
  } else if (!structural) {
    c.holds = false;
    c.status = CheckStatus::kFails;
  }
  return c;
}

/// 2e_0(𝔪) - e_1(𝔪) + e_1(J) ≤ μ(𝔪) - d + 2.
template <class F>
CheckResult check_elias_valla(const RingPresentation<F>& R, const RIdeal<F>& J, const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "elias_valla";
  const auto& m = R.maximal_ideal();
  detail::require_reduction(R, J, m, opt.reduction_cap);
  const auto em = hilbert_samuel(R, m, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto mu_m = mu(R, m);
  const auto d = static_cast<std::int64_t>(R.dim());
  c.compare(2 * em[0] - em[1] + eJ[1], mpz_class(static_cast<long>(mu_m - d + 2)));
  c.fact("d", d);
  c.fact("e0(m)", em[0]);
  c.fact("e1(m)", em[1]);
  c.fact("e1(J)", eJ[1]);
  c.fact("mu(m)", mu_m);
  c.fact("seed", std::to_string(opt.seed));
  return c;
}

/// A d-dimensional Sally module has multiplicity ≤ e_1(I) - e_0(I) - e_1(J) + λ(R/I),
/// with equality exactly when I ⊇ H⁰_𝔪(R).
template <class F>
CheckResult check_sally_bound(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                              const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "sally_bound";
  detail::require_reduction(R, J, I, opt.reduction_cap);
  const auto s = sally_invariants(R, I, J, opt.fit);
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto lenI = R.length(I);
  const auto H = h0(R);
  const bool contains_h0 = R.contains(I, H.ideal);
  c.fact("d", static_cast<std::int64_t>(R.dim()));
  c.fact("sally_dim", s.dim ? std::to_string(*s.dim) : std::string("trivial"));
  c.fact("e0(I)", eI[0]);
  c.fact("e1(I)", eI[1]);
  c.fact("e1(J)", eJ[1]);
  c.fact("length(R/I)", lenI);
  c.fact("length(H0)", H.length);
  c.fact("I_contains_H0", contains_h0);
  c.fact("seed", std::to_string(opt.seed));
  if (!s.dim || *s.dim != R.dim()) {
    c.skip(CheckStatus::kNotApplicable);
    return c;
  }
  c.compare(s.multiplicity, eI[1] - eI[0] - eJ[1] + lenI);
  c.fact("equality_matches_H0_criterion", c.equality == contains_h0);
  if (c.equality != contains_h0) {
    c.holds = false;
    c.status = CheckStatus::kFails;
  }
  return c;
}

/// f_0(I) ≤ e_1(I) - e_0(I) - e_1(J) + λ(R/I) + μ(I) - d + 1.
template <class F>
CheckResult check_fiber_bound(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                              const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "fiber_bound";
  detail::require_reduction(R, J, I, opt.reduction_cap);
  const auto f = fiber_multiplicity(R, I, opt.fit);
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto lenI = R.length(I);
  const auto muI = mu(R, I);
  const auto d = static_cast<std::int64_t>(R.dim());
  c.compare(f.f0, eI[1] - eI[0] - eJ[1] + lenI + muI - d + 1);
  c.fact("d", d);
  c.fact("f0(I)", f.f0);
  c.fact("e0(I)", eI[0]);
  c.fact("e1(I)", eI[1]);
  c.fact("e1(J)", eJ[1]);
  c.fact("length(R/I)", lenI);
  c.fact("mu(I)", muI);
  c.fact("seed", std::to_string(opt.seed));
  return c;
}

/// On Buchsbaum evidence: f_0(I) ≤ e_1(I) + I(R) - e_1(J) + 1, and equality forces 𝔪I = 𝔪J.
template <class F>
CheckResult check_fiber_bound_buchsbaum(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                                        const BuchsbaumReport<F>& b, const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "fiber_bound_buchsbaum";
  detail::require_reduction(R, J, I, opt.reduction_cap);
  detail::record_buchsbaum(c, b);
  const auto& m = R.maximal_ideal();
  const bool minimal_multiplicity = R.equal(R.product(m, I), R.product(m, J));
  c.fact("mI_equals_mJ", minimal_multiplicity);
  if (!b.constant) {
    c.skip(CheckStatus::kNotApplicable);
    return c;
  }
  const auto f = fiber_multiplicity(R, I, opt.fit);
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  c.compare(f.f0, eI[1] + *b.invariant_value - eJ[1] + 1);
  c.fact("f0(I)", f.f0);
  c.fact("e1(I)", eI[1]);
  c.fact("e1(J)", eJ[1]);
  c.fact("seed", std::to_string(opt.seed));
  if (c.equality && !minimal_multiplicity) {
    c.holds = false;
    c.status = CheckStatus::kFails;
  }
  return c;
}

/// 2e_0(I) - e_1(I) + e_1(J) ≤ λ(R/I)(μ(I) - d + 2).
template <class F>
CheckResult check_ev2(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                      const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "ev2";
  detail::require_reduction(R, J, I, opt.reduction_cap);
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto lenI = R.length(I);
  const auto muI = mu(R, I);
  const auto d = static_cast<std::int64_t>(R.dim());
  c.compare(2 * eI[0] - eI[1] + eJ[1], mpz_class(static_cast<long>(lenI * (muI - d + 2))));
  c.fact("d", d);
  c.fact("e0(I)", eI[0]);
  c.fact("e1(I)", eI[1]);
  c.fact("e1(J)", eJ[1]);
  c.fact("length(R/I)", lenI);
  c.fact("mu(I)", muI);
  c.fact("seed", std::to_string(opt.seed));
  return c;
}

/// When e_1(𝔪) = e_0(𝔪) + e_1(J) - 1 on a Buchsbaum ring: e_i(𝔪) = e_{i-1}(J) + e_i(J)
/// for i = 2..d. The residuals e_i(𝔪) - e_{i-1}(J) - e_i(J) are always reported;
/// lhs is the sum of their absolute values.
template <class F>
CheckResult check_corollary_27(const RingPresentation<F>& R, const RIdeal<F>& J, const BuchsbaumReport<F>& b,
                               const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "corollary_27";
  c.identity = true;
  const auto& m = R.maximal_ideal();
  detail::require_reduction(R, J, m, opt.reduction_cap);
  detail::record_buchsbaum(c, b);
  const auto em = hilbert_samuel(R, m, opt.fit).coefficients.e;
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const bool hypothesis = em[1] == em[0] + eJ[1] - 1;
  c.fact("s0_is_zero", hypothesis);
  mpz_class total = 0;
  for (std::size_t i = 2; i <= R.dim(); ++i) {
    mpz_class res = em[i] - eJ[i - 1] - eJ[i];
    c.fact("residual_" + std::to_string(i), res);
    total += abs(res);
  }
  c.fact_vector("e(m)_", em);
  c.fact_vector("e(J)_", eJ);
  c.fact("seed", std::to_string(opt.seed));
  if (!b.constant || !hypothesis) {
    c.lhs = total;
    c.rhs = 0;
    c.skip(CheckStatus::kNotApplicable);
    return c;
  }
  c.compare(total, 0);
  return c;
}

/// e_0(I) = μ(I) - d + λ(R/I) - I(R) + λ(𝔪I/𝔪J) on Buchsbaum evidence.
template <class F>
CheckResult check_yamagishi(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                            const BuchsbaumReport<F>& b, const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "yamagishi";
  c.identity = true;
  detail::require_reduction(R, J, I, opt.reduction_cap);
  detail::record_buchsbaum(c, b);
  const auto& m = R.maximal_ideal();
  const auto eI = hilbert_samuel(R, I, opt.fit).coefficients.e;
  const auto muI = mu(R, I);
  const auto lenI = R.length(I);
  const auto gap = R.length(R.product(m, J)) - R.length(R.product(m, I));
  const auto d = static_cast<std::int64_t>(R.dim());
  c.fact("d", d);
  c.fact("e0(I)", eI[0]);
  c.fact("mu(I)", muI);
  c.fact("length(R/I)", lenI);
  c.fact("length(mI/mJ)", gap);
  c.fact("seed", std::to_string(opt.seed));
  if (!b.constant) {
    c.lhs = eI[0];
    c.skip(CheckStatus::kNotApplicable);
    return c;
  }
  c.compare(eI[0], mpz_class(static_cast<long>(muI - d + lenI + gap)) - *b.invariant_value);
  return c;
}

/// On Buchsbaum evidence the Sally module is trivial or has dimension 0 or d.
/// For I ≠ 𝔪 the ideal must contain H⁰_𝔪(R). lhs is the dimension (0 when
/// trivial), rhs is d.
template <class F>
CheckResult check_dimension_dichotomy(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                                      const BuchsbaumReport<F>& b, const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "dimension_dichotomy";
  detail::require_reduction(R, J, I, opt.reduction_cap);
  detail::record_buchsbaum(c, b);
  const auto s = sally_invariants(R, I, J, opt.fit);
  const auto d = static_cast<long>(R.dim());
  const bool is_m = R.equal(I, R.maximal_ideal());
  const bool contains_h0 = is_m || R.contains(I, h0(R).ideal);
  c.lhs = s.dim ? static_cast<long>(*s.dim) : 0L;
  c.rhs = d;
  c.equality = c.lhs == c.rhs;
  c.fact("d", static_cast<std::int64_t>(d));
  c.fact("sally_dim", s.dim ? std::to_string(*s.dim) : std::string("trivial"));
  c.fact("I_contains_H0", contains_h0);
  c.fact("seed", std::to_string(opt.seed));
  if (!b.constant || !contains_h0) {
    c.skip(CheckStatus::kNotApplicable);
    return c;
  }
  c.holds = !s.dim || *s.dim == 0 || static_cast<long>(*s.dim) == d;
  c.status = c.holds ? CheckStatus::kHolds : CheckStatus::kFails;
  return c;
}

/// -e_1(J) ≤ Σ_{i=0}^{d-1} C(d-2, i-1) λ(H^i_𝔪(R)). Only H⁰ is computed, which
/// carries the whole sum when d = 1 (C(-1,-1) = 1); larger d is skipped.
template <class F>
CheckResult check_goto_nishida(const RingPresentation<F>& R, const RIdeal<F>& J, const CheckOptions& opt = {}) {
  CheckResult c;
  c.name = "goto_nishida";
  const auto eJ = hilbert_samuel(R, J, opt.fit).coefficients.e;
  const auto H = h0(R);
  c.fact("d", static_cast<std::int64_t>(R.dim()));
  c.fact("e1(J)", eJ[1]);
  c.fact("length(H0)", H.length);
  c.fact("seed", std::to_string(opt.seed));
  if (R.dim() != 1) {
    c.lhs = -eJ[1];
    c.skip(CheckStatus::kRequiresHigherCohomology);
    return c;
  }
  c.compare(-eJ[1], mpz_class(static_cast<long>(H.length)));
  return c;
}

}  // namespace sallykit
