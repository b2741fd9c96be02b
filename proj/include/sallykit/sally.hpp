#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/hilbert.hpp"
#include "sallykit/reductions.hpp"
#include "sallykit/ring.hpp"

namespace sallykit {

/// h(n) = λ(I^n / I J^{n-1}) = λ(R/I J^{n-1}) - λ(R/I^n) for n >= 2.
template <class F>
std::int64_t sally_component(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J, std::int64_t n) {
  const auto k = static_cast<unsigned>(n);
  return R.length(R.product(I, R.power(J, k - 1))) - R.length(R.power(I, k));
}

/// The Sally function on n = 2..N.
template <class F>
Sequence sally_function(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J, std::int64_t N) {
  Sequence s;
  s.offset = 2;
  for (std::int64_t n = 2; n <= N; ++n) s.values.push_back(sally_component(R, I, J, n));
  return s;
}

struct SallyReport {
  Sequence h;                      // h(n) for n = 2..N
  GradedFit fit;                   // degree bound d - 1, in the basis C(n+k-1, k)
  bool trivial = false;            // I^2 = J I
  std::optional<unsigned> dim;     // empty when trivial
  mpz_class multiplicity;          // leading coefficient, or total length when dim = 0
  std::vector<mpz_class> s;        // s_0..s_{d-1} when I = 𝔪 and dim = d
  std::vector<mpz_class> s_from_e; // the same coefficients from Hilbert coefficients
};

template <class F>
std::int64_t hilbert_horizon(const RingPresentation<F>& R, const RIdeal<F>& I, const FitPolicy& policy) {
  return hilbert_samuel(R, I, policy).table.N;
}

/// Fits the Sally function with degree bound d - 1 and classifies the module.
/// For I = 𝔪 the coefficients s_i are also derived from e_i(𝔪) and e_i(J);
/// the two derivations must agree.
template <class F>
SallyReport sally_invariants(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J,
                             const FitPolicy& policy = {}) {
  if (auto chart = R.chart_for(J.gens())) return sally_invariants(*chart->ring, chart->map(I), chart->map(J), policy);
  const unsigned d = static_cast<unsigned>(R.dim());
  FitPolicy p = policy;
  if (p.start == 0) {
    const auto horizon = hilbert_horizon(R, I, policy) + 3;
    p.start = static_cast<unsigned>(std::min<std::int64_t>(horizon, policy.max_power));
  }
  auto fitted = adaptive_fit([&](std::int64_t n) { return sally_component(R, I, J, n); }, 2, d - 1, p);

  SallyReport out;
  out.h = fitted.seq;
  out.fit = fitted.fit;
  out.trivial = std::all_of(out.h.values.begin(), out.h.values.end(), [](auto v) { return v == 0; });
  if (out.trivial) {
    out.multiplicity = 0;
  } else if (out.fit.eventually_zero) {
    out.dim = 0;
    out.multiplicity = 0;
    for (auto v : out.h.values) out.multiplicity += static_cast<long>(v);
  } else {
    out.dim = static_cast<unsigned>(out.fit.degree) + 1;
    out.multiplicity = out.fit.normalized_leading;
  }

  if (R.equal(I, R.maximal_ideal())) {
    const auto em = hilbert_samuel(R, I, policy).coefficients.e;
    const auto eJ = hilbert_samuel(R, J, policy).coefficients.e;
    out.s_from_e.push_back(em[1] - em[0] - eJ[1] + 1);
    for (unsigned i = 1; i < d; ++i) out.s_from_e.push_back(em[i + 1] - eJ[i] - eJ[i + 1]);
    for (unsigned i = 0; i < d; ++i) out.s.push_back(out.fit.signed_coefficient(i));
    if (out.s != out.s_from_e) {
      throw Error("Sally coefficients disagree between the h-fit and the Hilbert coefficients");
    }
  }
  return out;
}

/// One row of the three-term comparison for I = 𝔪.
struct ThreeTermRow {
  std::int64_t n = 0;
  std::int64_t two_term = 0;    // λ(R/𝔪J^{n-1}) - λ(R/𝔪^n)
  std::int64_t three_term = 0;  // λ(R/J^{n-1}) - λ(R/𝔪^n) + third
  std::int64_t third = 0;       // λ(J^{n-1}/𝔪J^{n-1}) as a rank
  mpz_class fiber_binomial;     // C(n+d-2, d-1)
  bool agree = false;
};

/// λ(K/𝔪K) computed as the rank of the generators of K modulo a + 𝔪K.
template <class F>
std::int64_t minimal_generator_count(const RingPresentation<F>& R, const RIdeal<F>& K) {
  auto gb = R.basis(R.product(R.maximal_ideal(), K));
  std::vector<Polynomial<F>> residues;
  for (const auto& g : K.gens()) {
    auto r = gb->normal_form(g, R.options());
    if (!r.is_zero()) residues.push_back(std::move(r));
  }
  return static_cast<std::int64_t>(detail::linear_echelon(std::move(residues)).size());
}

template <class F>
std::vector<ThreeTermRow> sally_three_term_crosscheck(const RingPresentation<F>& R, const RIdeal<F>& J,
                                                      std::int64_t n_from, std::int64_t n_to) {
  if (auto chart = R.chart_for(J.gens())) return sally_three_term_crosscheck(*chart->ring, chart->map(J), n_from, n_to);
  const auto& m = R.maximal_ideal();
  const auto d = static_cast<unsigned long>(R.dim());
  std::vector<ThreeTermRow> rows;
  for (std::int64_t n = std::max<std::int64_t>(n_from, 2); n <= n_to; ++n) {
    const auto k = static_cast<unsigned>(n);
    const auto Jn = R.power(J, k - 1);
    const auto mn = R.length(R.power(m, k));
    ThreeTermRow row;
    row.n = n;
    row.two_term = sally_component(R, m, J, n);
    row.third = minimal_generator_count(R, Jn);
    row.three_term = R.length(Jn) - mn + row.third;
    row.fiber_binomial = poly_binomial(mpz_class(static_cast<long>(n + d) - 2), static_cast<unsigned>(d - 1));
    row.agree = row.two_term == row.three_term;
    rows.push_back(row);
  }
  return rows;
}

struct FiberReport {
  Sequence g;  // μ(I^n) for n = 1..N
  GradedFit fit;
  mpz_class f0;
  bool dim_check = false;
};

/// Multiplicity of the special fiber ring from μ(I^n) = λ(R/𝔪I^n) - λ(R/I^n).
template <class F>
FiberReport fiber_multiplicity(const RingPresentation<F>& R, const RIdeal<F>& I, const FitPolicy& policy = {}) {
  if (auto chart = R.chart_for(I.gens())) return fiber_multiplicity(*chart->ring, chart->map(I), policy);
  if (!R.is_m_primary(I)) throw DomainError("fiber_multiplicity requires an m-primary ideal");
  const unsigned d = static_cast<unsigned>(R.dim());
  auto fitted = adaptive_fit(
      [&](std::int64_t n) {
        auto In = R.power(I, static_cast<unsigned>(n));
        return R.length(R.product(R.maximal_ideal(), In)) - R.length(In);
      },
      1, d - 1, policy);
  FiberReport out;
  out.g = fitted.seq;
  out.fit = fitted.fit;
  out.dim_check = fitted.fit.degree == static_cast<int>(d) - 1;
  if (!out.dim_check) throw Error("analytic spread anomaly: fiber Hilbert function has the wrong degree");
  out.f0 = fitted.fit.normalized_leading;
  return out;
}

/// Multiplicity of G(J) ⊗ R/I in dimension d, from w(n) = λ(R/I J^n) - λ(R/J^n).
template <class F>
mpz_class e_hat0(const RingPresentation<F>& R, const RIdeal<F>& J, const RIdeal<F>& I, const FitPolicy& policy = {}) {
  if (auto chart = R.chart_for(J.gens())) return e_hat0(*chart->ring, chart->map(J), chart->map(I), policy);
  if (!R.is_m_primary(J) || !R.is_m_primary(I)) throw DomainError("e_hat0 requires m-primary J and I");
  const unsigned d = static_cast<unsigned>(R.dim());
  auto fitted = adaptive_fit(
      [&](std::int64_t n) {
        auto Jn = R.power(J, static_cast<unsigned>(n));
        return R.length(R.product(I, Jn)) - R.length(Jn);
      },
      1, d - 1, policy);
  return fitted.fit.coefficients[d - 1];
}

/// 𝔪 I^n ⊆ I J^{n-1} for all n = 2..N.
template <class F>
bool annihilated_by_m(const RingPresentation<F>& R, const RIdeal<F>& I, const RIdeal<F>& J, std::int64_t N) {
  if (auto chart = R.chart_for(J.gens())) return annihilated_by_m(*chart->ring, chart->map(I), chart->map(J), N);
  for (std::int64_t n = 2; n <= N; ++n) {
    const auto k = static_cast<unsigned>(n);
    if (!R.contains(R.product(I, R.power(J, k - 1)), R.product(R.maximal_ideal(), R.power(I, k)))) return false;
  }
  return true;
}

}  // namespace sallykit
