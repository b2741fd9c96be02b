#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/ring.hpp"

namespace sallykit {

inline constexpr unsigned kDefaultReductionCap = 30;
inline constexpr unsigned kReductionAttempts = 3;
inline constexpr unsigned kParameterRetries = 25;

/// Generators of I independent modulo 𝔪I, chosen greedily in degree order.
template <class F>
std::vector<Polynomial<F>> minimal_generators(const RingPresentation<F>& R, const RIdeal<F>& I) {
  if (!R.contained_in_maximal(I)) throw DomainError("minimal generators require I inside the maximal ideal");
  const RIdeal<F> mI = R.product(R.maximal_ideal(), I);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : I.gens()) {
    auto span = mI.gens();
    span.insert(span.end(), kept.begin(), kept.end());
    if (!R.basis(R.ideal(span))->contains(g)) kept.push_back(g);
  }
  return kept;
}

/// Smallest r <= cap with I^{r+1} = J I^r in R, or nullopt past the cap.
template <class F>
std::optional<unsigned> reduction_number(const RingPresentation<F>& R, const RIdeal<F>& J, const RIdeal<F>& I,
                                         unsigned cap = kDefaultReductionCap) {
  if (!R.contains(I, J)) throw DomainError("reduction_number requires J inside I");
  if (auto chart = R.chart_for(J.gens())) return reduction_number(*chart->ring, chart->map(J), chart->map(I), cap);
  RIdeal<F> Ir = R.power(I, 0);
  for (unsigned r = 0; r <= cap; ++r) {
    RIdeal<F> next = R.product(Ir, I);
    if (R.contains(R.product(J, Ir), next)) return r;
    Ir = next;
  }
  return std::nullopt;
}

template <class F>
struct ReductionReport {
  RIdeal<F> J;
  unsigned r = 0;
  std::uint64_t seed = 0;
  unsigned attempts = 0;
};

namespace detail {

template <class F>
Polynomial<F> random_combination(const std::vector<Polynomial<F>>& gens, std::mt19937_64& rng) {
  const auto& ring = gens.front().ring();
  Polynomial<F> out(ring);
  for (const auto& g : gens) out = out + g.scaled(ring->field().random_nonzero(rng));
  return out;
}

/// Ways to place `total` elements into classes with the given capacities,
/// ordered to fill lower classes first.
inline void allocations(const std::vector<std::size_t>& caps, std::size_t total, std::size_t at,
                        std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (at == caps.size()) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t take = std::min(caps[at], total) + 1; take-- > 0;) {
    cur[at] = take;
    allocations(caps, total - take, at + 1, cur, out);
  }
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// A d-generated homogeneous reduction of I. The minimal generators are split
/// into degree classes; each element of J is a random combination of one
/// class, and allocations that use lower degrees are tried first. Candidates
/// that are not 𝔪-primary are skipped before the reduction number is sought.
template <class F>
ReductionReport<F> generic_minimal_reduction(const RingPresentation<F>& R, const RIdeal<F>& I, std::uint64_t seed,
                                             unsigned cap = kDefaultReductionCap) {
  if (!R.is_m_primary(I)) throw DomainError("generic_minimal_reduction requires an m-primary ideal");
  const std::size_t d = R.dim();
  std::map<unsigned, std::vector<Polynomial<F>>> classes;
  for (auto& g : minimal_generators(R, I)) classes[g.degree()].push_back(std::move(g));
  std::vector<std::size_t> caps;
  std::vector<const std::vector<Polynomial<F>>*> members;
  for (const auto& [deg, gens] : classes) {
    caps.push_back(gens.size());
    members.push_back(&gens);
  }
  std::vector<std::vector<std::size_t>> plans;
  std::vector<std::size_t> cur(caps.size(), 0);
  detail::allocations(caps, d, 0, cur, plans);

  for (unsigned attempt = 1; attempt <= kReductionAttempts; ++attempt) {
    auto rng = detail::seeded_rng(seed, attempt);
    for (const auto& plan : plans) {
      std::vector<Polynomial<F>> gens;
      for (std::size_t c = 0; c < plan.size(); ++c) {
        for (std::size_t j = 0; j < plan[c]; ++j) gens.push_back(detail::random_combination(*members[c], rng));
      }
      RIdeal<F> J = R.ideal(gens);
      if (J.size() != d || !R.is_m_primary(J)) continue;
      if (auto r = reduction_number(R, J, I, cap)) return {J, *r, seed, attempt};
    }
  }
  std::string msg = "no reduction found within cap: increase cap or field size";
  if (classes.size() > 1) msg += " (generators lie in several degrees; a homogeneous reduction may not exist)";
  throw Error(msg);
}

/// d random linear forms generating an 𝔪-primary ideal. Each coefficient is
/// zero with probability 1/2, so special as well as generic systems of
/// parameters are drawn.
template <class F>
RIdeal<F> random_parameter_ideal(const RingPresentation<F>& R, std::uint64_t seed) {
  const auto& S = R.ambient();
  const std::size_t n = S->nvars();
  for (unsigned attempt = 0; attempt < kParameterRetries; ++attempt) {
    auto rng = detail::seeded_rng(seed, 1000 + attempt);
    std::vector<Polynomial<F>> forms;
    for (std::size_t j = 0; j < R.dim(); ++j) {
      std::vector<Term<F>> terms;
      for (std::size_t v = 0; v < n; ++v) {
        if (rng() % 2 == 0) terms.push_back({S->field().random_nonzero(rng), Monomial::variable(n, v)});
      }
      forms.emplace_back(S, std::move(terms));
    }
    RIdeal<F> J = R.ideal(forms);
    if (J.size() == R.dim() && R.is_m_primary(J)) return J;
  }
  throw Error("no parameter ideal found after " + std::to_string(kParameterRetries) + " draws");
}

}  // namespace sallykit
