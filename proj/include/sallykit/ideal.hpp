#pragma once

#include <bit>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sallykit/groebner.hpp"

namespace sallykit {

template <class F>
IdealGens<F> ideal_sum(const IdealGens<F>& a, const IdealGens<F>& b) {
  IdealGens<F> r(a.ring());
  for (const auto& g : a) r.push_back(g);
  for (const auto& g : b) r.push_back(g);
  return r;
}

/// Pairwise products of generators: |a|*|b| entries before zero-dropping.
template <class F>
IdealGens<F> ideal_product(const IdealGens<F>& a, const IdealGens<F>& b) {
  IdealGens<F> r(a.ring());
  for (const auto& f : a) {
    for (const auto& g : b) r.push_back(f * g);
  }
  return r;
}

/// a^n from products of generators, deduplicated after making monic.
template <class F>
IdealGens<F> ideal_power(const IdealGens<F>& a, unsigned n) {
  if (n == 0) throw DomainError("ideal power requires n >= 1");
  IdealGens<F> r = a.canonical();
  for (unsigned i = 1; i < n; ++i) r = ideal_product(r, a).canonical();
  return r;
}

template <class F>
bool ideal_member(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
  return gb.contains(f);
}

template <class F>
bool ideal_member(const Polynomial<F>& f, const IdealGens<F>& a) {
  return buchberger(a).contains(f);
}

/// b ⊆ a
template <class F>
bool ideal_contains(const GroebnerBasis<F>& a, const IdealGens<F>& b) {
  for (const auto& g : b) {
    if (!a.contains(g.in_ring(a.ring()))) return false;
  }
  return true;
}

template <class F>
bool ideal_contains(const IdealGens<F>& a, const IdealGens<F>& b) {
  return ideal_contains(buchberger(a), b);
}

template <class F>
bool ideal_equal(const IdealGens<F>& a, const IdealGens<F>& b) {
  auto ga = buchberger(a);
  auto gb = buchberger(b);
  return ideal_contains(ga, b) && ideal_contains(gb, a);
}

namespace detail {

/// Moves polynomials into a ring with `shift` extra leading variables.
template <class F>
Polynomial<F> shift_variables(const Polynomial<F>& f, const RingPtr<F>& target, std::size_t shift) {
  std::vector<Term<F>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i) m.set(i + shift, t.mono[i]);
    terms.push_back({t.coeff, m});
  }
  return Polynomial<F>(target, std::move(terms));
}

/// Inverse of shift_variables; requires the first `shift` exponents to vanish.
template <class F>
Polynomial<F> unshift_variables(const Polynomial<F>& f, const RingPtr<F>& target, std::size_t shift) {
  std::vector<Term<F>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < target->nvars(); ++i) m.set(i, t.mono[i + shift]);
    terms.push_back({t.coeff, m});
  }
  return Polynomial<F>(target, std::move(terms));
}

inline std::vector<std::string> with_leading_names(std::vector<std::string> names, std::size_t count,
                                                   const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string candidate = stem + std::to_string(i);
    while (std::find(names.begin(), names.end(), candidate) != names.end()) candidate += "_";
    out.push_back(candidate);
  }
  out.insert(out.end(), names.begin(), names.end());
  return out;
}

}  // namespace detail

/// a ∩ k[x_{k+1},...,x_n] through a block-elimination basis. The result lives in a's ring.
template <class F>
IdealGens<F> eliminate(const IdealGens<F>& a, std::size_t k, const GroebnerOptions& opts = {}) {
  auto gb = buchberger(a, MonomialOrder::block_elimination(k), opts);
  IdealGens<F> r(a.ring());
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (const auto& t : g.terms()) {
      for (std::size_t i = 0; i < k && free; ++i) free = t.mono[i] == 0;
      if (!free) break;
    }
    if (free) r.push_back(g.in_ring(a.ring()));
  }
  return r;
}

/// a ∩ b: eliminate t from t*a + (1-t)*b with t prepended to the variables.
template <class F>
IdealGens<F> ideal_intersection(const IdealGens<F>& a, const IdealGens<F>& b, const GroebnerOptions& opts = {}) {
  const auto& ring = a.ring();
  if (a.empty() || b.empty()) return IdealGens<F>(ring);
  auto big = PolyRing<F>::make(ring->field(), detail::with_leading_names(ring->names(), 1, "_t"),
                               MonomialOrder::block_elimination(1));
  auto t = Polynomial<F>::variable(big, 0);
  auto one_minus_t = Polynomial<F>::one(big) - t;
  IdealGens<F> gens(big);
  for (const auto& f : a) gens.push_back(t * detail::shift_variables(f, big, 1));
  for (const auto& g : b) gens.push_back(one_minus_t * detail::shift_variables(g, big, 1));
  auto gb = buchberger(gens, opts);
  IdealGens<F> r(ring);
  for (const auto& g : gb.elements()) {
    bool free = std::all_of(g.terms().begin(), g.terms().end(), [](const auto& tm) { return tm.mono[0] == 0; });
    if (free) r.push_back(detail::unshift_variables(g, ring, 1));
  }
  return r;
}

/// a : (g) = (a ∩ (g)) / g
template <class F>
IdealGens<F> ideal_colon(const IdealGens<F>& a, const Polynomial<F>& g, const GroebnerOptions& opts = {}) {
  const auto& ring = a.ring();
  if (g.is_zero()) return IdealGens<F>(ring, {Polynomial<F>::one(ring)});
  auto inter = ideal_intersection(a, IdealGens<F>(ring, {g}), opts);
  IdealGens<F> r(ring);
  for (const auto& h : inter) r.push_back(divide_exact(h, g));
  return r;
}

/// a : b = ∩_g (a : (g)) over the generators of b.
template <class F>
IdealGens<F> ideal_colon(const IdealGens<F>& a, const IdealGens<F>& b, const GroebnerOptions& opts = {}) {
  const auto& ring = a.ring();
  if (b.empty()) return IdealGens<F>(ring, {Polynomial<F>::one(ring)});
  std::optional<IdealGens<F>> acc;
  for (const auto& g : b) {
    auto q = ideal_colon(a, g, opts);
    acc = acc ? ideal_intersection(*acc, q, opts) : q;
    // Reduce to the basis to keep generator lists small.
    acc = IdealGens<F>(ring, buchberger(*acc, opts).elements());
  }
  return *acc;
}

inline constexpr unsigned kSaturationRounds = 50;

/// a : b^∞ by iterating colons until two successive iterates agree.
template <class F>
IdealGens<F> saturation(const IdealGens<F>& a, const IdealGens<F>& b, const GroebnerOptions& opts = {}) {
  IdealGens<F> cur(a.ring(), buchberger(a, opts).elements());
  for (unsigned round = 0; round < kSaturationRounds; ++round) {
    auto next = ideal_colon(cur, b, opts);
    auto gnext = buchberger(next, opts);
    if (ideal_contains(buchberger(cur, opts), next)) return cur;
    cur = IdealGens<F>(a.ring(), gnext.elements());
  }
  throw ResourceLimit("saturation did not stabilize within " + std::to_string(kSaturationRounds) + " rounds");
}

/// Largest set of variables such that no leading monomial is supported inside it.
inline std::size_t krull_dimension_of_monomials(const std::vector<Monomial>& lms, std::size_t nvars) {
  std::vector<std::uint32_t> masks;
  masks.reserve(lms.size());
  for (const auto& m : lms) {
    if (m.is_one()) throw DomainError("unit ideal");
    masks.push_back(m.support_mask());
  }
  std::size_t best = 0;
  const std::uint32_t full = nvars == 32 ? ~0u : ((1u << nvars) - 1);
  for (std::uint32_t u = 0;; ++u) {
    auto pc = static_cast<std::size_t>(std::popcount(u));
    if (pc > best) {
      bool independent = std::none_of(masks.begin(), masks.end(), [u](std::uint32_t m) { return (m & ~u) == 0; });
      if (independent) best = pc;
    }
    if (u == full) break;
  }
  return best;
}

template <class F>
std::size_t krull_dimension(const GroebnerBasis<F>& gb) {
  if (gb.is_unit()) throw DomainError("unit ideal");
  return krull_dimension_of_monomials(gb.leading_monomials(), gb.ring()->nvars());
}

template <class F>
std::size_t krull_dimension(const IdealGens<F>& a) {
  return krull_dimension(buchberger(a));
}

/// Number of standard monomials per degree for an Artinian monomial ideal.
inline std::vector<std::int64_t> standard_monomial_counts(const std::vector<Monomial>& lms, std::size_t nvars) {
  for (std::size_t v = 0; v < nvars; ++v) {
    bool has_pure_power = std::any_of(lms.begin(), lms.end(), [&](const Monomial& m) {
      return m.degree() == m[v] && m[v] > 0;
    });
    if (!has_pure_power) throw DomainError("not Artinian");
  }
  std::vector<std::int64_t> counts;
  std::vector<Monomial> level;
  auto standard = [&](const Monomial& m) {
    std::uint32_t mask = m.support_mask();
    for (const auto& l : lms) {
      if ((l.support_mask() & ~mask) == 0 && l.divides(m)) return false;
    }
    return true;
  };
  Monomial one(nvars);
  if (!standard(one)) return counts;
  level.push_back(one);
  while (!level.empty()) {
    counts.push_back(static_cast<std::int64_t>(level.size()));
    std::vector<Monomial> next;
    for (const auto& m : level) {
      // Extending only at or after the last occupied variable enumerates each monomial
      // once; standard monomials form an order ideal, so every one is reached.
      std::size_t last = 0;
      for (std::size_t v = 0; v < nvars; ++v) {
        if (m[v] != 0) last = v;
      }
      for (std::size_t v = last; v < nvars; ++v) {
        Monomial n = m * Monomial::variable(nvars, v);
        if (standard(n)) next.push_back(n);
      }
    }
    level = std::move(next);
  }
  return counts;
}

template <class F>
std::int64_t vector_space_dimension(const GroebnerBasis<F>& gb) {
  auto counts = standard_monomial_counts(gb.leading_monomials(), gb.ring()->nvars());
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

template <class F>
std::int64_t vector_space_dimension(const IdealGens<F>& a) {
  return vector_space_dimension(buchberger(a));
}

/// Toric ideal of the projective monomial curve t -> (s^p_i u^q_i), in `target`
/// (one variable per pair).
template <class F>
IdealGens<F> implicitize_monomial_map(const std::vector<std::pair<unsigned, unsigned>>& exponent_pairs,
                                      const RingPtr<F>& target, const GroebnerOptions& opts = {}) {
  if (exponent_pairs.size() != target->nvars()) {
    throw DomainError("monomial curve needs one variable per exponent pair");
  }
  if (!exponent_pairs.empty()) {
    unsigned deg = exponent_pairs[0].first + exponent_pairs[0].second;
    for (const auto& [p, q] : exponent_pairs) {
      if (p + q != deg) throw DomainError("monomial curve exponents must share one total degree");
    }
  }
  auto big = PolyRing<F>::make(target->field(), detail::with_leading_names(target->names(), 2, "_s"),
                               MonomialOrder::block_elimination(2));
  IdealGens<F> gens(big);
  for (std::size_t i = 0; i < exponent_pairs.size(); ++i) {
    Monomial param(big->nvars());
    param.set(0, exponent_pairs[i].first);
    param.set(1, exponent_pairs[i].second);
    gens.push_back(Polynomial<F>::variable(big, i + 2) - Polynomial<F>::monomial(big, param));
  }
  auto gb = buchberger(gens, opts);
  IdealGens<F> r(target);
  for (const auto& g : gb.elements()) {
    bool free = std::all_of(g.terms().begin(), g.terms().end(),
                            [](const auto& t) { return t.mono[0] == 0 && t.mono[1] == 0; });
    if (free) r.push_back(detail::unshift_variables(g, target, 2));
  }
  return r;
}

}  // namespace sallykit
