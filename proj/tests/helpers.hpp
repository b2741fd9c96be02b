#pragma once

#include <random>
#include <string>
#include <vector>

#include "sallykit/groebner.hpp"
#include "sallykit/parse.hpp"

namespace sallykit::testing {

using Fp = PrimeField;
using Qq = RationalField;

inline RingPtr<Fp> fp_ring(std::vector<std::string> names, std::uint32_t p = PrimeField::kDefaultPrime,
                           MonomialOrder ord = MonomialOrder::grevlex()) {
  return PolyRing<Fp>::make(Fp(p), std::move(names), ord);
}

inline RingPtr<Qq> q_ring(std::vector<std::string> names, MonomialOrder ord = MonomialOrder::grevlex()) {
  return PolyRing<Qq>::make(Qq{}, std::move(names), ord);
}

template <class F>
Polynomial<F> P(const RingPtr<F>& ring, std::string_view text) {
  return parse_polynomial(text, ring);
}

template <class F>
IdealGens<F> ideal(const RingPtr<F>& ring, std::initializer_list<std::string_view> gens) {
  IdealGens<F> r(ring);
  for (auto g : gens) r.push_back(P(ring, g));
  return r;
}

/// Random polynomial with small exponents; used by property tests.
template <class F>
Polynomial<F> random_polynomial(const RingPtr<F>& ring, std::mt19937_64& rng, unsigned max_terms,
                                unsigned max_exp) {
  std::vector<Term<F>> terms;
  unsigned n = static_cast<unsigned>(rng() % max_terms) + 1;
  for (unsigned t = 0; t < n; ++t) {
    Monomial m(ring->nvars());
    for (std::size_t v = 0; v < ring->nvars(); ++v) m.set(v, static_cast<unsigned>(rng() % (max_exp + 1)));
    terms.push_back({ring->field().random_nonzero(rng), m});
  }
  return Polynomial<F>(ring, std::move(terms));
}

/// Random homogeneous form of the given degree with up to max_terms terms.
template <class F>
Polynomial<F> random_form(const RingPtr<F>& ring, std::mt19937_64& rng, unsigned degree, unsigned max_terms) {
  std::vector<Term<F>> terms;
  unsigned n = static_cast<unsigned>(rng() % max_terms) + 1;
  for (unsigned t = 0; t < n; ++t) {
    Monomial m(ring->nvars());
    for (unsigned d = 0; d < degree; ++d) {
      std::size_t v = rng() % ring->nvars();
      m.set(v, m[v] + 1);
    }
    terms.push_back({ring->field().random_nonzero(rng), m});
  }
  return Polynomial<F>(ring, std::move(terms));
}

}  // namespace sallykit::testing
