#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/polynomial.hpp"

namespace sallykit {

/// Caps that make a runaway computation fail loudly instead of hanging.
struct GroebnerOptions {
  std::size_t max_pairs = 20'000'000;
  std::size_t max_poly_length = 5'000'000;
};

/// A finite generating set; zero generators are dropped on construction.
template <class F>
class IdealGens {
 public:
  IdealGens() = default;
  explicit IdealGens(RingPtr<F> ring) : ring_(std::move(ring)) {}
  IdealGens(RingPtr<F> ring, std::vector<Polynomial<F>> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) push_back(std::move(g));
  }

  void push_back(Polynomial<F> g) {
    if (g.is_zero()) return;
    if (g.ring() != ring_ && !g.ring()->same_shape(*ring_)) throw RingMismatch();
    gens_.push_back(std::move(g));
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  bool is_homogeneous() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const auto& g) { return g.is_homogeneous(); });
  }

  /// Monic, deduplicated, sorted by leading monomial. Same ideal.
  IdealGens canonical() const {
    std::vector<Polynomial<F>> v;
    v.reserve(gens_.size());
    for (const auto& g : gens_) v.push_back(g.monic());
    const auto& ord = ring_->order();
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
      auto c = ord.compare_unchecked(a.leading_monomial(), b.leading_monomial());
      if (c != 0) return c < 0;
      return lexicographic_terms_less(a, b, ord);
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return IdealGens(ring_, std::move(v));
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += ", ";
      out += gens_[i].to_string();
    }
    return out + ")";
  }

 private:
  static bool lexicographic_terms_less(const Polynomial<F>& a, const Polynomial<F>& b,
                                       const MonomialOrder& ord) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
      auto c = ord.compare_unchecked(ta[i].mono, tb[i].mono);
      if (c != 0) return c < 0;
      auto sa = a.field().to_string(ta[i].coeff);
      auto sb = a.field().to_string(tb[i].coeff);
      if (sa != sb) return sa < sb;
    }
    return ta.size() < tb.size();
  }

  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
};

namespace detail {

/// Leading-monomial index for divisor queries.
struct LeadEntry {
  Monomial lm;
  std::uint32_t mask;
  std::size_t index;
};

template <class F>
const LeadEntry* find_divisor(const std::vector<LeadEntry>& leads, const Monomial& m, std::uint32_t mask) {
  for (const auto& e : leads) {
    if ((e.mask & ~mask) == 0 && e.lm.divides(m)) return &e;
  }
  return nullptr;
}

/// Full reduction of `terms` by monic polynomials `basis` indexed through `leads`.
/// `sugar` is raised by the degree of each multiplier used.
template <class F>
std::vector<Term<F>> reduce_terms(std::vector<Term<F>> terms, const std::vector<Polynomial<F>>& basis,
                                  const std::vector<LeadEntry>& leads, const F& k,
                                  const MonomialOrder& ord, const GroebnerOptions& opts,
                                  unsigned* sugar = nullptr, bool top_only = false) {
  std::vector<Term<F>> remainder;
  std::vector<Term<F>> scratch;
  std::size_t head = 0;
  while (head < terms.size()) {
    const Term<F>& t = terms[head];
    const LeadEntry* div = find_divisor<F>(leads, t.mono, t.mono.support_mask());
    if (div == nullptr) {
      if (top_only) {
        remainder.insert(remainder.end(), std::make_move_iterator(terms.begin() + head),
                         std::make_move_iterator(terms.end()));
        return remainder;
      }
      remainder.push_back(std::move(terms[head]));
      ++head;
      continue;
    }
    const Polynomial<F>& g = basis[div->index];
    Monomial mult = div->lm.quotient_of(t.mono);
    auto c = k.neg(t.coeff);
    if (sugar) {
      unsigned s = mult.degree() + static_cast<unsigned>(std::max(g.degree(), 0));
      *sugar = std::max(*sugar, s);
    }
    // terms[head+1..] - t.coeff * mult * tail(g)
    const auto& gt = g.terms();
    scratch.clear();
    scratch.reserve(terms.size() - head - 1 + gt.size() - 1);
    std::size_t i = head + 1, j = 1;
    while (i < terms.size() || j < gt.size()) {
      if (j == gt.size()) {
        scratch.push_back(std::move(terms[i++]));
        continue;
      }
      Monomial mj = gt[j].mono * mult;
      if (i == terms.size()) {
        scratch.push_back({k.mul(c, gt[j].coeff), std::move(mj)});
        ++j;
        continue;
      }
      auto cmp = ord.compare_unchecked(terms[i].mono, mj);
      if (cmp > 0) {
        scratch.push_back(std::move(terms[i++]));
      } else if (cmp < 0) {
        scratch.push_back({k.mul(c, gt[j].coeff), std::move(mj)});
        ++j;
      } else {
        auto s = k.add(terms[i].coeff, k.mul(c, gt[j].coeff));
        if (!k.is_zero(s)) scratch.push_back({std::move(s), std::move(mj)});
        ++i;
        ++j;
      }
    }
    if (scratch.size() + remainder.size() > opts.max_poly_length) {
      throw ResourceLimit("polynomial length cap exceeded during reduction");
    }
    std::swap(terms, scratch);
    head = 0;
  }
  return remainder;
}

}  // namespace detail

/// Reduced, monic Gröbner basis sorted by ascending leading monomial.
template <class F>
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr<F> ring, std::vector<Polynomial<F>> elements)
      : ring_(std::move(ring)), elements_(std::move(elements)) {
    rebuild_index();
  }

  const RingPtr<F>& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_->order(); }
  const std::vector<Polynomial<F>>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant(); }
  bool is_zero_ideal() const { return elements_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> v;
    v.reserve(elements_.size());
    for (const auto& e : elements_) v.push_back(e.leading_monomial());
    return v;
  }

  Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerOptions& opts = {}) const {
    if (f.is_zero()) return f;
    check(f);
    auto rem = detail::reduce_terms<F>(f.terms(), elements_, leads_, ring_->field(), ring_->order(), opts);
    return Polynomial<F>::from_sorted(ring_, std::move(rem));
  }

  bool contains(const Polynomial<F>& f) const { return normal_form(f).is_zero(); }

  const std::vector<detail::LeadEntry>& lead_index() const { return leads_; }

 private:
  void check(const Polynomial<F>& f) const {
    if (f.ring() != ring_ && !f.ring()->same_shape(*ring_)) throw RingMismatch();
  }
  void rebuild_index() {
    leads_.clear();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const auto& lm = elements_[i].leading_monomial();
      leads_.push_back({lm, lm.support_mask(), i});
    }
  }

  RingPtr<F> ring_;
  std::vector<Polynomial<F>> elements_;
  std::vector<detail::LeadEntry> leads_;
};

/// S-polynomial of two nonzero polynomials.
template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  const auto& k = f.field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  auto a = f.times_term(k.inv(f.leading_coefficient()), f.leading_monomial().quotient_of(l));
  auto b = g.times_term(k.inv(g.leading_coefficient()), g.leading_monomial().quotient_of(l));
  return a - b;
}

/// Buchberger's algorithm with the product and chain criteria (Gebauer-Möller
/// installation) and the sugar selection strategy.
template <class F>
class Buchberger {
 public:
  Buchberger(RingPtr<F> ring, GroebnerOptions opts = {}) : ring_(std::move(ring)), opts_(opts) {}

  /// Starts from a known Gröbner basis; no pairs among its elements are formed.
  void seed(const GroebnerBasis<F>& gb) {
    for (const auto& e : gb.elements()) {
      std::size_t idx = store_.size();
      store_.push_back(e);
      sugar_.push_back(static_cast<unsigned>(std::max(e.degree(), 0)));
      active_.push_back(true);
      leads_.push_back({e.leading_monomial(), e.leading_monomial().support_mask(), idx});
    }
  }

  void add(const Polynomial<F>& f) {
    if (!f.is_zero()) inputs_.push_back(f.in_ring(ring_));
  }

  GroebnerBasis<F> run() {
    const auto& ord = ring_->order();
    std::stable_sort(inputs_.begin(), inputs_.end(), [&](const auto& a, const auto& b) {
      return ord.compare_unchecked(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    for (auto& f : inputs_) {
      unsigned s = static_cast<unsigned>(std::max(f.degree(), 0));
      insert_reduced(f.terms(), s);
      if (unit_found_) return unit_basis();
    }
    inputs_.clear();

    std::size_t processed = 0;
    while (!pairs_.empty()) {
      if (++processed > opts_.max_pairs) throw ResourceLimit("Buchberger pair cap exceeded");
      std::pop_heap(pairs_.begin(), pairs_.end(), PairAfter{&ord});
      Pair p = std::move(pairs_.back());
      pairs_.pop_back();
      auto sp = spoly_terms(p);
      insert_reduced(std::move(sp), p.sugar);
      if (unit_found_) return unit_basis();
    }
    return finalize();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };
  // Heap comparator: the top is the pair with the smallest sugar, then smallest lcm.
  struct PairAfter {
    const MonomialOrder* ord;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.sugar != b.sugar) return a.sugar > b.sugar;
      auto c = ord->compare_unchecked(a.lcm, b.lcm);
      if (c != 0) return c > 0;
      if (a.j != b.j) return a.j > b.j;
      return a.i > b.i;
    }
  };

  std::vector<Term<F>> spoly_terms(const Pair& p) const {
    const auto& f = store_[p.i];
    const auto& g = store_[p.j];
    auto a = f.times_term(ring_->field().one(), f.leading_monomial().quotient_of(p.lcm));
    auto b = g.times_term(ring_->field().one(), g.leading_monomial().quotient_of(p.lcm));
    return (a - b).terms();
  }

  void insert_reduced(std::vector<Term<F>> terms, unsigned sugar) {
    auto rem = detail::reduce_terms<F>(std::move(terms), store_, leads_, ring_->field(), ring_->order(), opts_,
                                       &sugar);
    if (rem.empty()) return;
    auto h = Polynomial<F>::from_sorted(ring_, std::move(rem)).monic();
    if (h.is_constant()) {
      unit_found_ = true;
      return;
    }
    update(std::move(h), sugar);
  }

  // Gebauer-Möller UPDATE.
  void update(Polynomial<F> h, unsigned sugar) {
    const auto& ord = ring_->order();
    const std::size_t hi = store_.size();
    const Monomial lm_h = h.leading_monomial();
    const unsigned deg_h = lm_h.degree();
    store_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      const Monomial& lm_g = store_[g].leading_monomial();
      cands.push_back({g, lm_h.lcm(lm_g), lm_h.coprime(lm_g)});
    }
    // Chain criterion among the new pairs: drop (h,g1) when some other new pair's
    // lcm properly divides lcm(h,g1); among equal lcms keep one, preferring a coprime one.
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (!cands[b].lcm.divides(cands[a].lcm)) continue;
        if (!(cands[b].lcm == cands[a].lcm)) {
          cands[a].keep = false;
          break;
        }
        // equal lcm
        if (cands[b].coprime && !cands[a].coprime) {
          cands[a].keep = false;
          break;
        }
        if (cands[b].coprime == cands[a].coprime && b < a) {
          cands[a].keep = false;
          break;
        }
      }
    }
    // Old pairs (g1,g2) made redundant by h.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      bool drop = lm_h.divides(p.lcm) &&
                  !(lm_h.lcm(store_[p.i].leading_monomial()) == p.lcm) &&
                  !(lm_h.lcm(store_[p.j].leading_monomial()) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    // Product criterion on the survivors; pairs of two monomials have zero S-polynomial.
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      if (store_[hi].is_monomial() && store_[c.g].is_monomial()) continue;
      const Monomial& lm_g = store_[c.g].leading_monomial();
      unsigned s = std::max(sugar + c.lcm.degree() - deg_h, sugar_[c.g] + c.lcm.degree() - lm_g.degree());
      pairs_.push_back({c.g, hi, c.lcm, s});
    }
    std::make_heap(pairs_.begin(), pairs_.end(), PairAfter{&ord});
    // Elements whose leading monomial h divides leave the active basis.
    leads_.clear();
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && lm_h.divides(store_[g].leading_monomial())) active_[g] = false;
    }
    for (std::size_t g = 0; g <= hi; ++g) {
      if (active_[g]) {
        const auto& lm = store_[g].leading_monomial();
        leads_.push_back({lm, lm.support_mask(), g});
      }
    }
    // Prefer low-degree reducers first.
    std::stable_sort(leads_.begin(), leads_.end(),
                     [](const auto& a, const auto& b) { return a.lm.degree() < b.lm.degree(); });
  }

  GroebnerBasis<F> unit_basis() const { return GroebnerBasis<F>(ring_, {Polynomial<F>::one(ring_)}); }

  GroebnerBasis<F> finalize() const {
    const auto& ord = ring_->order();
    std::vector<Polynomial<F>> basis;
    for (std::size_t g = 0; g < store_.size(); ++g) {
      if (active_[g]) basis.push_back(store_[g]);
    }
    std::sort(basis.begin(), basis.end(), [&](const auto& a, const auto& b) {
      return ord.compare_unchecked(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    // Interreduce tails against the (LM-minimal) basis.
    std::vector<detail::LeadEntry> leads;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& lm = basis[i].leading_monomial();
      leads.push_back({lm, lm.support_mask(), i});
    }
    std::vector<Polynomial<F>> reduced;
    reduced.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& t = basis[i].terms();
      std::vector<Term<F>> tail(t.begin() + 1, t.end());
      auto rem = detail::reduce_terms<F>(std::move(tail), basis, leads, ring_->field(), ord, opts_);
      std::vector<Term<F>> full;
      full.reserve(rem.size() + 1);
      full.push_back(t.front());
      for (auto& r : rem) full.push_back(std::move(r));
      reduced.push_back(Polynomial<F>::from_sorted(ring_, std::move(full)));
    }
    return GroebnerBasis<F>(ring_, std::move(reduced));
  }

  RingPtr<F> ring_;
  GroebnerOptions opts_;
  std::vector<Polynomial<F>> inputs_;
  std::vector<Polynomial<F>> store_;
  std::vector<unsigned> sugar_;
  std::vector<bool> active_;
  std::vector<detail::LeadEntry> leads_;
  std::vector<Pair> pairs_;
  bool unit_found_ = false;
};

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
template <class F>
GroebnerBasis<F> buchberger(const IdealGens<F>& gens, const MonomialOrder& order, const GroebnerOptions& opts = {}) {
  auto ring = gens.ring()->order() == order ? gens.ring() : gens.ring()->with_order(order);
  Buchberger<F> engine(ring, opts);
  for (const auto& g : gens) engine.add(g);
  return engine.run();
}

template <class F>
GroebnerBasis<F> buchberger(const IdealGens<F>& gens, const GroebnerOptions& opts = {}) {
  return buchberger(gens, gens.ring()->order(), opts);
}

/// Gröbner basis of `base` + `extra`, where `base` is already a Gröbner basis.
template <class F>
GroebnerBasis<F> buchberger_extend(const GroebnerBasis<F>& base, const std::vector<Polynomial<F>>& extra,
                                   const GroebnerOptions& opts = {}) {
  Buchberger<F> engine(base.ring(), opts);
  engine.seed(base);
  for (const auto& g : extra) engine.add(g);
  return engine.run();
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
  return gb.normal_form(f);
}

/// Buchberger's criterion: every S-polynomial of the basis reduces to zero.
template <class F>
bool satisfies_buchberger_criterion(const GroebnerBasis<F>& gb) {
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (!gb.normal_form(s_polynomial(el[i], el[j])).is_zero()) return false;
    }
  }
  return true;
}

/// Reduced: monic, and no term of any element divisible by another element's leading monomial.
template <class F>
bool is_reduced(const GroebnerBasis<F>& gb) {
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!el[i].field().is_one(el[i].leading_coefficient())) return false;
    for (std::size_t j = 0; j < el.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : el[i].terms()) {
        if (el[j].leading_monomial().divides(t.mono)) return false;
      }
    }
  }
  return true;
}

}  // namespace sallykit
