#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/field.hpp"
#include "sallykit/monomial.hpp"

namespace sallykit {

/// Coefficient field, ordered variable names, and the active monomial order.
template <class F>
class PolyRing {
 public:
  PolyRing(F field, std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex())
      : field_(std::move(field)), names_(std::move(names)), order_(order) {
    if (names_.size() > kMaxVariables) {
      throw ResourceLimit("at most " + std::to_string(kMaxVariables) + " variables supported");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw DomainError("duplicate variable name " + names_[i]);
      }
    }
  }

  static std::shared_ptr<const PolyRing> make(F field, std::vector<std::string> names,
                                              MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const PolyRing>(std::move(field), std::move(names), order);
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t nvars() const { return names_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  /// Same field and variables, different order.
  std::shared_ptr<const PolyRing> with_order(MonomialOrder order) const {
    return make(field_, names_, order);
  }

  bool same_shape(const PolyRing& o) const {
    return field_ == o.field_ && names_ == o.names_ && order_ == o.order_;
  }

 private:
  F field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
struct Term {
  typename F::Element coeff;
  Monomial mono;
};

/// Sparse polynomial: nonzero terms, strictly descending in the ring's order.
template <class F>
class Polynomial {
 public:
  using Element = typename F::Element;
  using TermT = Term<F>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  /// Builds from arbitrary terms: sorts, combines duplicates, drops zeros.
  Polynomial(RingPtr<F> ring, std::vector<TermT> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial constant(RingPtr<F> ring, Element c) {
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({std::move(c), Monomial(ring->nvars())});
    return p;
  }
  static Polynomial one(RingPtr<F> ring) { return constant(ring, ring->field().one()); }
  static Polynomial variable(RingPtr<F> ring, std::size_t i) {
    return monomial(ring, Monomial::variable(ring->nvars(), i));
  }
  static Polynomial monomial(RingPtr<F> ring, Monomial m, std::optional<Element> c = std::nullopt) {
    Polynomial p(ring);
    Element coeff = c ? *c : ring->field().one();
    if (!ring->field().is_zero(coeff)) p.terms_.push_back({std::move(coeff), std::move(m)});
    return p;
  }

  /// Wraps terms already in canonical order (no checks beyond debug asserts).
  static Polynomial from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::vector<TermT>& mutable_terms() { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }

  const TermT& leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const Element& leading_coefficient() const { return leading_term().coeff; }

  /// Maximal total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
  }

  struct Homogeneity {
    bool homogeneous;
    std::optional<unsigned> degree;  // unset for the zero polynomial
  };
  /// All terms share one total degree. Zero counts as homogeneous of undefined degree.
  Homogeneity homogeneity() const {
    if (terms_.empty()) return {true, std::nullopt};
    unsigned d = terms_.front().mono.degree();
    for (const auto& t : terms_) {
      if (t.mono.degree() != d) return {false, std::nullopt};
    }
    return {true, d};
  }
  bool is_homogeneous() const { return homogeneity().homogeneous; }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }

  Polynomial operator*(const Polynomial& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return Polynomial(ring_);
    std::vector<TermT> out;
    out.reserve(terms_.size() * o.terms_.size());
    const F& k = field();
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) out.push_back({k.mul(a.coeff, b.coeff), a.mono * b.mono});
    }
    return Polynomial(ring_, std::move(out));
  }

  Polynomial scaled(const Element& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
    return r;
  }

  /// c * m * this; order is preserved by multiplicativity.
  Polynomial times_term(const Element& c, const Monomial& m) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({field().mul(t.coeff, c), t.mono * m});
    return r;
  }

  /// Leading coefficient one (zero stays zero).
  Polynomial monic() const {
    if (is_zero() || field().is_one(leading_coefficient())) return *this;
    return scaled(field().inv(leading_coefficient()));
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].mono == o.terms_[i].mono) || !field().equal(terms_[i].coeff, o.terms_[i].coeff)) {
        return false;
      }
    }
    return true;
  }

  /// Same polynomial under a different ring sharing the variable list (re-sorted).
  Polynomial in_ring(RingPtr<F> target) const {
    if (target->nvars() != ring_->nvars()) throw RingMismatch();
    return Polynomial(std::move(target), terms_);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    const F& k = field();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      std::string c = k.to_signed_string(terms_[i].coeff);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (i == 0) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      bool unit_coeff = (c == "1");
      if (terms_[i].mono.is_one()) {
        out += c;
      } else {
        if (!unit_coeff) out += c + "*";
        out += terms_[i].mono.to_string(ring_->names());
      }
    }
    return out;
  }

  void check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_ && !(ring_ && o.ring_ && ring_->same_shape(*o.ring_))) throw RingMismatch();
  }

 private:
  void canonicalize() {
    const MonomialOrder& ord = ring_->order();
    const F& k = ring_->field();
    std::sort(terms_.begin(), terms_.end(),
              [&](const TermT& a, const TermT& b) { return ord.greater(a.mono, b.mono); });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = k.add(out.back().coeff, t.coeff);
      } else {
        if (!out.empty() && k.is_zero(out.back().coeff)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && k.is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
  }

  Polynomial combine(const Polynomial& o, bool subtract) const {
    check_ring(o);
    const MonomialOrder& ord = ring_->order();
    const F& k = field();
    std::vector<TermT> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        out.push_back(terms_[i++]);
        continue;
      }
      Element bc = subtract ? k.neg(o.terms_[j].coeff) : o.terms_[j].coeff;
      if (i == terms_.size()) {
        out.push_back({std::move(bc), o.terms_[j++].mono});
        continue;
      }
      auto c = ord.compare_unchecked(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        out.push_back(terms_[i++]);
      } else if (c < 0) {
        out.push_back({std::move(bc), o.terms_[j++].mono});
      } else {
        Element s = k.add(terms_[i].coeff, bc);
        if (!k.is_zero(s)) out.push_back({std::move(s), terms_[i].mono});
        ++i;
        ++j;
      }
    }
    return from_sorted(ring_, std::move(out));
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

template <class F>
Polynomial<F> poly_add(const Polynomial<F>& f, const Polynomial<F>& g) {
  return f + g;
}
template <class F>
Polynomial<F> poly_mul(const Polynomial<F>& f, const Polynomial<F>& g) {
  return f * g;
}

/// Exact quotient h / g when g divides h; throws DomainError otherwise.
template <class F>
Polynomial<F> divide_exact(const Polynomial<F>& h, const Polynomial<F>& g) {
  h.check_ring(g);
  if (g.is_zero()) throw DomainError("division by zero polynomial");
  const F& k = h.field();
  Polynomial<F> rest = h;
  std::vector<Term<F>> quotient;
  const auto& lt = g.leading_term();
  auto lc_inv = k.inv(lt.coeff);
  while (!rest.is_zero()) {
    const auto& top = rest.leading_term();
    if (!lt.mono.divides(top.mono)) throw DomainError("inexact polynomial division");
    Monomial q = lt.mono.quotient_of(top.mono);
    auto c = k.mul(top.coeff, lc_inv);
    quotient.push_back({c, q});
    rest = rest - g.times_term(c, q);
  }
  return Polynomial<F>::from_sorted(h.ring(), std::move(quotient));
}

}  // namespace sallykit
