#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sallykit/error.hpp"

namespace sallykit {

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector. Slots past size() are always zero, so order
/// comparisons can scan the full array without knowing the ring.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : size_(check_size(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : Monomial(std::vector<unsigned>(exps)) {}
  explicit Monomial(const std::vector<unsigned>& exps) : size_(check_size(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  static Monomial variable(std::size_t nvars, std::size_t index) {
    Monomial m(nvars);
    m.set(index, 1);
    return m;
  }

  std::size_t size() const { return size_; }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }

  void set(std::size_t i, unsigned e) {
    if (i >= size_) throw DomainError("variable index out of range");
    if (e > 0xFFFF) throw ResourceLimit("exponent overflow");
    degree_ = degree_ - exp_[i] + e;
    exp_[i] = static_cast<Exponent>(e);
  }

  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    r.size_ = std::max(size_, o.size_);
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned e = unsigned(exp_[i]) + o.exp_[i];
      if (e > 0xFFFF) throw ResourceLimit("exponent overflow");
      r.exp_[i] = static_cast<Exponent>(e);
    }
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  /// this | o
  bool divides(const Monomial& o) const {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (exp_[i] > o.exp_[i]) return false;
    }
    return true;
  }

  /// o / this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp_[i] = o.exp_[i] - exp_[i];
    r.degree_ = o.degree_ - degree_;
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r(*this);
    r.size_ = std::max(size_, o.size_);
    unsigned deg = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      r.exp_[i] = std::max(exp_[i], o.exp_[i]);
      deg += r.exp_[i];
    }
    r.degree_ = deg;
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    }
    return true;
  }

  /// Bit i set iff variable i occurs; a necessary condition for divisibility.
  std::uint32_t support_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (exp_[i] != 0) mask |= 1u << i;
    }
    return mask;
  }

  bool operator==(const Monomial& o) const { return exp_ == o.exp_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  /// Renders as `X^2*Z` using the given names; `1` for the unit monomial.
  std::string to_string(std::span<const std::string> names) const;

 private:
  static std::uint8_t check_size(std::size_t n) {
    if (n > kMaxVariables) {
      throw ResourceLimit("at most " + std::to_string(kMaxVariables) + " variables supported");
    }
    return static_cast<std::uint8_t>(n);
  }

  std::array<Exponent, kMaxVariables> exp_{};
  unsigned degree_ = 0;
  std::uint8_t size_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded reverse lexicographic, lexicographic, or a two-block elimination
/// order whose first block holds the first `block` variables.
class MonomialOrder {
 public:
  enum class Kind { kGrevlex, kLex, kBlockElimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::kGrevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::kLex, 0); }
  static MonomialOrder block_elimination(std::size_t k) {
    return MonomialOrder(Kind::kBlockElimination, k);
  }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  std::string name() const;

  /// Three-way comparison; throws DomainError on a size mismatch.
  std::strong_ordering compare(const Monomial& u, const Monomial& v) const {
    if (u.size() != v.size()) throw DomainError("monomial length mismatch");
    return compare_unchecked(u, v);
  }

  std::strong_ordering compare_unchecked(const Monomial& u, const Monomial& v) const {
    switch (kind_) {
      case Kind::kGrevlex:
        if (u.degree() != v.degree()) return u.degree() <=> v.degree();
        return revlex(u, v, 0, kMaxVariables);
      case Kind::kLex:
        for (std::size_t i = 0; i < kMaxVariables; ++i) {
          if (u[i] != v[i]) return u[i] <=> v[i];
        }
        return std::strong_ordering::equal;
      case Kind::kBlockElimination: {
        unsigned du = 0, dv = 0;
        for (std::size_t i = 0; i < block_; ++i) {
          du += u[i];
          dv += v[i];
        }
        if (du != dv) return du <=> dv;
        if (auto c = revlex(u, v, 0, block_); c != 0) return c;
        if (u.degree() - du != v.degree() - dv) return (u.degree() - du) <=> (v.degree() - dv);
        return revlex(u, v, block_, kMaxVariables);
      }
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Monomial& u, const Monomial& v) const { return compare_unchecked(u, v) > 0; }

  bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && block_ == o.block_; }

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  // Within [lo, hi) and assuming equal degree there: the monomial with the
  // smaller exponent in the last differing variable is larger.
  static std::strong_ordering revlex(const Monomial& u, const Monomial& v, std::size_t lo,
                                     std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;) {
      if (u[i] != v[i]) return v[i] <=> u[i];
    }
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::size_t block_;
};

}  // namespace sallykit
