#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include "sallykit/error.hpp"

namespace sallykit {

/// The prime field F_p with representatives in [0, p). p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  static constexpr std::uint32_t kDefaultPrime = 32003;

  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) {
      throw DomainError("modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
  }

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "fp:" + std::to_string(p_); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw DomainError("division by zero in " + name());
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element from_integer(const mpz_class& n) const {
    mpz_class r = n % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.get_ui());
  }
  Element from_integer(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element from_rational(const mpq_class& q) const {
    return div(from_integer(q.get_num()), from_integer(q.get_den()));
  }

  /// Uniform element of F_p \ {0}.
  Element random_nonzero(std::mt19937_64& rng) const {
    return static_cast<Element>(rng() % (p_ - 1) + 1);
  }

  std::string to_string(Element a) const { return std::to_string(a); }
  /// Signed representative in (-p/2, p/2], used for printing.
  std::string to_signed_string(Element a) const {
    if (a > p_ / 2) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }

  bool operator==(const PrimeField& other) const { return p_ == other.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint32_t p_;
};

/// The rational numbers with arbitrary-precision numerator and denominator.
class RationalField {
 public:
  using Element = mpq_class;

  std::string name() const { return "q"; }
  std::uint32_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  // mpq_class expression templates canonicalize on assignment.
  Element add(const Element& a, const Element& b) const { return Element(a + b); }
  Element sub(const Element& a, const Element& b) const { return Element(a - b); }
  Element neg(const Element& a) const { return Element(-a); }
  Element mul(const Element& a, const Element& b) const { return Element(a * b); }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw DomainError("division by zero in q");
    return Element(1 / a);
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  Element from_integer(const mpz_class& n) const { return Element(n); }
  Element from_integer(std::int64_t n) const { return Element(mpz_class(std::to_string(n))); }
  Element from_rational(const mpq_class& q) const { return q; }

  /// Nonzero integer in [-1000, 1000]. Small heights keep Buchberger over Q tractable.
  Element random_nonzero(std::mt19937_64& rng) const {
    std::int64_t v = static_cast<std::int64_t>(rng() % 2000) - 1000;
    if (v >= 0) ++v;
    return from_integer(v);
  }

  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string to_signed_string(const Element& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
};

}  // namespace sallykit
