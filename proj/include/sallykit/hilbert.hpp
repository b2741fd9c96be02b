#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "sallykit/error.hpp"
#include "sallykit/ring.hpp"

namespace sallykit {

/// Thrown when a window of values is not yet polynomial (verification residual
/// or non-integral solution).
class FitError : public Error {
 public:
  using Error::Error;
};

/// Integer sequence f(offset), f(offset + 1), ...
struct Sequence {
  std::int64_t offset = 1;
  std::vector<std::int64_t> values;

  std::int64_t first() const { return offset; }
  std::int64_t last() const { return offset + static_cast<std::int64_t>(values.size()) - 1; }
  std::int64_t at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n - offset)); }
};

/// C(x, k) for any integer x, as the polynomial x(x-1)...(x-k+1)/k!.
mpz_class poly_binomial(const mpz_class& x, unsigned k);

/// Value of Σ_k b_k C(n+k-1, k).
mpz_class evaluate_binomial_basis(const std::vector<mpz_class>& b, std::int64_t n);

/// Result of fitting a sequence by Σ_{k=0}^{D} b_k C(n+k-1, k).
struct GradedFit {
  bool eventually_zero = false;
  int degree = -1;                      // δ, the largest k with b_k != 0; -1 when eventually zero
  std::vector<mpz_class> coefficients;  // b_0..b_D, indexed by k
  mpz_class normalized_leading;         // δ! × leading coefficient = b_δ
  std::int64_t fit_from = 0;            // first n used (fit or verification)
  std::int64_t fit_to = 0;              // last n used

  unsigned bound() const { return static_cast<unsigned>(coefficients.size()) - 1; }
  /// (-1)^i b_{D-i}: the coefficient of C(n+D-1-i, D-i) with alternating sign stripped.
  mpz_class signed_coefficient(unsigned i) const;
  mpz_class evaluate(std::int64_t n) const { return evaluate_binomial_basis(coefficients, n); }
};

/// Fits the last D+1 values and verifies on up to `verify` preceding values.
/// Throws FitError on a residual or a non-integral coefficient.
GradedFit fit_binomial(const Sequence& seq, unsigned bound, unsigned verify = 3);

/// δ! × leading coefficient. Throws DomainError on an eventually-zero fit.
mpz_class multiplicity_of_graded_function(const GradedFit& fit);

struct FitPolicy {
  unsigned max_power = 30;  // cap on the horizon N
  unsigned verify = 3;
  unsigned start = 0;       // initial horizon; 0 picks D + 5
};

/// Sequence with a fit that verified, plus the horizon reached.
struct AdaptiveFit {
  Sequence seq;
  GradedFit fit;
  std::int64_t postulation_bound = 0;  // smallest n0 with fit(n) = f(n) for all computed n >= n0
};

/// Evaluates f on first..N, fits with degree bound D, and grows N by ×1.5
/// (rounded up) until verification passes. Values are evaluated once each.
AdaptiveFit adaptive_fit(const std::function<std::int64_t(std::int64_t)>& f, std::int64_t first, unsigned bound,
                         const FitPolicy& policy);

template <class F>
struct LengthTable {
  RIdeal<F> ideal;
  std::map<std::int64_t, std::int64_t> values;  // n ↦ λ(R/I^n)
  std::int64_t N = 0;
};

struct HilbertCoefficients {
  std::vector<mpz_class> e;  // e_0..e_d
  std::int64_t postulation_bound = 0;
  std::int64_t verified_through = 0;

  /// Σ (-1)^i e_i C(n+d-1-i, d-i).
  mpz_class polynomial(std::int64_t n) const;
};

template <class F>
struct HilbertSamuel {
  LengthTable<F> table;
  HilbertCoefficients coefficients;
};

/// Hilbert coefficients of the I-adic filtration of R.
template <class F>
HilbertSamuel<F> hilbert_samuel(const RingPresentation<F>& R, const RIdeal<F>& I, const FitPolicy& policy = {}) {
  if (auto chart = R.chart_for(I.gens())) {
    auto out = hilbert_samuel(*chart->ring, chart->map(I), policy);
    out.table.ideal = I;
    return out;
  }
  if (!R.is_m_primary(I)) throw DomainError("hilbert_samuel requires an m-primary ideal");
  const unsigned d = static_cast<unsigned>(R.dim());
  auto result = adaptive_fit([&](std::int64_t n) { return R.length(R.power(I, static_cast<unsigned>(n))); }, 1, d,
                             policy);
  if (result.fit.degree != static_cast<int>(d)) {
    throw Error("Hilbert-Samuel polynomial has degree " + std::to_string(result.fit.degree) + ", expected " +
                std::to_string(d));
  }
  HilbertSamuel<F> out;
  out.table.ideal = I;
  for (std::int64_t n = result.seq.first(); n <= result.seq.last(); ++n) out.table.values[n] = result.seq.at(n);
  out.table.N = result.seq.last();
  for (unsigned i = 0; i <= d; ++i) out.coefficients.e.push_back(result.fit.signed_coefficient(i));
  out.coefficients.postulation_bound = result.postulation_bound;
  out.coefficients.verified_through = result.seq.last();
  return out;
}

}  // namespace sallykit
