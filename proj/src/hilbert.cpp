#include "sallykit/hilbert.hpp"

#include <algorithm>
#include <string>

namespace sallykit {

mpz_class poly_binomial(const mpz_class& x, unsigned k) {
  mpz_class num = 1;
  mpz_class den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / den;
}

mpz_class evaluate_binomial_basis(const std::vector<mpz_class>& b, std::int64_t n) {
  mpz_class total = 0;
  for (unsigned k = 0; k < b.size(); ++k) {
    if (b[k] != 0) total += b[k] * poly_binomial(mpz_class(static_cast<long>(n + k) - 1), k);
  }
  return total;
}

mpz_class GradedFit::signed_coefficient(unsigned i) const {
  const unsigned D = bound();
  if (i > D) return 0;
  mpz_class c = coefficients[D - i];
  return (i % 2 == 0) ? c : mpz_class(-c);
}

namespace {

// Solves the square system A b = v over Q by Gauss-Jordan elimination.
std::vector<mpq_class> solve(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> v) {
  const std::size_t n = v.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular interpolation system");
    std::swap(A[piv], A[col]);
    std::swap(v[piv], v[col]);
    mpq_class inv = 1 / A[col][col];
    for (auto& a : A[col]) a *= inv;
    v[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      mpq_class f = A[r][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      v[r] -= f * v[col];
    }
  }
  return v;
}

}  // namespace

GradedFit fit_binomial(const Sequence& seq, unsigned bound, unsigned verify) {
  const std::size_t need = bound + 1;
  if (seq.values.size() < need) {
    throw Error("fit_binomial needs at least " + std::to_string(need) + " values, got " +
                std::to_string(seq.values.size()));
  }
  const std::int64_t hi = seq.last();
  const std::int64_t lo = hi - static_cast<std::int64_t>(bound);
  const std::int64_t vlo = std::max(seq.first(), lo - static_cast<std::int64_t>(verify));

  GradedFit fit;
  fit.fit_from = vlo;
  fit.fit_to = hi;
  fit.coefficients.assign(need, 0);

  bool all_zero = true;
  for (std::int64_t n = vlo; n <= hi; ++n) all_zero = all_zero && seq.at(n) == 0;
  if (all_zero) {
    fit.eventually_zero = true;
    fit.normalized_leading = 0;
    return fit;
  }

  std::vector<std::vector<mpq_class>> A(need, std::vector<mpq_class>(need));
  std::vector<mpq_class> v(need);
  for (std::size_t j = 0; j < need; ++j) {
    const std::int64_t n = lo + static_cast<std::int64_t>(j);
    for (unsigned k = 0; k < need; ++k) A[j][k] = poly_binomial(mpz_class(static_cast<long>(n + k) - 1), k);
    v[j] = mpq_class(static_cast<long>(seq.at(n)));
  }
  auto b = solve(std::move(A), std::move(v));
  for (unsigned k = 0; k < need; ++k) {
    b[k].canonicalize();
    if (b[k].get_den() != 1) throw FitError("window inside pre-postulation zone: non-integral coefficient");
    fit.coefficients[k] = b[k].get_num();
  }
  for (std::int64_t n = vlo; n < lo; ++n) {
    if (fit.evaluate(n) != seq.at(n)) {
      throw FitError("window inside pre-postulation zone: residual at n=" + std::to_string(n));
    }
  }
  for (int k = static_cast<int>(bound); k >= 0; --k) {
    if (fit.coefficients[static_cast<unsigned>(k)] != 0) {
      fit.degree = k;
      break;
    }
  }
  if (fit.degree < 0) throw FitError("window inside pre-postulation zone: zero fit of nonzero values");
  fit.normalized_leading = fit.coefficients[static_cast<unsigned>(fit.degree)];
  return fit;
}

mpz_class multiplicity_of_graded_function(const GradedFit& fit) {
  if (fit.eventually_zero) throw DomainError("zero/Artinian module has no multiplicity in positive degree");
  return fit.normalized_leading;
}

AdaptiveFit adaptive_fit(const std::function<std::int64_t(std::int64_t)>& f, std::int64_t first, unsigned bound,
                         const FitPolicy& policy) {
  const auto cap = static_cast<std::int64_t>(policy.max_power);
  std::int64_t N = policy.start != 0 ? policy.start : static_cast<std::int64_t>(bound) + 5;
  N = std::max(N, first + static_cast<std::int64_t>(bound + policy.verify));
  if (N > cap) {
    throw Error("postulation not reached by N=" + std::to_string(cap) + " (window needs N=" + std::to_string(N) + ")");
  }
  AdaptiveFit out;
  out.seq.offset = first;
  for (;;) {
    while (out.seq.last() < N) out.seq.values.push_back(f(out.seq.last() + 1));
    try {
      out.fit = fit_binomial(out.seq, bound, policy.verify);
      break;
    } catch (const FitError&) {
      if (N >= cap) throw Error("postulation not reached by N=" + std::to_string(cap));
      N = std::min(cap, (3 * N + 1) / 2);
    }
  }
  std::int64_t n0 = out.seq.last();
  while (n0 > out.seq.first() && out.fit.evaluate(n0 - 1) == out.seq.at(n0 - 1)) --n0;
  out.postulation_bound = n0;
  return out;
}

mpz_class HilbertCoefficients::polynomial(std::int64_t n) const {
  const auto d = static_cast<unsigned>(e.size()) - 1;
  mpz_class total = 0;
  for (unsigned i = 0; i <= d; ++i) {
    mpz_class term = e[i] * poly_binomial(mpz_class(static_cast<long>(n + d - i) - 1), d - i);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace sallykit
