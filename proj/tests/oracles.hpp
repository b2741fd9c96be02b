#pragma once

// Brute-force references kept independent of the Gröbner engine.

#include <cstdint>
#include <map>
#include <vector>

#include "sallykit/polynomial.hpp"

namespace sallykit::testing {

inline std::vector<Monomial> all_monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      cur.set(i, left);
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur.set(i, e);
      self(self, i + 1, left - e);
    }
    cur.set(i, 0);
  };
  if (nvars == 0) return {Monomial(0)};
  rec(rec, 0, degree);
  return out;
}

/// Rank of a dense matrix over F_p by plain Gaussian elimination.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  auto inv = [p](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    std::uint64_t iv = inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = static_cast<std::uint32_t>(x * iv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      std::uint64_t f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

/// dim_k S/a for a homogeneous Artinian ideal: in each degree t, rank of the
/// Macaulay matrix of all monomial multiples of the generators, until S_t ⊆ a.
inline std::int64_t macaulay_matrix_colength(const std::vector<Polynomial<PrimeField>>& gens, std::size_t nvars,
                                             unsigned max_degree = 64) {
  const std::uint32_t p = gens.empty() ? 32003 : gens[0].field().characteristic();
  std::int64_t total = 0;
  for (unsigned t = 0; t <= max_degree; ++t) {
    auto cols = all_monomials_of_degree(nvars, t);
    std::map<std::vector<unsigned>, std::size_t> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::vector<unsigned> key(nvars);
      for (std::size_t v = 0; v < nvars; ++v) key[v] = cols[i][v];
      col_index[key] = i;
    }
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& g : gens) {
      int dg = g.degree();
      if (dg < 0 || static_cast<unsigned>(dg) > t) continue;
      for (const auto& m : all_monomials_of_degree(nvars, t - static_cast<unsigned>(dg))) {
        std::vector<std::uint32_t> row(cols.size(), 0);
        for (const auto& term : g.terms()) {
          Monomial prod = term.mono * m;
          std::vector<unsigned> key(nvars);
          for (std::size_t v = 0; v < nvars; ++v) key[v] = prod[v];
          row[col_index.at(key)] = term.coeff;
        }
        rows.push_back(std::move(row));
      }
    }
    std::size_t rank = rank_mod_p(std::move(rows), p);
    std::int64_t quotient = static_cast<std::int64_t>(cols.size() - rank);
    if (quotient == 0) return total;
    total += quotient;
  }
  return -1;
}

inline mpz_class binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace sallykit::testing
