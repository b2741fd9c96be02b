#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sallykit/ideal.hpp"

namespace sallykit {

template <class F>
class RingPresentation;

template <class F>
struct LinearChart;

/// An ideal of R = S/a, stored by a lift to S. Generators are kept reduced
/// modulo a, homogeneous, monic, and linearly independent.
template <class F>
class RIdeal {
 public:
  RIdeal() = default;

  const IdealGens<F>& lift() const { return lift_; }
  const std::vector<Polynomial<F>>& gens() const { return lift_.gens(); }
  std::size_t size() const { return lift_.size(); }
  bool is_zero() const { return lift_.empty(); }
  /// Stable textual identity of the generator list; used as a cache key.
  const std::string& key() const { return key_; }
  std::string to_string() const { return lift_.to_string(); }

 private:
  friend class RingPresentation<F>;
  RIdeal(IdealGens<F> lift, std::string key) : lift_(std::move(lift)), key_(std::move(key)) {}

  IdealGens<F> lift_;
  std::string key_;
};

namespace detail {

/// Row-echelon form of a list of polynomials under scalar operations only:
/// distinct leading monomials, monic, same linear span.
template <class F>
std::vector<Polynomial<F>> linear_echelon(std::vector<Polynomial<F>> polys) {
  if (polys.empty()) return polys;
  const auto& ring = polys.front().ring();
  const auto& ord = ring->order();
  std::vector<Polynomial<F>> pivots;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivot_of;
  std::sort(polys.begin(), polys.end(), [&](const auto& a, const auto& b) {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() && b.is_zero();
    return ord.compare_unchecked(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  for (auto& p : polys) {
    Polynomial<F> cur = p;
    std::size_t idx = 0;
    // Eliminate every term that is a pivot, scanning from the top.
    while (idx < cur.size()) {
      const auto& t = cur.terms()[idx];
      auto it = pivot_of.find(t.mono);
      if (it == pivot_of.end()) {
        ++idx;
        continue;
      }
      cur = cur - pivots[it->second].scaled(t.coeff);
    }
    if (cur.is_zero()) continue;
    cur = cur.monic();
    pivot_of.emplace(cur.leading_monomial(), pivots.size());
    pivots.push_back(std::move(cur));
  }
  return pivots;
}

}  // namespace detail

/// Graded presentation R = (S/a) localized at the irrelevant ideal. Lengths of
/// graded Artinian quotients are computed as vector-space dimensions.
template <class F>
class RingPresentation {
 public:
  RingPresentation(RingPtr<F> ambient, IdealGens<F> defining, GroebnerOptions opts = {})
      : ambient_(std::move(ambient)), defining_(std::move(defining)), opts_(opts) {
    for (const auto& g : defining_) {
      if (!g.is_homogeneous()) throw DomainError("graded input required: " + g.to_string() + " is not homogeneous");
    }
    defining_gb_ = buchberger_extend(GroebnerBasis<F>(ambient_, {}), defining_.gens(), opts_);
    if (defining_gb_.is_unit()) throw DomainError("defining ideal is the unit ideal");
    dim_ = krull_dimension(defining_gb_);
    if (dim_ == 0) throw DomainError("positive Krull dimension required (d > 0)");
    std::vector<Polynomial<F>> vars;
    for (std::size_t i = 0; i < ambient_->nvars(); ++i) vars.push_back(Polynomial<F>::variable(ambient_, i));
    maximal_ = ideal(vars);
  }

  static std::shared_ptr<const RingPresentation> make(RingPtr<F> ambient, IdealGens<F> defining,
                                                      GroebnerOptions opts = {}) {
    return std::make_shared<const RingPresentation>(std::move(ambient), std::move(defining), opts);
  }

  const RingPtr<F>& ambient() const { return ambient_; }
  const F& field() const { return ambient_->field(); }
  const IdealGens<F>& defining() const { return defining_; }
  const GroebnerBasis<F>& defining_basis() const { return defining_gb_; }
  std::size_t dim() const { return dim_; }
  const GroebnerOptions& options() const { return opts_; }
  const RIdeal<F>& maximal_ideal() const { return maximal_; }

  /// R-ideal generated by the images of `gens`; all must be homogeneous.
  RIdeal<F> ideal(const std::vector<Polynomial<F>>& gens) const {
    std::vector<Polynomial<F>> reduced;
    reduced.reserve(gens.size());
    for (const auto& g : gens) {
      if (!g.is_homogeneous()) throw DomainError("graded input required: " + g.to_string() + " is not homogeneous");
      auto r = defining_gb_.normal_form(g.in_ring(ambient_), opts_);
      if (!r.is_zero()) reduced.push_back(std::move(r));
    }
    auto echelon = detail::linear_echelon(std::move(reduced));
    const auto& ord = ambient_->order();
    std::sort(echelon.begin(), echelon.end(), [&](const auto& a, const auto& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return ord.compare_unchecked(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    std::string key;
    for (const auto& g : echelon) {
      key += g.to_string();
      key += ';';
    }
    return RIdeal<F>(IdealGens<F>(ambient_, std::move(echelon)), std::move(key));
  }

  RIdeal<F> ideal(const IdealGens<F>& gens) const { return ideal(gens.gens()); }

  /// Gröbner basis of a + lift(I); memoized per ideal.
  std::shared_ptr<const GroebnerBasis<F>> basis(const RIdeal<F>& I) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = basis_cache_.find(I.key()); it != basis_cache_.end()) return it->second;
    }
    auto gb = std::make_shared<const GroebnerBasis<F>>(buchberger_extend(defining_gb_, I.gens(), opts_));
    std::lock_guard lock(mutex_);
    return basis_cache_.emplace(I.key(), gb).first->second;
  }

  /// Drops cached Gröbner bases (lengths stay cached).
  void clear_basis_cache() const {
    std::lock_guard lock(mutex_);
    basis_cache_.clear();
  }

  /// λ(R/I) for an 𝔪-primary I.
  std::int64_t length(const RIdeal<F>& I) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = length_cache_.find(I.key()); it != length_cache_.end()) return it->second;
    }
    auto gb = buchberger_extend(defining_gb_, I.gens(), opts_);
    if (gb.is_unit()) {
      throw DomainError("not m-primary: the ideal is the unit ideal");
    }
    if (krull_dimension(gb) != 0) throw DomainError("not m-primary: R/I has positive dimension");
    std::int64_t len = vector_space_dimension(gb);
    std::lock_guard lock(mutex_);
    length_cache_.emplace(I.key(), len);
    return len;
  }

  /// R/I has finite length and I is proper.
  bool is_m_primary(const RIdeal<F>& I) const {
    if (!contained_in_maximal(I)) return false;
    auto gb = basis(I);
    return !gb->is_unit() && krull_dimension(*gb) == 0;
  }

  /// Every generator has positive degree.
  bool contained_in_maximal(const RIdeal<F>& I) const {
    return std::all_of(I.gens().begin(), I.gens().end(), [](const auto& g) { return g.degree() > 0; });
  }

  /// K ⊆ I in R.
  bool contains(const RIdeal<F>& I, const RIdeal<F>& K) const {
    auto gb = basis(I);
    return std::all_of(K.gens().begin(), K.gens().end(), [&](const auto& g) { return gb->contains(g); });
  }

  bool equal(const RIdeal<F>& I, const RIdeal<F>& K) const { return contains(I, K) && contains(K, I); }

  RIdeal<F> sum(const RIdeal<F>& I, const RIdeal<F>& K) const {
    auto gens = I.gens();
    gens.insert(gens.end(), K.gens().begin(), K.gens().end());
    return ideal(gens);
  }

  RIdeal<F> product(const RIdeal<F>& I, const RIdeal<F>& K) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = product_cache_.find(I.key() + "|" + K.key()); it != product_cache_.end()) return it->second;
    }
    std::vector<Polynomial<F>> gens;
    gens.reserve(I.size() * K.size());
    for (const auto& f : I.gens()) {
      for (const auto& g : K.gens()) gens.push_back(f * g);
    }
    auto r = ideal(gens);
    std::lock_guard lock(mutex_);
    return product_cache_.emplace(I.key() + "|" + K.key(), r).first->second;
  }

  /// I^n for n >= 0 (I^0 = R).
  RIdeal<F> power(const RIdeal<F>& I, unsigned n) const {
    if (n == 0) return ideal({Polynomial<F>::one(ambient_)});
    RIdeal<F> r = I;
    for (unsigned i = 1; i < n; ++i) r = product(r, I);
    return r;
  }

  /// The same ring in coordinates where the given linear forms are variables.
  /// Returns nullptr when the forms are not all linear or already variables.
  std::shared_ptr<const LinearChart<F>> chart_for(const std::vector<Polynomial<F>>& forms) const;

  /// (a + I) : (a + K), as an R-ideal.
  RIdeal<F> colon(const RIdeal<F>& I, const RIdeal<F>& K) const {
    IdealGens<F> num(ambient_, defining_gb_.elements());
    for (const auto& g : I.gens()) num.push_back(g);
    return ideal(ideal_colon(num, K.lift(), opts_));
  }

 private:
  RingPtr<F> ambient_;
  IdealGens<F> defining_;
  GroebnerOptions opts_;
  GroebnerBasis<F> defining_gb_;
  std::size_t dim_ = 0;
  RIdeal<F> maximal_;

  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::shared_ptr<const GroebnerBasis<F>>> basis_cache_;
  mutable std::unordered_map<std::string, std::int64_t> length_cache_;
  mutable std::unordered_map<std::string, RIdeal<F>> product_cache_;
  mutable std::unordered_map<std::string, std::shared_ptr<const LinearChart<F>>> chart_cache_;
};

namespace detail {

/// f(images[0], ..., images[n-1]) in the ring S.
template <class F>
Polynomial<F> substitute(const Polynomial<F>& f, const std::vector<Polynomial<F>>& images, const RingPtr<F>& S) {
  std::vector<std::vector<Polynomial<F>>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial<F>& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Polynomial<F>::one(S));
    while (p.size() <= e) p.push_back(p.back() * images[i]);
    return p[e];
  };
  Polynomial<F> out(S);
  for (const auto& t : f.terms()) {
    Polynomial<F> term = Polynomial<F>::constant(S, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    }
    out = out + term;
  }
  return out;
}

}  // namespace detail

/// A linear change of coordinates y = Mx. The chart ring is S/φ(a), where φ
/// substitutes for each x_i its expression in y; lengths of corresponding
/// ideals agree.
template <class F>
struct LinearChart {
  std::shared_ptr<const RingPresentation<F>> ring;
  std::vector<Polynomial<F>> images;  // φ(x_i), linear forms in y

  Polynomial<F> map(const Polynomial<F>& f) const { return detail::substitute(f, images, ring->ambient()); }

  RIdeal<F> map(const RIdeal<F>& I) const {
    std::vector<Polynomial<F>> gens;
    gens.reserve(I.size());
    for (const auto& g : I.gens()) gens.push_back(map(g));
    return ring->ideal(gens);
  }
};

template <class F>
std::shared_ptr<const LinearChart<F>> RingPresentation<F>::chart_for(const std::vector<Polynomial<F>>& forms) const {
  if (forms.empty()) return nullptr;
  for (const auto& f : forms) {
    if (f.is_zero() || f.degree() != 1 || !f.is_homogeneous()) return nullptr;
  }
  auto lin = detail::linear_echelon(forms);
  const std::size_t n = ambient_->nvars();
  const std::size_t d = lin.size();
  if (d != forms.size()) return nullptr;
  // Already the trailing variables: nothing to do.
  bool trailing = true;
  for (std::size_t j = 0; j < d; ++j) {
    trailing = trailing && lin[j].size() == 1 && lin[j].leading_monomial() == Monomial::variable(n, n - d + j);
  }
  if (trailing) return nullptr;
  std::string key;
  for (const auto& f : lin) key += f.to_string() + ";";
  {
    std::lock_guard lock(mutex_);
    if (auto it = chart_cache_.find(key); it != chart_cache_.end()) return it->second;
  }

  const F& k = field();
  using E = typename F::Element;
  auto var_of = [](const Monomial& m) {
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    return v;
  };
  // New coordinates y = Mx: the non-pivot variables in order, then the forms,
  // so the forms become the trailing (smallest in grevlex) variables.
  std::vector<bool> pivot(n, false);
  for (const auto& f : lin) pivot[var_of(f.leading_monomial())] = true;
  std::vector<std::vector<E>> M;
  for (std::size_t v = 0; v < n; ++v) {
    if (pivot[v]) continue;
    M.emplace_back(n, k.zero());
    M.back()[v] = k.one();
  }
  for (const auto& f : lin) {
    M.emplace_back(n, k.zero());
    for (const auto& t : f.terms()) M.back()[var_of(t.mono)] = t.coeff;
  }
  // Gauss-Jordan on [M | I].
  std::vector<std::vector<E>> inv(n, std::vector<E>(n, k.zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = k.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && k.is_zero(M[piv][col])) ++piv;
    if (piv == n) return nullptr;
    std::swap(M[piv], M[col]);
    std::swap(inv[piv], inv[col]);
    E scale = k.inv(M[col][col]);
    for (std::size_t c = 0; c < n; ++c) {
      M[col][c] = k.mul(M[col][c], scale);
      inv[col][c] = k.mul(inv[col][c], scale);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || k.is_zero(M[r][col])) continue;
      E factor = M[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        M[r][c] = k.sub(M[r][c], k.mul(factor, M[col][c]));
        inv[r][c] = k.sub(inv[r][c], k.mul(factor, inv[col][c]));
      }
    }
  }
  auto chart = std::make_shared<LinearChart<F>>();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term<F>> terms;
    for (std::size_t c = 0; c < n; ++c) {
      if (!k.is_zero(inv[i][c])) terms.push_back({inv[i][c], Monomial::variable(n, c)});
    }
    chart->images.emplace_back(ambient_, std::move(terms));
  }
  IdealGens<F> mapped(ambient_);
  for (const auto& g : defining_basis().elements()) mapped.push_back(detail::substitute(g, chart->images, ambient_));
  chart->ring = RingPresentation<F>::make(ambient_, std::move(mapped), opts_);
  std::lock_guard lock(mutex_);
  return chart_cache_.emplace(key, chart).first->second;
}

template <class F>
using RingHandle = std::shared_ptr<const RingPresentation<F>>;

template <class F>
RingHandle<F> make_ring(RingPtr<F> ambient, IdealGens<F> defining, GroebnerOptions opts = {}) {
  return RingPresentation<F>::make(std::move(ambient), std::move(defining), opts);
}

template <class F>
std::int64_t length(const RingPresentation<F>& R, const RIdeal<F>& I) {
  return R.length(I);
}

template <class F>
bool is_m_primary(const RingPresentation<F>& R, const RIdeal<F>& I) {
  return R.is_m_primary(I);
}

/// μ(I) = λ(I/𝔪I) = λ(R/𝔪I) - λ(R/I).
template <class F>
std::int64_t mu(const RingPresentation<F>& R, const RIdeal<F>& I) {
  if (!R.contained_in_maximal(I)) throw DomainError("mu requires I inside the maximal ideal");
  return R.length(R.product(R.maximal_ideal(), I)) - R.length(I);
}

/// H⁰_𝔪(R) = (a : 𝔪^∞)/a, represented by its lift, with its length.
template <class F>
struct H0Report {
  RIdeal<F> ideal;
  IdealGens<F> saturation;  // a : 𝔪^∞ in S
  std::int64_t length = 0;
};

/// Sum over degrees of HF_{S/a}(t) - HF_{S/sat}(t). Both Hilbert functions are
/// polynomial past the degree of the lcm of all leading monomials, and their
/// difference vanishes eventually, so summing through that degree is exact.
inline std::int64_t hilbert_function_difference(const std::vector<Monomial>& small, const std::vector<Monomial>& big,
                                                std::size_t nvars) {
  Monomial l(nvars);
  for (const auto& m : small) l = l.lcm(m);
  for (const auto& m : big) l = l.lcm(m);
  const unsigned top = l.degree() + 1;
  auto count = [&](const std::vector<Monomial>& lms) {
    std::vector<std::int64_t> counts(top + 1, 0);
    std::vector<Monomial> level{Monomial(nvars)};
    auto standard = [&](const Monomial& m) {
      std::uint32_t mask = m.support_mask();
      for (const auto& g : lms) {
        if ((g.support_mask() & ~mask) == 0 && g.divides(m)) return false;
      }
      return true;
    };
    if (!standard(level[0])) return counts;
    for (unsigned t = 0; t <= top && !level.empty(); ++t) {
      counts[t] = static_cast<std::int64_t>(level.size());
      std::vector<Monomial> next;
      for (const auto& m : level) {
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
  };
  auto a = count(small);
  auto b = count(big);
  std::int64_t total = 0;
  for (unsigned t = 0; t <= top; ++t) total += a[t] - b[t];
  return total;
}

template <class F>
H0Report<F> h0(const RingPresentation<F>& R) {
  IdealGens<F> a(R.ambient(), R.defining_basis().elements());
  auto sat = saturation(a, R.maximal_ideal().lift(), R.options());
  auto sat_gb = buchberger(sat, R.options());
  std::int64_t len = hilbert_function_difference(R.defining_basis().leading_monomials(), sat_gb.leading_monomials(),
                                                 R.ambient()->nvars());
  return {R.ideal(sat), IdealGens<F>(R.ambient(), sat_gb.elements()), len};
}

}  // namespace sallykit
