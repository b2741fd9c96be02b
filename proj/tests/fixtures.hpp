#pragma once

#include "helpers.hpp"
#include "sallykit/ring.hpp"

namespace sallykit::testing {

inline RingHandle<Fp> regular_ring(std::vector<std::string> names = {"x", "y"}) {
  auto S = fp_ring(std::move(names));
  return make_ring(S, IdealGens<Fp>(S));
}

/// S/((X^2,Y) ∩ (Z,W)), two planes meeting at the vertex.
inline RingHandle<Fp> example_2_2_ring() {
  auto S = fp_ring({"X", "Y", "Z", "W"});
  auto a = ideal_intersection(ideal(S, {"X^2", "Y"}), ideal(S, {"Z", "W"}));
  return make_ring(S, a);
}

/// Affine cone over the curve (s^4, s^3u, su^3, u^4).
inline RingHandle<Fp> macaulay_ring() {
  auto S = fp_ring({"X0", "X1", "X2", "X3"});
  auto a = implicitize_monomial_map<Fp>({{4, 0}, {3, 1}, {1, 3}, {0, 4}}, S);
  return make_ring(S, a);
}

inline RingHandle<Fp> example_3_6_ring() {
  auto S = fp_ring({"X1", "X2", "X3", "X4", "V", "A1", "A2", "A3"});
  auto a = ideal(S, {"X1^2", "X1*X2", "X1*X3", "X2^2", "X2*X3", "X3^2", "X4^2", "X1*V", "X2*V", "X3*V", "X4*V",
                     "V^2 - A1*X1 - A2*X2 - A3*X3"});
  return make_ring(S, a);
}

/// k[x,y,z]/(x^2, xy, xz): a plane with an embedded point; H⁰ = (x).
inline RingHandle<Fp> embedded_point_ring() {
  auto S = fp_ring({"x", "y", "z"});
  return make_ring(S, ideal(S, {"x^2", "x*y", "x*z"}));
}

template <class F>
RIdeal<F> rideal(const RingPresentation<F>& R, std::initializer_list<std::string_view> gens) {
  std::vector<Polynomial<F>> v;
  for (auto g : gens) v.push_back(parse_polynomial(g, R.ambient()));
  return R.ideal(v);
}

}  // namespace sallykit::testing
