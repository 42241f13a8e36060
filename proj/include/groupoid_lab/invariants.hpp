#pragma once

#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/limits.hpp"

namespace groupoid_lab {

/// Connected components: the coequalizer of d and c.
inline Quotient pi0(const Groupoid& g) { return reflexive_coequalizer(g.d, g.c, g.e); }

/// The map on components induced by a functor.
inline Morphism pi0_map(const Functor& f, const Quotient& qa, const Quotient& qb) {
  const int n = qa.object.size();
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < f.A.B0.size(); ++x) {
    const int cls = qa.map(x);
    const int img = qb.map(f.F0(x));
    int& slot = map[static_cast<std::size_t>(cls)];
    if (slot >= 0 && slot != img) throw InvariantViolation("functor does not respect connected components");
    slot = img;
  }
  return Morphism::unchecked(qa.object, qb.object, std::move(map));
}

inline Morphism pi0_map(const Functor& f) { return pi0_map(f, pi0(f.A), pi0(f.B)); }

/// Automorphisms of the base point, with their inclusion into B1.
struct Pi1 {
  Object object;
  Morphism inclusion;
  std::vector<int> mul;  // composition table over indices of `object`

  int size() const { return object.size(); }
  int operator()(int x, int y) const { return mul[static_cast<std::size_t>(x) * object.size() + y]; }
};

inline Pi1 pi1(const Groupoid& g) {
  require_pointed(g.kind(), "pi1");
  LimitResult kd = kernel(g.d);
  Morphism kd_inc = kernel_inclusion(kd);
  LimitResult kc = kernel(compose(kd_inc, g.c));
  Pi1 out;
  out.inclusion = compose(kernel_inclusion(kc), kd_inc);
  out.object = out.inclusion.dom();
  const int n = out.object.size();
  std::vector<int> index(static_cast<std::size_t>(g.B1.size()), -1);
  for (int x = 0; x < n; ++x) index[static_cast<std::size_t>(out.inclusion(x))] = x;
  out.mul.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int z = index[static_cast<std::size_t>(g.compose(out.inclusion(x), out.inclusion(y)))];
      if (z < 0) throw InvariantViolation("loops at the base point are not closed under composition");
      out.mul[static_cast<std::size_t>(x) * n + y] = z;
    }
  }
  return out;
}

/// The map on base point automorphisms induced by F1.
inline Morphism pi1_map(const Functor& f, const Pi1& pa, const Pi1& pb) {
  std::vector<int> index(static_cast<std::size_t>(f.B.B1.size()), -1);
  for (int x = 0; x < pb.size(); ++x) index[static_cast<std::size_t>(pb.inclusion(x))] = x;
  std::vector<int> map(static_cast<std::size_t>(pa.size()));
  for (int x = 0; x < pa.size(); ++x) {
    const int v = index[static_cast<std::size_t>(f.F1(pa.inclusion(x)))];
    if (v < 0) throw InvariantViolation("functor does not preserve the base point");
    map[static_cast<std::size_t>(x)] = v;
  }
  return Morphism::unchecked(pa.object, pb.object, std::move(map));
}

inline Morphism pi1_map(const Functor& f) { return pi1_map(f, pi1(f.A), pi1(f.B)); }

}  // namespace groupoid_lab
