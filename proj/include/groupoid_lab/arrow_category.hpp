#pragma once

#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/morphism.hpp"

namespace groupoid_lab {

/// An object a: A -> A0 of Arr.
struct ArrowObject {
  Morphism a;

  const Object& top() const { return a.dom(); }
  const Object& bottom() const { return a.cod(); }
};

inline bool operator==(const ArrowObject& x, const ArrowObject& y) { return x.a == y.a; }

/// A commutative square (f, f0): a -> b.
struct ArrowMorphism {
  ArrowObject source;
  ArrowObject target;
  Morphism f;
  Morphism f0;
};

inline bool operator==(const ArrowMorphism& x, const ArrowMorphism& y) {
  return x.source == y.source && x.target == y.target && x.f == y.f && x.f0 == y.f0;
}

/// A diagonal d: A0 -> B of a square (f, f0): a -> b, with a.d = f and d.b = f0.
struct Diagonal {
  ArrowMorphism square;
  Morphism d;
};

inline bool is_commutative(const ArrowMorphism& m) {
  if (!(m.f.dom() == m.source.top()) || !(m.f.cod() == m.target.top())) return false;
  if (!(m.f0.dom() == m.source.bottom()) || !(m.f0.cod() == m.target.bottom())) return false;
  return compose(m.source.a, m.f0).map() == compose(m.f, m.target.a).map();
}

inline bool is_valid(const Diagonal& d) {
  const ArrowMorphism& s = d.square;
  if (!(d.d.dom() == s.source.bottom()) || !(d.d.cod() == s.target.top())) return false;
  return compose(s.source.a, d.d).map() == s.f.map() && compose(d.d, s.target.a).map() == s.f0.map();
}

inline ArrowMorphism make_arrow_morphism(ArrowObject source, ArrowObject target, Morphism f, Morphism f0) {
  ArrowMorphism m{std::move(source), std::move(target), std::move(f), std::move(f0)};
  if (!is_commutative(m)) throw StructureError("square does not commute");
  return m;
}

inline ArrowMorphism identity_arr(const ArrowObject& a) { return {a, a, identity(a.top()), identity(a.bottom())}; }

/// (f, f0) then (g, g0).
inline ArrowMorphism compose_arr(const ArrowMorphism& x, const ArrowMorphism& y) {
  if (!(x.target == y.source)) throw CompositionError("arrow morphisms are not composable");
  return {x.source, y.target, compose(x.f, y.f), compose(x.f0, y.f0)};
}

/// p o mu o h: the diagonal of p.g.h induced by a diagonal mu of g.
inline Diagonal act_on_diagonal(const ArrowMorphism& p, const Diagonal& mu, const ArrowMorphism& h) {
  if (!(p.target == mu.square.source) || !(mu.square.target == h.source)) {
    throw CompositionError("diagonal action on non-composable squares");
  }
  return {compose_arr(compose_arr(p, mu.square), h), compose(p.f0, mu.d, h.f)};
}

/// Level-wise kernel of (f, f0): the arrow Ker(f) -> Ker(f0) and the inclusion square.
struct ArrowKernel {
  LimitResult top;     // Ker(f)
  LimitResult bottom;  // Ker(f0)
  ArrowObject object;
  ArrowMorphism inclusion;
};

inline ArrowKernel kernel_arr(const ArrowMorphism& m) {
  require_pointed(m.f.kind(), "kernel_arr");
  ArrowKernel out;
  out.top = kernel(m.f);
  out.bottom = kernel(m.f0);
  const Morphism& kf = kernel_inclusion(out.top);
  const Morphism& kf0 = kernel_inclusion(out.bottom);
  out.object = {lift_to_kernel(out.bottom, compose(kf, m.source.a))};
  out.inclusion = {out.object, m.source, kf, kf0};
  return out;
}

/// Strong h-kernel (d(f,f0)0, (id, b'), f0') with d(f,f0)0: A -> A0 x_{f0,b} B.
struct ArrowHKernel {
  LimitResult pullback;  // nodes [A0, B, B0]
  ArrowObject object;
  ArrowMorphism inclusion;
  Diagonal diagonal;

  const Morphism& partial() const { return object.a; }
  const Morphism& b_prime() const { return pullback.leg(0); }
  const Morphism& f0_prime() const { return pullback.leg(1); }
};

inline ArrowHKernel strong_h_kernel_arr(const ArrowMorphism& m) {
  require_pointed(m.f.kind(), "strong_h_kernel_arr");
  ArrowHKernel out;
  out.pullback = pullback(m.f0, m.target.a);
  out.object = {pair_into(out.pullback, m.source.a, m.f)};
  out.inclusion = {out.object, m.source, identity(m.source.top()), out.pullback.leg(0)};
  out.diagonal = {compose_arr(out.inclusion, m), out.pullback.leg(1)};
  return out;
}

/// Comparison J from the kernel to the strong h-kernel: top k_f, bottom <k_f0, 0>.
struct ArrowComparisonJ {
  ArrowKernel kernel;
  ArrowHKernel hkernel;
  ArrowMorphism J;
};

inline ArrowComparisonJ comparison_J_arr(const ArrowMorphism& m) {
  ArrowComparisonJ out{kernel_arr(m), strong_h_kernel_arr(m), {}};
  const Morphism& kf0 = kernel_inclusion(out.kernel.bottom);
  Morphism bottom = pair_into(out.hkernel.pullback, kf0, zero_morphism(kf0.dom(), m.target.top()));
  out.J = {out.kernel.object, out.hkernel.object, kernel_inclusion(out.kernel.top), bottom};
  return out;
}

inline Morphism partial_arr(const ArrowMorphism& m) {
  return pair_into(pullback(m.f0, m.target.a), m.source.a, m.f);
}

struct ArrowFlags {
  bool faithful = false;
  bool fully_faithful = false;
  bool full = false;
  bool essentially_surjective = false;
  bool weak_equivalence = false;
  bool fibration = false;
  bool star_fibration = false;
};

inline bool is_essentially_surjective_arr(const ArrowMorphism& m) { return jointly_strongly_epi({m.f0, m.target.a}); }

inline bool is_fully_faithful_arr(const ArrowMorphism& m) {
  const Morphism p = partial_arr(m);
  return is_injective(p) && is_surjective(p);
}

inline bool is_weak_equivalence_arr(const ArrowMorphism& m) {
  return is_fully_faithful_arr(m) && is_essentially_surjective_arr(m);
}

inline ArrowFlags classify_arrow_morphism(const ArrowMorphism& m) {
  require_pointed(m.f.kind(), "classify_arrow_morphism");
  ArrowFlags out;
  const Morphism p = partial_arr(m);
  out.faithful = is_injective(p);
  out.full = is_surjective(p);
  out.fully_faithful = out.faithful && out.full;
  out.essentially_surjective = is_essentially_surjective_arr(m);
  out.weak_equivalence = out.fully_faithful && out.essentially_surjective;
  out.fibration = is_surjective(m.f);
  out.star_fibration = is_essentially_surjective_arr(comparison_J_arr(m).J);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

/// N(G) = k_d.c : Ker(d) -> A0, keeping the kernel of d for lifts.
struct NormalizedObject {
  LimitResult kernel_d;
  ArrowObject object;
};

inline NormalizedObject normalize_obj(const Groupoid& g) {
  require_pointed(g.kind(), "normalize_obj");
  NormalizedObject out;
  out.kernel_d = kernel(g.d);
  out.object = {compose(kernel_inclusion(out.kernel_d), g.c)};
  return out;
}

/// N(F) = (K_d(F), F0) with K_d(F).k_d = k_d.F1.
inline ArrowMorphism normalize(const Functor& f) {
  const NormalizedObject na = normalize_obj(f.A);
  const NormalizedObject nb = normalize_obj(f.B);
  Morphism kd = lift_to_kernel(nb.kernel_d, compose(kernel_inclusion(na.kernel_d), f.F1));
  return {na.object, nb.object, kd, f.F0};
}

/// The diagonal N(alpha) of N(F) for a null-homotopy alpha: 0 => F, the lift
/// of alpha through k_d.
inline Diagonal normalize_homotopy(const NatTransformation& alpha) {
  const Functor& f = alpha.target;
  for (int v : alpha.source.F0.map()) {
    if (v != f.B.B0.zero()) throw StructureError("normalize_homotopy needs a transformation out of the zero functor");
  }
  const NormalizedObject nb = normalize_obj(f.B);
  Diagonal out{normalize(f), lift_to_kernel(nb.kernel_d, alpha.alpha)};
  if (!is_valid(out)) throw InvariantViolation("normalized homotopy is not a diagonal");
  return out;
}

}  // namespace groupoid_lab
