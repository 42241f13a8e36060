#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/groupoid_limits.hpp"
#include "groupoid_lab/limits.hpp"

namespace groupoid_lab {

/// The groupoid of commutative squares of B. An arrow S of vecB is a square
///
///        g0
///     . ----> .
///  b1 |       | b2        with b1 then f0 equal to g0 then b2,
///     . ----> .
///        f0
///
/// stored as the pair (m1, m2) = ((b1, f0), (g0, b2)) of composable pairs.
/// Objects of vecB are the arrows of B; S goes from b1 to b2.
struct ArrowGroupoid {
  Groupoid base;
  LimitResult squares;  // pullback of m with m
  Groupoid vec;
  Functor delta;  // b -> d b, S -> g0
  Functor gamma;  // b -> c b, S -> f0
  NatTransformation beta;

  int b1(int s) const { return base.first(squares.apex.coord(s, 0)); }
  int f0(int s) const { return base.second(squares.apex.coord(s, 0)); }
  int g0(int s) const { return base.first(squares.apex.coord(s, 1)); }
  int b2(int s) const { return base.second(squares.apex.coord(s, 1)); }

  /// Index of the square, if the data is composable and commutes.
  std::optional<int> find_square(int sb1, int sf0, int sg0, int sb2) const {
    if (base.c(sb1) != base.d(sf0) || base.c(sg0) != base.d(sb2)) return std::nullopt;
    const int t[2] = {base.pair(sb1, sf0), base.pair(sg0, sb2)};
    return squares.apex.find(t);
  }
  int square(int sb1, int sf0, int sg0, int sb2) const {
    auto s = find_square(sb1, sf0, sg0, sb2);
    if (!s) throw InvariantViolation("expected a commutative square");
    return *s;
  }
};

inline ArrowGroupoid arrow_groupoid(const Groupoid& b) {
  ArrowGroupoid out;
  out.base = b;
  out.squares = pullback(b.m, b.m);
  const Object& v1 = out.squares.apex;
  const ArrowGroupoid& ag = out;
  const int n = v1.size();
  std::vector<int> dmap(static_cast<std::size_t>(n));
  std::vector<int> cmap(static_cast<std::size_t>(n));
  std::vector<int> imap(static_cast<std::size_t>(n));
  std::vector<int> gmap(static_cast<std::size_t>(n));
  std::vector<int> fmap(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    dmap[static_cast<std::size_t>(s)] = ag.b1(s);
    cmap[static_cast<std::size_t>(s)] = ag.b2(s);
    gmap[static_cast<std::size_t>(s)] = ag.g0(s);
    fmap[static_cast<std::size_t>(s)] = ag.f0(s);
    imap[static_cast<std::size_t>(s)] = ag.square(ag.b2(s), b.i(ag.f0(s)), b.i(ag.g0(s)), ag.b1(s));
  }
  std::vector<int> emap(static_cast<std::size_t>(b.B1.size()));
  for (int x = 0; x < b.B1.size(); ++x) {
    emap[static_cast<std::size_t>(x)] = ag.square(x, b.e(b.c(x)), b.e(b.d(x)), x);
  }
  out.vec = make_groupoid(b.B1, v1, Morphism::unchecked(v1, b.B1, std::move(dmap)),
                          Morphism::unchecked(v1, b.B1, cmap), Morphism::unchecked(b.B1, v1, std::move(emap)),
                          Morphism::unchecked(v1, v1, std::move(imap)), [&ag, &b](int s, int t) {
                            return ag.square(ag.b1(s), b.compose(ag.f0(s), ag.f0(t)), b.compose(ag.g0(s), ag.g0(t)),
                                             ag.b2(t));
                          });
  out.delta = {out.vec, b, b.d, Morphism::unchecked(v1, b.B1, std::move(gmap))};
  out.gamma = {out.vec, b, b.c, Morphism::unchecked(v1, b.B1, std::move(fmap))};
  out.beta = {out.delta, out.gamma, identity(b.B1)};
  return out;
}

/// vecB with its structure transported along the swap of the two m-legs,
/// together with the isomorphism tau: vecB' -> vecB.
struct Twist {
  Groupoid transposed;
  Functor tau;
};

inline Twist twist_iso(const ArrowGroupoid& ag) {
  const Groupoid& v = ag.vec;
  const Object& v1 = v.B1;
  std::vector<int> t(static_cast<std::size_t>(v1.size()));
  for (int s = 0; s < v1.size(); ++s) t[static_cast<std::size_t>(s)] = ag.square(ag.g0(s), ag.b2(s), ag.b1(s), ag.f0(s));
  Morphism tau1 = Morphism::unchecked(v1, v1, t);
  Groupoid transposed = make_groupoid(v.B0, v1, compose(tau1, v.d), compose(tau1, v.c), compose(v.e, tau1),
                                      compose(tau1, v.i, tau1), [v, t](int x, int y) {
                                        return t[static_cast<std::size_t>(
                                            v.compose(t[static_cast<std::size_t>(x)], t[static_cast<std::size_t>(y)]))];
                                      });
  return {transposed, Functor{transposed, v, identity(v.B0), tau1}};
}

/// Strong homotopy pullback of F: A -> B and G: C -> B, as the limit of
/// [C, vecB, A, B, B] along G, delta, gamma, F. The 2-cell phi goes from
/// Fp then G to Gp then F.
struct HPullback {
  Functor F;
  Functor G;
  ArrowGroupoid arrows;
  GroupoidLimit limit;
  Functor Fp;  // to C
  Functor Gp;  // to A
  NatTransformation phi;

  const Groupoid& P() const { return limit.apex; }
};

inline HPullback strong_h_pullback(const Functor& f, const Functor& g) {
  if (!(f.B == g.B)) throw DiagramError("strong h-pullback of functors with different codomains");
  HPullback out;
  out.F = f;
  out.G = g;
  out.arrows = arrow_groupoid(f.B);
  const auto& ag = out.arrows;
  out.limit = groupoid_limit(GroupoidDiagram{
      {g.A, ag.vec, f.A, f.B, f.B}, {{0, 3, g}, {1, 3, ag.delta}, {1, 4, ag.gamma}, {2, 4, f}}});
  out.Fp = out.limit.leg(0);
  out.Gp = out.limit.leg(2);
  out.phi = {compose_functors(out.Fp, g), compose_functors(out.Gp, f), out.limit.leg(1).F0};
  return out;
}

namespace detail {

inline bool same_maps(const Functor& a, const Functor& b) {
  return a.F0.map() == b.F0.map() && a.F1.map() == b.F1.map() && a.A.B1 == b.A.B1 && a.B.B1 == b.B.B1;
}

}  // namespace detail

/// The unique functor T: X -> P with T.Gp = H, T.Fp = K and T.phi = mu, for
/// mu: K.G => H.F.
inline Functor mediate_h_pullback(const HPullback& hp, const Functor& h, const Functor& k, const NatTransformation& mu) {
  if (!(h.B == hp.F.A) || !(k.B == hp.G.A)) throw NoMediatorError("cone functors land in the wrong groupoids");
  Functor kg = compose_functors(k, hp.G);
  Functor hf = compose_functors(h, hp.F);
  if (!detail::same_maps(mu.source, kg) || !detail::same_maps(mu.target, hf)) {
    throw NoMediatorError("2-cell does not go from K.G to H.F");
  }
  const Groupoid& x = h.A;
  const Groupoid& b = hp.F.B;
  const auto& ag = hp.arrows;
  std::vector<int> m1(static_cast<std::size_t>(x.B1.size()));
  for (int a = 0; a < x.B1.size(); ++a) {
    const int sb1 = mu.alpha(x.d(a));
    const int sb2 = mu.alpha(x.c(a));
    const int sf0 = hf.F1(a);
    const int sg0 = kg.F1(a);
    if (b.c(sb1) != b.d(sf0) || b.c(sg0) != b.d(sb2)) throw NoMediatorError("2-cell components have the wrong ends");
    auto s = ag.find_square(sb1, sf0, sg0, sb2);
    if (!s) throw NoMediatorError("2-cell is not natural at arrow " + std::to_string(a));
    m1[static_cast<std::size_t>(a)] = *s;
  }
  Functor m{x, ag.vec, mu.alpha, Morphism::unchecked(x.B1, ag.vec.B1, std::move(m1))};
  return mediate_groupoid(hp.limit, {k, m, h, std::nullopt, std::nullopt});
}

/// Strong homotopy kernel: the strong h-pullback of F along [0] -> B.
/// K(F) is the leg to A and k(F): 0 => K(F).F the 2-cell.
struct HKernel {
  HPullback hp;
  Functor KF;
  NatTransformation kF;

  const Groupoid& groupoid() const { return hp.P(); }
};

inline HKernel strong_h_kernel(const Functor& f) {
  require_pointed(f.A.kind(), "strong_h_kernel");
  Groupoid zero = zero_groupoid(f.A.kind());
  HKernel out;
  out.hp = strong_h_pullback(f, zero_functor(zero, f.B));
  out.KF = out.hp.Gp;
  out.kF = out.hp.phi;
  return out;
}

/// V(F): the strong h-pullback of F along the discrete embedding of B's objects.
inline HPullback v_groupoid(const Functor& f) { return strong_h_pullback(f, discrete_embedding(f.B)); }

/// Comparison T from the pullback [B0] x_{N,F} A to V(F).
struct ComparisonT {
  PullbackGroupoid pullback;
  HPullback V;
  Functor T;
};

inline ComparisonT comparison_T(const Functor& f) {
  Functor n = discrete_embedding(f.B);
  ComparisonT out{pullback_groupoid(f, n), strong_h_pullback(f, n), {}};
  const Functor& fhat = out.pullback.Fhat;  // to [B0]
  const Functor& nhat = out.pullback.Ghat;  // to A
  // K = fhat lands in the C node of V(F), which must be the very same [B0].
  Functor k{fhat.A, out.V.G.A, fhat.F0, fhat.F1};
  NatTransformation mu{compose_functors(k, out.V.G), compose_functors(nhat, f), compose(fhat.F0, n.F1)};
  out.T = mediate_h_pullback(out.V, nhat, k, mu);
  return out;
}

/// Comparison J from the level-wise kernel to the strong h-kernel.
struct ComparisonJ {
  KernelGroupoid kernel;
  HKernel hkernel;
  Functor J;
};

inline ComparisonJ comparison_J(const Functor& f) {
  require_pointed(f.A.kind(), "comparison_J");
  ComparisonJ out{kernel_groupoid(f), strong_h_kernel(f), {}};
  const Groupoid& ker = out.kernel.ker;
  Functor to_zero = zero_functor(ker, out.hkernel.hp.G.A);
  NatTransformation mu{compose_functors(to_zero, out.hkernel.hp.G), compose_functors(out.kernel.inclusion, f),
                       zero_morphism(ker.B0, f.B.B1)};
  out.J = mediate_h_pullback(out.hkernel.hp, out.kernel.inclusion, to_zero, mu);
  return out;
}

/// The functor vecA -> R(F) into the strong h-pullback of F with itself,
/// induced by (delta, gamma, beta.F).
struct PartialFunctor {
  ArrowGroupoid arrows;
  HPullback R;
  Functor partial;
};

inline PartialFunctor partial_functor(const Functor& f) {
  PartialFunctor out{arrow_groupoid(f.A), strong_h_pullback(f, f), {}};
  out.partial = mediate_h_pullback(out.R, out.arrows.gamma, out.arrows.delta, whisker_right(out.arrows.beta, f));
  return out;
}

}  // namespace groupoid_lab
