#pragma once

#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/morphism.hpp"

namespace groupoid_lab {

/// An internal functor F = (F0, F1): A -> B.
struct Functor {
  Groupoid A;
  Groupoid B;
  Morphism F0;
  Morphism F1;
};

inline bool operator==(const Functor& f, const Functor& g) {
  return f.A == g.A && f.B == g.B && f.F0 == g.F0 && f.F1 == g.F1;
}

/// A natural transformation alpha: F => G with component map A0 -> B1.
struct NatTransformation {
  Functor source;
  Functor target;
  Morphism alpha;
};

inline std::vector<Violation> validate_functor(const Functor& f) {
  std::vector<Violation> out;
  if (!detail::typed(f.F0, f.A.B0, f.B.B0)) out.push_back({"typing", "F0 is not a morphism A0 -> B0"});
  if (!detail::typed(f.F1, f.A.B1, f.B.B1)) out.push_back({"typing", "F1 is not a morphism A1 -> B1"});
  if (!out.empty()) return out;
  for (int a = 0; a < f.A.B1.size(); ++a) {
    if (f.B.d(f.F1(a)) != f.F0(f.A.d(a))) {
      out.push_back({"preserves-source", detail::at(a)});
      break;
    }
  }
  for (int a = 0; a < f.A.B1.size(); ++a) {
    if (f.B.c(f.F1(a)) != f.F0(f.A.c(a))) {
      out.push_back({"preserves-target", detail::at(a)});
      break;
    }
  }
  for (int x = 0; x < f.A.B0.size(); ++x) {
    if (f.F1(f.A.e(x)) != f.B.e(f.F0(x))) {
      out.push_back({"preserves-units", detail::at(x)});
      break;
    }
  }
  if (!out.empty()) return out;
  for (int p = 0; p < f.A.pairs.apex.size(); ++p) {
    const int x = f.A.first(p);
    const int y = f.A.second(p);
    if (f.F1(f.A.m(p)) != f.B.compose(f.F1(x), f.F1(y))) {
      out.push_back({"preserves-composition", detail::at(x, y)});
      break;
    }
  }
  return out;
}

inline bool is_valid(const Functor& f) { return validate_functor(f).empty(); }

/// Naturality is checked in the form: alpha(d a) then G1(a) equals F1(a) then alpha(c a).
inline std::vector<Violation> validate_nat(const NatTransformation& n) {
  std::vector<Violation> out;
  const Functor& f = n.source;
  const Functor& g = n.target;
  if (!(f.A == g.A) || !(f.B == g.B)) out.push_back({"typing", "source and target functors are not parallel"});
  else if (!detail::typed(n.alpha, f.A.B0, f.B.B1)) out.push_back({"typing", "alpha is not a morphism A0 -> B1"});
  if (!out.empty()) return out;
  for (int x = 0; x < f.A.B0.size(); ++x) {
    if (f.B.d(n.alpha(x)) != f.F0(x)) {
      out.push_back({"component-source", detail::at(x)});
      break;
    }
  }
  for (int x = 0; x < f.A.B0.size(); ++x) {
    if (f.B.c(n.alpha(x)) != g.F0(x)) {
      out.push_back({"component-target", detail::at(x)});
      break;
    }
  }
  if (!out.empty()) return out;
  for (int a = 0; a < f.A.B1.size(); ++a) {
    const int lhs = f.B.compose(n.alpha(f.A.d(a)), g.F1(a));
    const int rhs = f.B.compose(f.F1(a), n.alpha(f.A.c(a)));
    if (lhs != rhs) {
      out.push_back({"naturality", detail::at(a)});
      break;
    }
  }
  return out;
}

inline bool is_valid(const NatTransformation& n) { return validate_nat(n).empty(); }

inline Functor identity_functor(const Groupoid& a) { return {a, a, identity(a.B0), identity(a.B1)}; }

/// F then G.
inline Functor compose_functors(const Functor& f, const Functor& g) {
  if (!(f.B == g.A)) throw CompositionError("functor codomain differs from next functor's domain");
  return {f.A, g.B, compose(f.F0, g.F0), compose(f.F1, g.F1)};
}

/// The zero functor between groupoids of a pointed instance.
inline Functor zero_functor(const Groupoid& a, const Groupoid& b) {
  return {a, b, zero_morphism(a.B0, b.B0), zero_morphism(a.B1, b.B1)};
}

/// The unique functor to the terminal groupoid.
inline Functor functor_to_terminal(const Groupoid& a) {
  Groupoid t = terminal_groupoid(a.kind());
  return {a, t, to_terminal(a.B0, t.B0), to_terminal(a.B1, t.B1)};
}

/// Embedding N: [B0] -> B of the objects as identity arrows.
inline Functor discrete_embedding(const Groupoid& b) {
  return {discrete_groupoid(b.B0), b, identity(b.B0), b.e};
}

/// The functor [f]: [X] -> [Y] of discrete groupoids.
inline Functor discrete_functor(const Morphism& f) {
  return {discrete_groupoid(f.dom()), discrete_groupoid(f.cod()), f, f};
}

/// Identity transformation on F.
inline NatTransformation identity_nat(const Functor& f) { return {f, f, compose(f.F0, f.B.e)}; }

/// alpha whiskered by a functor H out of the codomain: alpha.H : F.H => G.H.
inline NatTransformation whisker_right(const NatTransformation& n, const Functor& h) {
  return {compose_functors(n.source, h), compose_functors(n.target, h), compose(n.alpha, h.F1)};
}

/// A functor K into the domain whiskering alpha: K.alpha : K.F => K.G.
inline NatTransformation whisker_left(const Functor& k, const NatTransformation& n) {
  return {compose_functors(k, n.source), compose_functors(k, n.target), compose(k.F0, n.alpha)};
}

/// Conjugate of F by a family of arrows alpha(x): F0 x -> G0 x; the target
/// functor sends a to inverse(alpha(d a)) then F1(a) then alpha(c a).
inline NatTransformation conjugate(const Functor& f, const Morphism& alpha) {
  const Groupoid& b = f.B;
  std::vector<int> g0(static_cast<std::size_t>(f.A.B0.size()));
  std::vector<int> g1(static_cast<std::size_t>(f.A.B1.size()));
  for (int x = 0; x < f.A.B0.size(); ++x) g0[static_cast<std::size_t>(x)] = b.c(alpha(x));
  for (int a = 0; a < f.A.B1.size(); ++a) {
    g1[static_cast<std::size_t>(a)] =
        b.compose(b.compose(b.i(alpha(f.A.d(a))), f.F1(a)), alpha(f.A.c(a)));
  }
  Functor g{f.A, b, Morphism::unchecked(f.A.B0, b.B0, std::move(g0)), Morphism::unchecked(f.A.B1, b.B1, std::move(g1))};
  return {f, g, alpha};
}

// ---------------------------------------------------------------------------
// Standard functors

/// The projections of a product groupoid built by product_groupoid.
inline std::pair<Functor, Functor> product_projections(const Groupoid& a, const Groupoid& b, const Groupoid& ab) {
  auto proj = [&](int k, const Groupoid& target) {
    std::vector<int> p0(static_cast<std::size_t>(ab.B0.size()));
    std::vector<int> p1(static_cast<std::size_t>(ab.B1.size()));
    for (int x = 0; x < ab.B0.size(); ++x) p0[static_cast<std::size_t>(x)] = ab.B0.coord(x, static_cast<std::size_t>(k));
    for (int x = 0; x < ab.B1.size(); ++x) p1[static_cast<std::size_t>(x)] = ab.B1.coord(x, static_cast<std::size_t>(k));
    return Functor{ab, target, Morphism::unchecked(ab.B0, target.B0, std::move(p0)),
                   Morphism::unchecked(ab.B1, target.B1, std::move(p1))};
  };
  return {proj(0, a), proj(1, b)};
}

/// Inclusions of a coproduct groupoid built by coproduct_groupoid.
inline std::pair<Functor, Functor> coproduct_inclusions(const Groupoid& a, const Groupoid& b, const Groupoid& ab) {
  auto inc = [&](const Groupoid& src, int shift0, int shift1) {
    std::vector<int> f0(static_cast<std::size_t>(src.B0.size()));
    std::vector<int> f1(static_cast<std::size_t>(src.B1.size()));
    for (int x = 0; x < src.B0.size(); ++x) f0[static_cast<std::size_t>(x)] = x + shift0;
    for (int x = 0; x < src.B1.size(); ++x) f1[static_cast<std::size_t>(x)] = x + shift1;
    return Functor{src, ab, Morphism::unchecked(src.B0, ab.B0, std::move(f0)), Morphism::unchecked(src.B1, ab.B1, std::move(f1))};
  };
  return {inc(a, 0, 0), inc(b, a.B0.size(), a.B1.size())};
}

/// Ind(f): Ind(X) -> Ind(Y) for a morphism f: X -> Y, on indiscrete groupoids.
inline Functor indiscrete_functor(const Morphism& f, const Groupoid& ix, const Groupoid& iy) {
  std::vector<int> f1(static_cast<std::size_t>(ix.B1.size()));
  for (int p = 0; p < ix.B1.size(); ++p) {
    const int t[2] = {f(ix.B1.coord(p, 0)), f(ix.B1.coord(p, 1))};
    f1[static_cast<std::size_t>(p)] = *iy.B1.find(t);
  }
  return {ix, iy, f, Morphism::unchecked(ix.B1, iy.B1, std::move(f1))};
}

/// The functor A -> Ind(Y) determined by an object map F0: A0 -> Y.
inline Functor functor_to_indiscrete(const Groupoid& a, const Morphism& f0, const Groupoid& iy) {
  std::vector<int> f1(static_cast<std::size_t>(a.B1.size()));
  for (int x = 0; x < a.B1.size(); ++x) {
    const int t[2] = {f0(a.d(x)), f0(a.c(x))};
    f1[static_cast<std::size_t>(x)] = *iy.B1.find(t);
  }
  return {a, iy, f0, Morphism::unchecked(a.B1, iy.B1, std::move(f1))};
}

/// The functor G(delta) -> G(delta') of FinAb arrow groupoids induced by a
/// commutative square (phi0, psi): phi0 on objects, (a, n) -> (phi0 a, psi n) on arrows.
inline Functor functor_from_square(const Groupoid& src, const Groupoid& dst, const Morphism& phi0, const Morphism& psi) {
  const int nn = psi.dom().size();
  const int nm = psi.cod().size();
  std::vector<int> f1(static_cast<std::size_t>(src.B1.size()));
  for (int x = 0; x < src.B1.size(); ++x) f1[static_cast<std::size_t>(x)] = phi0(x / nn) * nm + psi(x % nn);
  return {src, dst, phi0, Morphism::unchecked(src.B1, dst.B1, std::move(f1))};
}

/// Delooping of a group homomorphism in FinAb.
inline Functor delooping_functor(const Groupoid& bg, const Groupoid& bh, const Morphism& phi) {
  return {bg, bh, identity(bg.B0), phi};
}

/// Codomain projection of arrow_action_groupoid(b): objects x go to c(x),
/// arrows (x, y) go to y.
inline Functor arrow_action_projection(const Groupoid& action, const Groupoid& b) {
  return {action, b, b.c, b.pairs.leg(1)};
}

}  // namespace groupoid_lab
