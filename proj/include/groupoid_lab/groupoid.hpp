#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/abelian.hpp"
#include "groupoid_lab/error.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

/// A named axiom that failed, with a short description of where.
struct Violation {
  std::string axiom;
  std::string detail;
};

/// An internal groupoid (B0, B1, d, c, e, m, i). `pairs` is the canonical
/// pullback of c and d holding the composable pairs; m is defined on its apex.
struct Groupoid {
  Object B0;
  Object B1;
  Morphism d;
  Morphism c;
  Morphism e;
  Morphism i;
  Morphism m;
  LimitResult pairs;

  Kind kind() const { return B0.kind(); }

  /// Index of (x, y) in the composable-pairs object.
  int pair(int x, int y) const {
    if (c(x) != d(y)) throw CompositionError("arrows are not composable");
    const int t[2] = {x, y};
    auto idx = pairs.apex.find(t);
    if (!idx) throw InvariantViolation("composable pair missing from pullback");
    return *idx;
  }
  /// x then y.
  int compose(int x, int y) const { return m(pair(x, y)); }
  int first(int p) const { return pairs.apex.coord(p, 0); }
  int second(int p) const { return pairs.apex.coord(p, 1); }
  bool is_discrete() const { return B1.size() == B0.size(); }
};

inline bool operator==(const Groupoid& a, const Groupoid& b) {
  return a.B0 == b.B0 && a.B1 == b.B1 && a.d == b.d && a.c == b.c && a.e == b.e && a.i == b.i &&
         a.m.map() == b.m.map();
}

using Multiplication = std::function<int(int, int)>;

/// Builds a groupoid from its structure maps and a composition rule on
/// composable pairs. Nothing is validated.
inline Groupoid make_groupoid(Object b0, Object b1, Morphism d, Morphism c, Morphism e, Morphism i,
                              const Multiplication& mult) {
  Groupoid g;
  g.B0 = std::move(b0);
  g.B1 = std::move(b1);
  g.d = std::move(d);
  g.c = std::move(c);
  g.e = std::move(e);
  g.i = std::move(i);
  g.pairs = pullback(g.c, g.d);
  std::vector<int> map(static_cast<std::size_t>(g.pairs.apex.size()));
  for (int p = 0; p < g.pairs.apex.size(); ++p) {
    map[static_cast<std::size_t>(p)] = mult(g.pairs.apex.coord(p, 0), g.pairs.apex.coord(p, 1));
  }
  g.m = Morphism::unchecked(g.pairs.apex, g.B1, std::move(map));
  return g;
}

/// Same as make_groupoid with m given as a map on the canonical pair object.
inline Groupoid make_groupoid_with_m(Object b0, Object b1, Morphism d, Morphism c, Morphism e, Morphism i,
                                     Morphism m) {
  Groupoid g;
  g.B0 = std::move(b0);
  g.B1 = std::move(b1);
  g.d = std::move(d);
  g.c = std::move(c);
  g.e = std::move(e);
  g.i = std::move(i);
  g.pairs = pullback(g.c, g.d);
  g.m = std::move(m);
  return g;
}

namespace detail {

inline std::string at(int x) { return "at " + std::to_string(x); }
inline std::string at(int x, int y) { return "at (" + std::to_string(x) + "," + std::to_string(y) + ")"; }

inline bool typed(const Morphism& f, const Object& dom, const Object& cod) {
  return f.dom() == dom && f.cod() == cod && f.valid();
}

}  // namespace detail

/// Checks every groupoid axiom pointwise. Empty result means valid.
inline std::vector<Violation> validate_groupoid(const Groupoid& g) {
  std::vector<Violation> out;
  auto fail = [&](const char* axiom, std::string detail) {
    for (const auto& v : out) {
      if (v.axiom == axiom) return;
    }
    out.push_back({axiom, std::move(detail)});
  };
  if (g.B0.kind() != g.B1.kind()) fail("typing", "B0 and B1 belong to different instances");
  if (!detail::typed(g.d, g.B1, g.B0)) fail("typing", "d is not a morphism B1 -> B0");
  if (!detail::typed(g.c, g.B1, g.B0)) fail("typing", "c is not a morphism B1 -> B0");
  if (!detail::typed(g.e, g.B0, g.B1)) fail("typing", "e is not a morphism B0 -> B1");
  if (!detail::typed(g.i, g.B1, g.B1)) fail("typing", "i is not a morphism B1 -> B1");
  if (!out.empty()) return out;
  LimitResult canonical = pullback(g.c, g.d);
  if (!(canonical.apex == g.pairs.apex)) fail("typing", "pair object is not the pullback of c and d");
  if (!detail::typed(g.m, canonical.apex, g.B1)) fail("typing", "m is not a morphism B1 x_{c,d} B1 -> B1");
  if (!out.empty()) return out;

  for (int x = 0; x < g.B0.size(); ++x) {
    if (g.d(g.e(x)) != x) fail("unit-source", detail::at(x));
    if (g.c(g.e(x)) != x) fail("unit-target", detail::at(x));
  }
  for (int p = 0; p < g.pairs.apex.size(); ++p) {
    const int x = g.first(p);
    const int y = g.second(p);
    if (g.d(g.m(p)) != g.d(x)) fail("composition-source", detail::at(x, y));
    if (g.c(g.m(p)) != g.c(y)) fail("composition-target", detail::at(x, y));
  }
  const bool units_typed = out.empty();
  if (units_typed) {
    for (int x = 0; x < g.B1.size(); ++x) {
      if (g.compose(g.e(g.d(x)), x) != x || g.compose(x, g.e(g.c(x))) != x) fail("unit-law", detail::at(x));
    }
  }
  for (int x = 0; x < g.B1.size(); ++x) {
    if (g.d(g.i(x)) != g.c(x)) fail("inverse-source", detail::at(x));
    if (g.c(g.i(x)) != g.d(x)) fail("inverse-target", detail::at(x));
  }
  if (!out.empty()) return out;

  // Successors of each object, for the associativity sweep.
  std::vector<std::vector<int>> from(static_cast<std::size_t>(g.B0.size()));
  for (int y = 0; y < g.B1.size(); ++y) from[static_cast<std::size_t>(g.d(y))].push_back(y);
  for (int x = 0; x < g.B1.size(); ++x) {
    bool broken = false;
    for (int y : from[static_cast<std::size_t>(g.c(x))]) {
      const int xy = g.compose(x, y);
      for (int z : from[static_cast<std::size_t>(g.c(y))]) {
        if (g.compose(xy, z) != g.compose(x, g.compose(y, z))) {
          fail("associativity", "at (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")");
          broken = true;
          break;
        }
      }
      if (broken) break;
    }
    if (broken) break;
  }
  for (int x = 0; x < g.B1.size(); ++x) {
    if (g.compose(x, g.i(x)) != g.e(g.d(x)) || g.compose(g.i(x), x) != g.e(g.c(x))) {
      fail("inverse-law", detail::at(x));
    }
  }
  return out;
}

inline bool is_valid(const Groupoid& g) { return validate_groupoid(g).empty(); }

// ---------------------------------------------------------------------------
// Standard groupoids

/// The discrete groupoid [X]: only identity arrows.
inline Groupoid discrete_groupoid(const Object& x) {
  Morphism id = identity(x);
  return make_groupoid(x, x, id, id, id, id, [](int a, int) { return a; });
}

/// The terminal groupoid [1] of an instance.
inline Groupoid terminal_groupoid(Kind kind) { return discrete_groupoid(terminal_object(kind)); }

/// The zero groupoid [0] of a pointed instance.
inline Groupoid zero_groupoid(Kind kind) { return discrete_groupoid(zero_object(kind)); }

/// The indiscrete groupoid on X: exactly one arrow between any two objects.
inline Groupoid indiscrete_groupoid(const Object& x) {
  LimitResult sq = product(x, x);
  const Object& b1 = sq.apex;
  Morphism diag = mediate(sq, std::vector<Morphism>{identity(x), identity(x)});
  std::vector<int> swap(static_cast<std::size_t>(b1.size()));
  for (int p = 0; p < b1.size(); ++p) {
    const int t[2] = {b1.coord(p, 1), b1.coord(p, 0)};
    swap[static_cast<std::size_t>(p)] = *b1.find(t);
  }
  return make_groupoid(x, b1, sq.leg(0), sq.leg(1), diag, Morphism::unchecked(b1, b1, std::move(swap)),
                       [b1](int p, int q) {
                         const int t[2] = {b1.coord(p, 0), b1.coord(q, 1)};
                         return *b1.find(t);
                       });
}

/// The equivalence-relation groupoid of p: X -> Y, whose arrows are the pairs
/// (x, x') with p(x) = p(x').
inline Groupoid kernel_pair_groupoid(const Morphism& p) {
  LimitResult kp = pullback(p, p);
  const Object& b1 = kp.apex;
  const Object& x = p.dom();
  Morphism diag = pair_into(kp, identity(x), identity(x));
  std::vector<int> swap(static_cast<std::size_t>(b1.size()));
  for (int q = 0; q < b1.size(); ++q) {
    const int t[2] = {b1.coord(q, 1), b1.coord(q, 0)};
    swap[static_cast<std::size_t>(q)] = *b1.find(t);
  }
  return make_groupoid(x, b1, kp.leg(0), kp.leg(1), diag, Morphism::unchecked(b1, b1, std::move(swap)),
                       [b1](int a, int b) {
                         const int t[2] = {b1.coord(a, 0), b1.coord(b, 1)};
                         return *b1.find(t);
                       });
}

/// One-object groupoid of an abelian group G in FinAb (B0 = 0, B1 = G).
inline Groupoid delooping(const Object& g) {
  if (g.kind() != Kind::FinAb) throw CapabilityError("delooping of an object needs FinAb; use group_delooping");
  Object zero = zero_object(Kind::FinAb);
  std::vector<int> neg(static_cast<std::size_t>(g.size()));
  for (int x = 0; x < g.size(); ++x) neg[static_cast<std::size_t>(x)] = g.neg(x);
  return make_groupoid(zero, g, zero_morphism(g, zero), zero_morphism(g, zero), zero_morphism(zero, g),
                       Morphism::unchecked(g, g, std::move(neg)), [g](int x, int y) { return g.add(x, y); });
}

/// A finite group given by its multiplication table (row-major, identity 0).
struct GroupTable {
  int order = 1;
  std::vector<int> mul{0};

  int operator()(int x, int y) const { return mul[static_cast<std::size_t>(x) * order + y]; }
  int inverse(int x) const {
    for (int y = 0; y < order; ++y) {
      if ((*this)(x, y) == 0) return y;
    }
    throw StructureError("group table without inverses");
  }
};

inline GroupTable cyclic_table(int n) {
  GroupTable t;
  t.order = n;
  t.mul.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t.mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return t;
}

/// The symmetric group on three letters, elements in lexicographic order of
/// their permutation words.
inline GroupTable symmetric3_table() {
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  GroupTable t;
  t.order = 6;
  t.mul.assign(36, 0);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      int comp[3];
      for (int k = 0; k < 3; ++k) comp[k] = perms[b][perms[a][k]];  // a first, then b
      for (int r = 0; r < 6; ++r) {
        if (perms[r][0] == comp[0] && perms[r][1] == comp[1] && perms[r][2] == comp[2]) t.mul[static_cast<std::size_t>(a) * 6 + b] = r;
      }
    }
  }
  return t;
}

/// One-object groupoid of a finite group in FinSet or FinPtdSet; the unit is
/// the basepoint in the pointed case.
inline Groupoid group_delooping(Kind kind, const GroupTable& t) {
  if (kind == Kind::FinAb) throw CapabilityError("group_delooping is for the set-based instances");
  Object b0 = kind == Kind::FinSet ? Object::finite_set(1) : Object::pointed_set(1);
  Object b1 = kind == Kind::FinSet ? Object::finite_set(t.order) : Object::pointed_set(t.order, 0);
  std::vector<int> inv(static_cast<std::size_t>(t.order));
  for (int x = 0; x < t.order; ++x) inv[static_cast<std::size_t>(x)] = t.inverse(x);
  return make_groupoid(b0, b1, to_terminal(b1, b0), to_terminal(b1, b0), Morphism::unchecked(b0, b1, {0}),
                       Morphism::unchecked(b1, b1, std::move(inv)), [t](int x, int y) { return t(x, y); });
}

/// Action groupoid of a group acting on X by `act(g, x)`, where acting by
/// "g then h" is acting by g and then by h. Arrows are pairs (g, x): x -> g.x,
/// stored in lexicographic order. In FinPtdSet the action must fix the basepoint.
inline Groupoid action_groupoid(const Object& x, const GroupTable& t, const std::function<int(int, int)>& act) {
  if (x.kind() == Kind::FinAb) throw CapabilityError("action groupoids are built in the set-based instances");
  const bool pointed = x.kind() == Kind::FinPtdSet;
  Object g = pointed ? Object::pointed_set(t.order, 0) : Object::finite_set(t.order);
  LimitResult prod = product(g, x);
  const Object& b1 = prod.apex;
  std::vector<int> dmap(static_cast<std::size_t>(b1.size()));
  std::vector<int> cmap(static_cast<std::size_t>(b1.size()));
  std::vector<int> imap(static_cast<std::size_t>(b1.size()));
  for (int p = 0; p < b1.size(); ++p) {
    const int h = b1.coord(p, 0);
    const int v = b1.coord(p, 1);
    dmap[static_cast<std::size_t>(p)] = v;
    cmap[static_cast<std::size_t>(p)] = act(h, v);
    const int t2[2] = {t.inverse(h), act(h, v)};
    imap[static_cast<std::size_t>(p)] = *b1.find(t2);
  }
  std::vector<int> emap(static_cast<std::size_t>(x.size()));
  for (int v = 0; v < x.size(); ++v) {
    const int t2[2] = {0, v};
    emap[static_cast<std::size_t>(v)] = *b1.find(t2);
  }
  return make_groupoid(x, b1, Morphism::unchecked(b1, x, std::move(dmap)), Morphism::unchecked(b1, x, std::move(cmap)),
                       Morphism::unchecked(x, b1, std::move(emap)), Morphism::unchecked(b1, b1, std::move(imap)),
                       [b1, t](int p, int q) {
                         // (g, x) then (h, g.x) is (g then h, x)
                         const int tt[2] = {t(b1.coord(p, 0), b1.coord(q, 0)), b1.coord(p, 1)};
                         return *b1.find(tt);
                       });
}

/// Product groupoid, computed level-wise.
inline Groupoid product_groupoid(const Groupoid& a, const Groupoid& b) {
  LimitResult p0 = product(a.B0, b.B0);
  LimitResult p1 = product(a.B1, b.B1);
  auto both = [&](const Morphism& f, const Morphism& g, const LimitResult& dom, const LimitResult& cod) {
    return mediate(cod, std::vector<Morphism>{compose(dom.leg(0), f), compose(dom.leg(1), g)});
  };
  Morphism d = both(a.d, b.d, p1, p0);
  Morphism c = both(a.c, b.c, p1, p0);
  Morphism e = both(a.e, b.e, p0, p1);
  Morphism i = both(a.i, b.i, p1, p1);
  const Object b1 = p1.apex;
  return make_groupoid(p0.apex, b1, d, c, e, i, [a, b, b1](int x, int y) {
    const int t[2] = {a.compose(b1.coord(x, 0), b1.coord(y, 0)), b.compose(b1.coord(x, 1), b1.coord(y, 1))};
    return *b1.find(t);
  });
}

/// Disjoint union of two groupoids in FinSet; objects and arrows of `a` come first.
inline Groupoid coproduct_groupoid(const Groupoid& a, const Groupoid& b) {
  if (a.kind() != Kind::FinSet || b.kind() != Kind::FinSet) throw CapabilityError("coproducts are built in FinSet");
  const int n0 = a.B0.size();
  const int n1 = a.B1.size();
  Object b0 = Object::finite_set(n0 + b.B0.size());
  Object b1 = Object::finite_set(n1 + b.B1.size());
  auto glue = [](const Morphism& f, const Morphism& g, int shift, const Object& dom, const Object& cod) {
    std::vector<int> map = f.map();
    for (int v : g.map()) map.push_back(v + shift);
    return Morphism::unchecked(dom, cod, std::move(map));
  };
  return make_groupoid(b0, b1, glue(a.d, b.d, n0, b1, b0), glue(a.c, b.c, n0, b1, b0), glue(a.e, b.e, n1, b0, b1),
                       glue(a.i, b.i, n1, b1, b1), [a, b, n1](int x, int y) {
                         return x < n1 ? a.compose(x, y) : b.compose(x - n1, y - n1) + n1;
                       });
}

/// The groupoid of a FinAb arrow delta: N -> A0. Arrows are pairs (a, n) at
/// index a*|N| + n, going from a to a + delta(n).
inline Groupoid groupoid_from_arrow(const Morphism& delta) {
  if (delta.kind() != Kind::FinAb) throw CapabilityError("groupoid_from_arrow needs FinAb");
  const Object& a0 = delta.cod();
  const Object& n = delta.dom();
  const int nn = n.size();
  Object a1 = direct_sum(a0, n);
  std::vector<int> d(static_cast<std::size_t>(a1.size()));
  std::vector<int> c(static_cast<std::size_t>(a1.size()));
  std::vector<int> inv(static_cast<std::size_t>(a1.size()));
  for (int x = 0; x < a1.size(); ++x) {
    const int a = x / nn;
    const int k = x % nn;
    d[static_cast<std::size_t>(x)] = a;
    c[static_cast<std::size_t>(x)] = a0.add(a, delta(k));
    inv[static_cast<std::size_t>(x)] = a0.add(a, delta(k)) * nn + n.neg(k);
  }
  std::vector<int> e(static_cast<std::size_t>(a0.size()));
  for (int a = 0; a < a0.size(); ++a) e[static_cast<std::size_t>(a)] = a * nn + n.zero();
  return make_groupoid(a0, a1, Morphism::unchecked(a1, a0, std::move(d)), Morphism::unchecked(a1, a0, std::move(c)),
                       Morphism::unchecked(a0, a1, std::move(e)), Morphism::unchecked(a1, a1, std::move(inv)),
                       [n, nn](int x, int y) { return (x / nn) * nn + n.add(x % nn, y % nn); });
}

/// Full subgroupoid on the objects in the image of a mono s: S -> B0.
inline Groupoid full_subgroupoid(const Groupoid& b, const Morphism& s) {
  const Object& so = s.dom();
  LimitResult arrows = finite_limit(Diagram{{so, b.B1, so, b.B0, b.B0}, {{0, 3, s}, {1, 3, b.d}, {1, 4, b.c}, {2, 4, s}}});
  const Object& a1 = arrows.apex;
  Morphism e = mediate(arrows, std::vector<Morphism>{identity(so), compose(s, b.e), identity(so)});
  std::vector<int> inv(static_cast<std::size_t>(a1.size()));
  for (int x = 0; x < a1.size(); ++x) {
    const int t[3] = {a1.coord(x, 2), b.i(a1.coord(x, 1)), a1.coord(x, 0)};
    inv[static_cast<std::size_t>(x)] = *a1.find(t);
  }
  return make_groupoid(so, a1, arrows.leg(0), arrows.leg(2), e, Morphism::unchecked(a1, a1, std::move(inv)),
                       [a1, b](int x, int y) {
                         const int t[3] = {a1.coord(x, 0), b.compose(a1.coord(x, 1), a1.coord(y, 1)), a1.coord(y, 2)};
                         return *a1.find(t);
                       });
}

/// Groupoid whose objects are the arrows of B and whose arrows (x, y) go from
/// x to x then y. Its codomain projection to B is a discrete fibration.
inline Groupoid arrow_action_groupoid(const Groupoid& b) {
  const Object& a0 = b.B1;
  const Object& a1 = b.pairs.apex;
  std::vector<int> e(static_cast<std::size_t>(a0.size()));
  std::vector<int> inv(static_cast<std::size_t>(a1.size()));
  for (int x = 0; x < a0.size(); ++x) e[static_cast<std::size_t>(x)] = b.pair(x, b.e(b.c(x)));
  for (int p = 0; p < a1.size(); ++p) inv[static_cast<std::size_t>(p)] = b.pair(b.m(p), b.i(b.second(p)));
  return make_groupoid(a0, a1, b.pairs.leg(0), b.m, Morphism::unchecked(a0, a1, std::move(e)),
                       Morphism::unchecked(a1, a1, std::move(inv)),
                       [b](int p, int q) { return b.pair(b.first(p), b.compose(b.second(p), b.second(q))); });
}

}  // namespace groupoid_lab
