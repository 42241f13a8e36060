#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/abelian.hpp"
#include "groupoid_lab/arrow_category.hpp"
#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/functor_classes.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/homotopy_limits.hpp"
#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform in [lo, hi].
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  int below(int n) { return between(0, n - 1); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  T pick(const std::vector<T>& items) {
    if (items.empty()) throw InvariantViolation("pick from an empty list");
    return items[static_cast<std::size_t>(below(static_cast<int>(items.size())))];
  }
  template <class T>
  void shuffle(std::vector<T>& items) {
    std::shuffle(items.begin(), items.end(), engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Bounds on generated carriers. Set instances bound the object count and
/// group order; FinAb bounds the order of B1.
struct SizeBudget {
  int max_objects = 4;
  int max_group_order = 6;
  int max_arrows = 16;
};

struct GeneratedGroupoid {
  Groupoid groupoid;
  std::string family;
};

/// Classification known by construction. Unset fields are unknown.
struct Expected {
  std::optional<FibrationClass> fibration;
  std::optional<bool> star;
  std::optional<bool> fully_faithful;
  std::optional<bool> weak_equivalence;
  std::optional<bool> equivalence;
};

struct GeneratedFunctor {
  Functor functor;
  std::string family;
  Expected expected;
};

// ---------------------------------------------------------------------------
// Objects and morphisms

inline Object random_abelian_group(Rng& rng, int max_order) {
  const auto types = abelian_group_types(std::max(1, max_order));
  return abelian_group_of_type(rng.pick(types));
}

inline Object random_object(Kind kind, Rng& rng, int max_size, int min_size = 1) {
  switch (kind) {
    case Kind::FinSet: return Object::finite_set(rng.between(min_size, max_size));
    case Kind::FinPtdSet: return Object::pointed_set(rng.between(std::max(1, min_size), max_size), 0);
    case Kind::FinAb: break;
  }
  for (;;) {
    Object g = random_abelian_group(rng, max_size);
    if (g.size() >= min_size) return g;
  }
}

/// A uniformly random morphism of the instance (homomorphisms are sampled
/// from the full list).
inline Morphism random_morphism(const Object& x, const Object& y, Rng& rng) {
  if (x.kind() == Kind::FinAb) return rng.pick(homomorphisms(x, y));
  std::vector<int> map(static_cast<std::size_t>(x.size()));
  for (auto& v : map) v = rng.below(y.size());
  if (x.kind() == Kind::FinPtdSet) map[static_cast<std::size_t>(x.basepoint())] = y.basepoint();
  return Morphism::unchecked(x, y, std::move(map));
}

inline std::optional<Morphism> random_surjection(const Object& x, const Object& y, Rng& rng) {
  if (x.kind() == Kind::FinAb) {
    std::vector<Morphism> surj;
    for (auto& h : homomorphisms(x, y)) {
      if (is_surjective(h)) surj.push_back(std::move(h));
    }
    if (surj.empty()) return std::nullopt;
    return rng.pick(surj);
  }
  const bool pointed = x.kind() == Kind::FinPtdSet;
  if (x.size() < y.size()) return std::nullopt;
  std::vector<int> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  if (pointed) order.erase(order.begin() + x.basepoint());
  rng.shuffle(order);
  std::vector<int> map(static_cast<std::size_t>(x.size()), -1);
  if (pointed) map[static_cast<std::size_t>(x.basepoint())] = y.basepoint();
  std::vector<int> targets;
  for (int v = 0; v < y.size(); ++v) {
    if (!pointed || v != y.basepoint()) targets.push_back(v);
  }
  std::size_t k = 0;
  for (int t : targets) map[static_cast<std::size_t>(order[k++])] = t;
  for (; k < order.size(); ++k) map[static_cast<std::size_t>(order[k])] = rng.below(y.size());
  return Morphism::unchecked(x, y, std::move(map));
}

// ---------------------------------------------------------------------------
// Independent oracles used for tags

/// Whether some additive s: Y -> X has s then f equal to the identity, by
/// enumerating every homomorphism Y -> X.
inline bool has_additive_section_by_enumeration(const Morphism& f) {
  for (const auto& s : homomorphisms(f.cod(), f.dom())) {
    bool ok = true;
    for (int y = 0; y < f.cod().size() && ok; ++y) ok = f(s(y)) == y;
    if (ok) return true;
  }
  return false;
}

inline bool splits(const Morphism& f) {
  if (!is_surjective(f)) return false;
  if (f.kind() != Kind::FinAb) return true;
  return has_additive_section_by_enumeration(f);
}

inline FibrationClass class_from_surjection(const Morphism& f) {
  if (is_injective(f) && is_surjective(f)) return FibrationClass::discrete_fibration;
  if (splits(f)) return FibrationClass::split_epi_fibration;
  if (is_surjective(f)) return FibrationClass::fibration;
  return FibrationClass::not_fibration;
}

// ---------------------------------------------------------------------------
// Groupoids

namespace detail {

inline GroupTable random_group_table(Rng& rng, int max_order) {
  std::vector<GroupTable> tables;
  for (int n = 1; n <= max_order; ++n) tables.push_back(cyclic_table(n));
  if (max_order >= 6) tables.push_back(symmetric3_table());
  return rng.pick(tables);
}

/// Z/n rotating the first m points of X (m dividing n) or S3 permuting the
/// first three; the remaining points are fixed. In the pointed case point 0 is fixed.
struct ActionGroupoid {
  Groupoid groupoid;
  GroupTable table;
};

inline ActionGroupoid random_action_groupoid(Kind kind, Rng& rng, const SizeBudget& b) {
  const bool pointed = kind == Kind::FinPtdSet;
  const int offset = pointed ? 1 : 0;
  const bool s3 = b.max_group_order >= 6 && b.max_objects >= 3 + offset && rng.chance(0.3);
  if (s3) {
    const int size = rng.between(3 + offset, b.max_objects);
    Object x = pointed ? Object::pointed_set(size, 0) : Object::finite_set(size);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    return {action_groupoid(x, symmetric3_table(),
                            [perms, offset](int g, int v) {
                              if (v < offset || v >= offset + 3) return v;
                              return perms[g][v - offset] + offset;
                            }),
            symmetric3_table()};
  }
  const int n = rng.between(1, std::max(1, b.max_group_order));
  std::vector<int> divisors;
  for (int m = 1; m <= n; ++m) {
    if (n % m == 0 && m + offset <= b.max_objects) divisors.push_back(m);
  }
  if (divisors.empty()) divisors.push_back(1);
  const int m = rng.pick(divisors);
  const int size = rng.between(m + offset, std::max(m + offset, b.max_objects));
  Object x = pointed ? Object::pointed_set(size, 0) : Object::finite_set(size);
  return {action_groupoid(x, cyclic_table(n),
                          [m, offset](int g, int v) {
                            if (v < offset || v >= offset + m) return v;
                            return (v - offset + g) % m + offset;
                          }),
          cyclic_table(n)};
}

inline Groupoid random_from_arrow(Rng& rng, int max_arrows) {
  for (;;) {
    Object a0 = random_abelian_group(rng, max_arrows);
    Object n = random_abelian_group(rng, std::max(1, max_arrows / a0.size()));
    if (a0.size() * n.size() > max_arrows) continue;
    return groupoid_from_arrow(random_morphism(n, a0, rng));
  }
}

}  // namespace detail

inline std::vector<std::string> groupoid_families(Kind kind) {
  switch (kind) {
    case Kind::FinSet:
      return {"discrete", "indiscrete", "delooping", "action", "kernel-pair", "coproduct", "product"};
    case Kind::FinPtdSet: return {"discrete", "indiscrete", "delooping", "action", "kernel-pair", "product"};
    case Kind::FinAb: return {"discrete", "indiscrete", "delooping", "from-arrow", "product"};
  }
  return {};
}

inline GeneratedGroupoid gen_groupoid(Kind kind, Rng& rng, const SizeBudget& b = {}, int depth = 0) {
  auto families = groupoid_families(kind);
  if (depth > 0) {
    families.erase(std::remove_if(families.begin(), families.end(),
                                  [](const std::string& f) { return f == "product" || f == "coproduct"; }),
                   families.end());
  }
  const std::string family = rng.pick(families);
  const int small_side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(b.max_arrows))));
  if (kind == Kind::FinAb) {
    if (family == "discrete") return {discrete_groupoid(random_abelian_group(rng, b.max_arrows)), family};
    if (family == "indiscrete") return {indiscrete_groupoid(random_abelian_group(rng, small_side)), family};
    if (family == "delooping") return {delooping(random_abelian_group(rng, b.max_arrows)), family};
    if (family == "from-arrow") return {detail::random_from_arrow(rng, b.max_arrows), family};
    SizeBudget half = b;
    half.max_arrows = small_side;
    Groupoid x = gen_groupoid(kind, rng, half, depth + 1).groupoid;
    Groupoid y = gen_groupoid(kind, rng, half, depth + 1).groupoid;
    return {product_groupoid(x, y), family};
  }
  const bool pointed = kind == Kind::FinPtdSet;
  if (family == "discrete") return {discrete_groupoid(random_object(kind, rng, b.max_objects)), family};
  if (family == "indiscrete") {
    return {indiscrete_groupoid(random_object(kind, rng, std::min(b.max_objects, small_side))), family};
  }
  if (family == "delooping") return {group_delooping(kind, detail::random_group_table(rng, b.max_group_order)), family};
  if (family == "action") return {detail::random_action_groupoid(kind, rng, b).groupoid, family};
  if (family == "kernel-pair") {
    Object x = random_object(kind, rng, b.max_objects);
    Object y = random_object(kind, rng, x.size());
    Morphism p = random_morphism(x, y, rng);
    Groupoid g = kernel_pair_groupoid(p);
    if (g.B1.size() > b.max_arrows) return {discrete_groupoid(x), "discrete"};
    return {g, family};
  }
  SizeBudget half = b;
  half.max_objects = std::max(1, b.max_objects / 2);
  half.max_group_order = std::max(1, b.max_group_order / 2);
  half.max_arrows = small_side;
  Groupoid x = gen_groupoid(kind, rng, half, depth + 1).groupoid;
  Groupoid y = gen_groupoid(kind, rng, half, depth + 1).groupoid;
  if (family == "coproduct" && !pointed) return {coproduct_groupoid(x, y), family};
  return {product_groupoid(x, y), "product"};
}

// ---------------------------------------------------------------------------
// Functors

/// A random valid functor A -> B, found by assigning arrows one at a time and
/// backtracking on composition clashes. Falls back to a constant functor.
inline Functor search_functor(const Groupoid& a, const Groupoid& b, Rng& rng, int attempts = 6, long step_cap = 20000) {
  const bool pointed = a.kind() == Kind::FinPtdSet;
  std::vector<std::vector<std::vector<int>>> hom(static_cast<std::size_t>(b.B0.size()),
                                                 std::vector<std::vector<int>>(static_cast<std::size_t>(b.B0.size())));
  for (int y = 0; y < b.B1.size(); ++y) hom[static_cast<std::size_t>(b.d(y))][static_cast<std::size_t>(b.c(y))].push_back(y);
  // Pairs touching each arrow, for incremental checks.
  std::vector<std::vector<int>> touching(static_cast<std::size_t>(a.B1.size()));
  for (int p = 0; p < a.pairs.apex.size(); ++p) {
    touching[static_cast<std::size_t>(a.first(p))].push_back(p);
    touching[static_cast<std::size_t>(a.second(p))].push_back(p);
    touching[static_cast<std::size_t>(a.m(p))].push_back(p);
  }
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<int> f0(static_cast<std::size_t>(a.B0.size()));
    for (auto& v : f0) v = rng.below(b.B0.size());
    if (pointed) f0[static_cast<std::size_t>(a.B0.basepoint())] = b.B0.basepoint();
    std::vector<int> f1(static_cast<std::size_t>(a.B1.size()), -1);
    for (int x = 0; x < a.B0.size(); ++x) f1[static_cast<std::size_t>(a.e(x))] = b.e(f0[static_cast<std::size_t>(x)]);
    std::vector<int> order;
    for (int x = 0; x < a.B1.size(); ++x) {
      if (f1[static_cast<std::size_t>(x)] < 0) order.push_back(x);
    }
    rng.shuffle(order);
    auto consistent = [&](int x) {
      for (int p : touching[static_cast<std::size_t>(x)]) {
        const int u = f1[static_cast<std::size_t>(a.first(p))];
        const int v = f1[static_cast<std::size_t>(a.second(p))];
        const int w = f1[static_cast<std::size_t>(a.m(p))];
        if (u >= 0 && v >= 0 && w >= 0 && b.compose(u, v) != w) return false;
      }
      return true;
    };
    long steps = 0;
    auto assign = [&](auto&& self, std::size_t k) -> bool {
      if (k == order.size()) return true;
      if (++steps > step_cap) return false;
      const int x = order[k];
      std::vector<int> cands = hom[static_cast<std::size_t>(f0[static_cast<std::size_t>(a.d(x))])]
                                  [static_cast<std::size_t>(f0[static_cast<std::size_t>(a.c(x))])];
      rng.shuffle(cands);
      for (int y : cands) {
        f1[static_cast<std::size_t>(x)] = y;
        if (consistent(x) && self(self, k + 1)) return true;
      }
      f1[static_cast<std::size_t>(x)] = -1;
      return false;
    };
    bool units_ok = true;
    for (int x = 0; x < a.B0.size() && units_ok; ++x) units_ok = consistent(a.e(x));
    if (units_ok && assign(assign, 0)) {
      return {a, b, Morphism::unchecked(a.B0, b.B0, std::move(f0)), Morphism::unchecked(a.B1, b.B1, std::move(f1))};
    }
  }
  const int target = pointed ? b.B0.basepoint() : rng.below(b.B0.size());
  return {a, b, Morphism::unchecked(a.B0, b.B0, std::vector<int>(static_cast<std::size_t>(a.B0.size()), target)),
          Morphism::unchecked(a.B1, b.B1, std::vector<int>(static_cast<std::size_t>(a.B1.size()), b.e(target)))};
}

/// A FinAb functor G(delta) -> G(delta') given by a commutative square
/// (phi0, psi), with every flag predicted from phi0, psi, delta, delta'.
struct SquareFunctor {
  Morphism delta;
  Morphism delta_prime;
  Morphism phi0;
  Morphism psi;
  GeneratedFunctor generated;
};

namespace detail {

/// Tags for a FinAb square functor. On arrows (a, n) -> (phi0 a, psi n):
/// tau_d is id x psi, the kernel-restricted tau_d is onto exactly when
/// delta'^-1(im phi0) lies in im psi, full faithfulness asks <delta, psi> to
/// be a bijection onto A0 x_{phi0, delta'} N', and essential surjectivity
/// asks phi0 + delta' to be onto B0.
inline Expected square_expectation(const Morphism& delta, const Morphism& delta_prime, const Morphism& phi0,
                                   const Morphism& psi) {
  Expected ex;
  ex.fibration = class_from_surjection(psi);
  const auto im_phi = image_mask(phi0);
  const auto im_psi = image_mask(psi);
  bool star = true;
  for (int n = 0; n < delta_prime.dom().size() && star; ++n) {
    if (im_phi[static_cast<std::size_t>(delta_prime(n))] && !im_psi[static_cast<std::size_t>(n)]) star = false;
  }
  ex.star = star;
  const Object& a0 = phi0.dom();
  const Object& b0 = phi0.cod();
  const Object& nn = delta.dom();
  const Object& np = psi.cod();
  // <delta, psi>: N -> {(x, n') : phi0 x = delta' n'}.
  std::vector<int> hit(static_cast<std::size_t>(a0.size()) * np.size(), 0);
  bool injective = true;
  for (int n = 0; n < nn.size(); ++n) {
    int& h = hit[static_cast<std::size_t>(delta(n)) * np.size() + psi(n)];
    if (h) injective = false;
    h = 1;
  }
  bool surjective = true;
  for (int x = 0; x < a0.size(); ++x) {
    for (int m = 0; m < np.size(); ++m) {
      if (phi0(x) == delta_prime(m) && !hit[static_cast<std::size_t>(x) * np.size() + m]) surjective = false;
    }
  }
  ex.fully_faithful = injective && surjective;
  Object sum = direct_sum(a0, np);
  std::vector<int> sigma(static_cast<std::size_t>(sum.size()));
  for (int s = 0; s < sum.size(); ++s) sigma[static_cast<std::size_t>(s)] = b0.add(phi0(s / np.size()), delta_prime(s % np.size()));
  Morphism plus = Morphism::unchecked(sum, b0, std::move(sigma));
  ex.weak_equivalence = *ex.fully_faithful && is_surjective(plus);
  ex.equivalence = *ex.fully_faithful && is_surjective(plus) && has_additive_section_by_enumeration(plus);
  return ex;
}

}  // namespace detail

inline SquareFunctor make_square_functor(const Morphism& delta, const Morphism& delta_prime, const Morphism& phi0,
                                         const Morphism& psi, std::string family = "square") {
  Groupoid src = groupoid_from_arrow(delta);
  Groupoid dst = groupoid_from_arrow(delta_prime);
  return {delta, delta_prime, phi0, psi,
          {functor_from_square(src, dst, phi0, psi), std::move(family),
           detail::square_expectation(delta, delta_prime, phi0, psi)}};
}

/// Every psi: N -> N' completing phi0 to a commutative square.
inline std::vector<Morphism> square_completions(const Morphism& delta, const Morphism& delta_prime, const Morphism& phi0,
                                                const Object& np) {
  std::vector<Morphism> out;
  for (auto& psi : homomorphisms(delta.dom(), np)) {
    bool ok = true;
    for (int n = 0; n < delta.dom().size() && ok; ++n) ok = phi0(delta(n)) == delta_prime(psi(n));
    if (ok) out.push_back(std::move(psi));
  }
  return out;
}

/// A random FinAb functor between arrow groupoids with |A1|, |B1| bounded.
inline SquareFunctor random_square_functor(Rng& rng, int max_arrows) {
  auto pick_arrow = [&] {
    Object a0 = random_abelian_group(rng, max_arrows);
    Object n = random_abelian_group(rng, std::max(1, max_arrows / a0.size()));
    return random_morphism(n, a0, rng);
  };
  Morphism delta = pick_arrow();
  Morphism delta_prime = pick_arrow();
  auto phis = homomorphisms(delta.cod(), delta_prime.cod());
  rng.shuffle(phis);
  for (const auto& phi0 : phis) {
    auto psis = square_completions(delta, delta_prime, phi0, delta_prime.dom());
    if (!psis.empty()) return make_square_functor(delta, delta_prime, phi0, rng.pick(psis));
  }
  throw InvariantViolation("the zero square always completes");
}

/// A FinAb fibration square: (id, psi) with psi onto and delta = psi.delta'.
inline SquareFunctor random_square_fibration(Rng& rng, int max_arrows) {
  for (;;) {
    Object b0 = random_abelian_group(rng, max_arrows);
    Object np = random_abelian_group(rng, std::max(1, max_arrows / b0.size()));
    Object n = random_abelian_group(rng, std::max(1, max_arrows / b0.size()));
    auto psi = random_surjection(n, np, rng);
    if (!psi) continue;
    Morphism delta_prime = random_morphism(np, b0, rng);
    return make_square_functor(compose(*psi, delta_prime), delta_prime, identity(b0), *psi, "square-fibration");
  }
}

/// Surjective homomorphisms without an additive section, between groups of
/// order at most max_order.
inline const std::vector<Morphism>& nonsplit_surjections(int max_order) {
  static std::map<int, std::vector<Morphism>> cache;
  auto it = cache.find(max_order);
  if (it != cache.end()) return it->second;
  std::vector<Morphism> out;
  for (const auto& ta : abelian_group_types(max_order)) {
    for (const auto& tb : abelian_group_types(max_order)) {
      const Object a = abelian_group_of_type(ta);
      const Object b = abelian_group_of_type(tb);
      if (b.size() < 2 || a.size() <= b.size()) continue;
      for (auto& f : homomorphisms(a, b)) {
        if (is_surjective(f) && !has_additive_section_by_enumeration(f)) out.push_back(std::move(f));
      }
    }
  }
  return cache.emplace(max_order, std::move(out)).first->second;
}

/// A square functor whose psi is a surjection with no section, so a
/// fibration that is not split. Needs max_arrows >= 8.
inline SquareFunctor random_nonsplit_square_fibration(Rng& rng, int max_arrows) {
  std::vector<Morphism> psis;
  for (const auto& f : nonsplit_surjections(std::max(4, max_arrows / 2))) {
    if (2 * f.dom().size() <= max_arrows) psis.push_back(f);
  }
  const Morphism psi = rng.pick(psis);
  const Object& n = psi.dom();
  const Object& np = psi.cod();
  for (;;) {
    Object a0 = random_abelian_group(rng, std::max(1, max_arrows / n.size()));
    Object b0 = random_abelian_group(rng, std::max(1, max_arrows / np.size()));
    Morphism delta = random_morphism(n, a0, rng);
    Morphism phi0 = random_morphism(a0, b0, rng);
    auto completions = homomorphisms(np, b0);
    rng.shuffle(completions);
    for (const auto& dp : completions) {
      bool ok = true;
      for (int x = 0; x < n.size() && ok; ++x) ok = dp(psi(x)) == phi0(delta(x));
      if (ok) return make_square_functor(delta, dp, phi0, psi, "nonsplit-square");
    }
  }
}

namespace detail {

/// Homomorphisms Z/n -> T for a group table: x -> g^x with g^n = 1.
inline std::vector<std::vector<int>> cyclic_homs(int n, const GroupTable& t) {
  std::vector<std::vector<int>> out;
  for (int g = 0; g < t.order; ++g) {
    std::vector<int> map(static_cast<std::size_t>(n));
    int acc = 0;
    for (int x = 0; x < n; ++x) {
      map[static_cast<std::size_t>(x)] = acc;
      acc = t(acc, g);
    }
    if (acc == 0) out.push_back(std::move(map));
  }
  return out;
}

inline std::vector<int> sign_of_s3() { return {0, 1, 1, 0, 0, 1}; }

}  // namespace detail

inline std::vector<std::string> functor_families(Kind kind) {
  switch (kind) {
    case Kind::FinSet:
      return {"identity", "embedding", "to-terminal", "projection", "indiscrete", "delooping-hom", "coproduct-inclusion",
              "action-quotient", "arrow-action", "search"};
    case Kind::FinPtdSet:
      return {"identity", "embedding", "to-terminal", "projection", "indiscrete", "delooping-hom", "arrow-action", "search"};
    case Kind::FinAb: return {"identity", "embedding", "to-terminal", "projection", "indiscrete", "square"};
  }
  return {};
}

namespace detail {

inline GeneratedFunctor delooping_hom_functor(Kind kind, Rng& rng, const SizeBudget& b, bool surjective_only) {
  for (;;) {
    const int n = rng.between(1, std::max(1, b.max_group_order));
    GroupTable target = random_group_table(rng, b.max_group_order);
    std::vector<std::vector<int>> homs = cyclic_homs(n, target);
    GroupTable source = cyclic_table(n);
    if (target.order == 2 && b.max_group_order >= 6 && rng.chance(0.25)) {
      source = symmetric3_table();
      homs = {std::vector<int>(6, 0), sign_of_s3()};
    }
    if (surjective_only) {
      homs.erase(std::remove_if(homs.begin(), homs.end(),
                                [&](const std::vector<int>& h) {
                                  std::vector<char> seen(static_cast<std::size_t>(target.order), 0);
                                  for (int v : h) seen[static_cast<std::size_t>(v)] = 1;
                                  return std::find(seen.begin(), seen.end(), 0) != seen.end();
                                }),
                 homs.end());
      if (homs.empty()) continue;
    }
    Groupoid bg = group_delooping(kind, source);
    Groupoid bh = group_delooping(kind, target);
    Morphism phi = Morphism::unchecked(bg.B1, bh.B1, rng.pick(homs));
    Expected ex;
    ex.fibration = class_from_surjection(phi);
    if (capabilities(kind).pointed) ex.star = is_surjective(phi);
    ex.fully_faithful = is_injective(phi) && is_surjective(phi);
    ex.weak_equivalence = ex.fully_faithful;
    ex.equivalence = ex.fully_faithful;
    return {delooping_functor(bg, bh, phi), "delooping-hom", ex};
  }
}

/// Whether exactly one arrow of B ends at the base point.
inline bool single_arrow_into_base(const Groupoid& b) {
  int count = 0;
  for (int y = 0; y < b.B1.size(); ++y) count += b.c(y) == b.B0.basepoint();
  return count == 1;
}

inline bool is_indiscrete_by_count(const Groupoid& g) {
  if (g.B1.size() != g.B0.size() * g.B0.size()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.B1.size()), 0);
  for (int y = 0; y < g.B1.size(); ++y) {
    char& s = seen[static_cast<std::size_t>(g.d(y)) * g.B0.size() + g.c(y)];
    if (s) return false;
    s = 1;
  }
  return true;
}

}  // namespace detail

namespace detail {

inline GeneratedFunctor functor_of_family(const std::string& family, Kind kind, Rng& rng, const SizeBudget& b) {
  const bool pointed = capabilities(kind).pointed;
  Expected ex;
  if (family == "identity") {
    Groupoid a = gen_groupoid(kind, rng, b).groupoid;
    ex = {FibrationClass::discrete_fibration, true, true, true, true};
    return {identity_functor(a), family, ex};
  }
  if (family == "embedding") {
    Groupoid a = gen_groupoid(kind, rng, b).groupoid;
    const bool disc = a.is_discrete();
    ex.fibration = disc ? FibrationClass::discrete_fibration : FibrationClass::not_fibration;
    if (pointed) ex.star = detail::single_arrow_into_base(a);
    ex.fully_faithful = disc;
    ex.weak_equivalence = disc;
    ex.equivalence = disc;
    return {discrete_embedding(a), family, ex};
  }
  if (family == "to-terminal") {
    Groupoid a = gen_groupoid(kind, rng, b).groupoid;
    ex.fibration = a.is_discrete() ? FibrationClass::discrete_fibration : FibrationClass::split_epi_fibration;
    if (pointed) ex.star = true;
    ex.fully_faithful = detail::is_indiscrete_by_count(a);
    ex.weak_equivalence = ex.fully_faithful;
    ex.equivalence = ex.fully_faithful;
    return {functor_to_terminal(a), family, ex};
  }
  if (family == "projection") {
    SizeBudget half = b;
    half.max_objects = std::max(1, b.max_objects / 2 + 1);
    half.max_arrows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(b.max_arrows))) + 1);
    Groupoid x = gen_groupoid(kind, rng, half, 1).groupoid;
    Groupoid y = gen_groupoid(kind, rng, half, 1).groupoid;
    Groupoid xy = product_groupoid(x, y);
    ex.fibration = y.is_discrete() ? FibrationClass::discrete_fibration : FibrationClass::split_epi_fibration;
    if (pointed) ex.star = true;
    ex.fully_faithful = detail::is_indiscrete_by_count(y);
    ex.weak_equivalence = ex.fully_faithful;
    ex.equivalence = ex.fully_faithful;
    return {product_projections(x, y, xy).first, family, ex};
  }
  if (family == "indiscrete") {
    const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(b.max_arrows))));
    Object x = random_object(kind, rng, std::min(side, kind == Kind::FinAb ? side : b.max_objects));
    Object y = random_object(kind, rng, std::min(side, kind == Kind::FinAb ? side : b.max_objects));
    Morphism f = random_morphism(x, y, rng);
    if (rng.chance(0.5)) {
      if (auto s = random_surjection(x, y, rng)) f = *s;
    }
    Groupoid ix = indiscrete_groupoid(x);
    Groupoid iy = indiscrete_groupoid(y);
    ex.fibration = class_from_surjection(f);
    if (pointed) ex.star = true;
    ex.fully_faithful = true;
    ex.weak_equivalence = true;
    ex.equivalence = true;
    return {indiscrete_functor(f, ix, iy), family, ex};
  }
  if (family == "delooping-hom") return detail::delooping_hom_functor(kind, rng, b, false);
  if (family == "coproduct-inclusion") {
    SizeBudget half = b;
    half.max_objects = std::max(1, b.max_objects / 2);
    half.max_arrows = std::max(1, b.max_arrows / 2);
    Groupoid x = gen_groupoid(kind, rng, half, 1).groupoid;
    Groupoid y = gen_groupoid(kind, rng, half, 1).groupoid;
    Groupoid xy = coproduct_groupoid(x, y);
    ex.fibration = FibrationClass::discrete_fibration;
    ex.fully_faithful = true;
    ex.weak_equivalence = y.B0.size() == 0;
    return {coproduct_inclusions(x, y, xy).first, family, ex};
  }
  if (family == "action-quotient") {
    auto [act, table] = detail::random_action_groupoid(kind, rng, b);
    // Arrows (g, x) go to g in the one-object groupoid of the acting group.
    Groupoid bg = group_delooping(kind, table);
    std::vector<int> f1(static_cast<std::size_t>(act.B1.size()));
    for (int p = 0; p < act.B1.size(); ++p) f1[static_cast<std::size_t>(p)] = act.B1.coord(p, 0);
    Functor f{act, bg, to_terminal(act.B0, bg.B0), Morphism::unchecked(act.B1, bg.B1, std::move(f1))};
    ex.fibration = FibrationClass::discrete_fibration;
    return {f, family, ex};
  }
  if (family == "arrow-action") {
    Groupoid base = gen_groupoid(kind, rng, b).groupoid;
    ex.fibration = FibrationClass::discrete_fibration;
    if (pointed) ex.star = true;
    return {arrow_action_projection(arrow_action_groupoid(base), base), family, ex};
  }
  if (family == "square") return random_square_functor(rng, b.max_arrows).generated;
  Groupoid a = gen_groupoid(kind, rng, b).groupoid;
  Groupoid t = gen_groupoid(kind, rng, b).groupoid;
  return {search_functor(a, t, rng), "search", ex};
}

}  // namespace detail

/// One functor from the family mixture, tagged with what is known about it.
inline GeneratedFunctor gen_functor_from(const std::string& family, Kind kind, Rng& rng, const SizeBudget& b) {
  GeneratedFunctor out = detail::functor_of_family(family, kind, rng, b);
  if (!capabilities(kind).pointed) out.expected.star.reset();
  return out;
}

inline GeneratedFunctor gen_functor(Kind kind, Rng& rng, const SizeBudget& b = {}) {
  return gen_functor_from(rng.pick(functor_families(kind)), kind, rng, b);
}

/// Functors that are fibrations by construction. The classifier must agree.
inline GeneratedFunctor gen_fibration(Kind kind, Rng& rng, const SizeBudget& b = {}) {
  GeneratedFunctor out;
  const double roll = kind == Kind::FinAb ? rng.between(0, 99) / 100.0 : 1.0;
  if (roll < 0.35) {
    out = random_square_fibration(rng, b.max_arrows).generated;
  } else if (roll < 0.55 && b.max_arrows >= 8) {
    out = random_nonsplit_square_fibration(rng, b.max_arrows).generated;
  } else {
    std::vector<std::string> families{"identity", "to-terminal", "projection", "indiscrete-onto", "delooping-onto",
                                      "arrow-action"};
    if (kind == Kind::FinSet) {
      families.push_back("coproduct-inclusion");
      families.push_back("action-quotient");
    }
    const std::string family = rng.pick(families);
    if (family == "indiscrete-onto") {
      for (;;) {
        const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(b.max_arrows))));
        Object x = random_object(kind, rng, side);
        Object y = random_object(kind, rng, x.size());
        auto f = random_surjection(x, y, rng);
        if (!f) continue;
        Expected ex{class_from_surjection(*f), true, true, true, true};
        if (!capabilities(kind).pointed) ex.star.reset();
        out = {indiscrete_functor(*f, indiscrete_groupoid(x), indiscrete_groupoid(y)), family, ex};
        break;
      }
    } else if (family == "delooping-onto") {
      if (kind == Kind::FinAb) {
        Object g = random_abelian_group(rng, b.max_arrows);
        Object h = random_abelian_group(rng, g.size());
        auto phi = random_surjection(g, h, rng);
        if (!phi) phi = zero_morphism(g, zero_object(Kind::FinAb));
        Expected ex;
        ex.fibration = class_from_surjection(*phi);
        ex.star = true;
        out = {delooping_functor(delooping(g), delooping(phi->cod()), *phi), family, ex};
      } else {
        out = detail::delooping_hom_functor(kind, rng, b, true);
      }
    } else {
      out = gen_functor_from(family, kind, rng, b);
    }
  }
  if (rng.chance(0.2)) {
    out.functor = compose_functors(identity_functor(out.functor.A), out.functor);
    out.family += "+identity";
  }
  if (classify_fibration(out.functor) < FibrationClass::fibration) {
    throw InvariantViolation("generated fibration (" + out.family + ") is not classified as one");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak equivalences, fully faithful functors, discrete fibrations

inline std::vector<std::string> weak_equivalence_families(Kind kind) {
  std::vector<std::string> f{"identity", "delta", "gamma", "indiscrete-to-terminal", "projection-indiscrete",
                             "T-of-fibration"};
  if (capabilities(kind).pointed) f.push_back("J-of-fibration");
  if (kind == Kind::FinAb) {
    f.push_back("iso-square");
    f.push_back("nonsplit-quotient");
  }
  return f;
}

/// Functors that are weak equivalences by construction.
inline GeneratedFunctor gen_weak_equivalence(Kind kind, Rng& rng, const SizeBudget& b = {}) {
  const std::string family = rng.pick(weak_equivalence_families(kind));
  Expected ex;
  ex.fully_faithful = true;
  ex.weak_equivalence = true;
  if (family == "identity" || family == "delta" || family == "gamma") {
    // vecB grows like |B1|^3 / |B0|, so delta and gamma get a smaller base.
    SizeBudget base = b;
    if (family != "identity") {
      base.max_objects = std::min(b.max_objects, 3);
      base.max_group_order = std::min(b.max_group_order, 3);
      base.max_arrows = std::min(b.max_arrows, kind == Kind::FinAb ? 4 : 9);
    }
    Groupoid a = gen_groupoid(kind, rng, base).groupoid;
    ex.equivalence = true;
    if (family == "identity") return {identity_functor(a), family, ex};
    ArrowGroupoid ag = arrow_groupoid(a);
    return {family == "delta" ? ag.delta : ag.gamma, family, ex};
  }
  if (family == "indiscrete-to-terminal") {
    const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(b.max_arrows))));
    Object x = random_object(kind, rng, std::min(side, b.max_objects));
    ex.equivalence = true;
    return {functor_to_terminal(indiscrete_groupoid(x)), family, ex};
  }
  if (family == "projection-indiscrete") {
    SizeBudget half = b;
    half.max_objects = std::max(1, b.max_objects / 2 + 1);
    half.max_arrows = std::max(1, b.max_arrows / 4);
    Groupoid base = gen_groupoid(kind, rng, half, 1).groupoid;
    Groupoid ind = indiscrete_groupoid(random_object(kind, rng, 2));
    Groupoid prod = product_groupoid(base, ind);
    ex.equivalence = true;
    return {product_projections(base, ind, prod).first, family, ex};
  }
  if (family == "iso-square") {
    Object a0 = random_abelian_group(rng, b.max_arrows);
    Object n = random_abelian_group(rng, std::max(1, b.max_arrows / a0.size()));
    Morphism delta = random_morphism(n, a0, rng);
    // Transport delta along the automorphism x -> -x of both ends.
    SquareFunctor sq = make_square_functor(delta, delta, multiplication_by(a0, -1), multiplication_by(n, -1), family);
    return sq.generated;
  }
  if (family == "nonsplit-quotient") {
    // G(Ker p -> A0) -> [B0] for a surjection p with no section: a weak
    // equivalence that is not an equivalence.
    std::vector<Morphism> ps;
    for (const auto& p : nonsplit_surjections(std::max(4, b.max_arrows))) {
      if (p.dom().size() <= b.max_arrows) ps.push_back(p);
    }
    const Morphism p = rng.pick(ps);
    const LimitResult ker = kernel(p);
    const Object zero = zero_object(Kind::FinAb);
    return make_square_functor(kernel_inclusion(ker), zero_morphism(zero, p.cod()), p,
                               zero_morphism(ker.apex, zero), family)
        .generated;
  }
  SizeBudget small = b;
  small.max_objects = std::min(b.max_objects, 3);
  small.max_arrows = std::min(b.max_arrows, 8);
  small.max_group_order = std::min(b.max_group_order, 4);
  GeneratedFunctor fib = gen_fibration(kind, rng, small);
  if (family == "T-of-fibration") return {comparison_T(fib.functor).T, family, ex};
  return {comparison_J(fib.functor).J, family, ex};
}

/// Fully faithful functors in the pointed instances (and FinSet).
inline GeneratedFunctor gen_fully_faithful(Kind kind, Rng& rng, const SizeBudget& b = {}) {
  const int roll = rng.below(4);
  Expected ex;
  ex.fully_faithful = true;
  if (roll == 0) return gen_weak_equivalence(kind, rng, b);
  if (roll == 1) {
    Object x = random_object(kind, rng, kind == Kind::FinAb ? b.max_arrows : b.max_objects);
    return {discrete_embedding(discrete_groupoid(x)), "embedding-discrete", ex};
  }
  Groupoid base = gen_groupoid(kind, rng, b).groupoid;
  if (roll == 2 && capabilities(kind).pointed) {
    // A subobject of B0 as the kernel of a random morphism out of it.
    Object y = random_object(kind, rng, kind == Kind::FinAb ? base.B0.size() : b.max_objects);
    LimitResult ker = kernel(random_morphism(base.B0, y, rng));
    Groupoid sub = full_subgroupoid(base, kernel_inclusion(ker));
    // Arrows of the full subgroupoid are triples (s1, b, s2); F1 keeps b.
    std::vector<int> f1(static_cast<std::size_t>(sub.B1.size()));
    for (int x = 0; x < sub.B1.size(); ++x) f1[static_cast<std::size_t>(x)] = sub.B1.coord(x, 1);
    return {Functor{sub, base, kernel_inclusion(ker), Morphism::unchecked(sub.B1, base.B1, std::move(f1))},
            "full-subgroupoid", ex};
  }
  if (roll == 2) {
    std::vector<int> keep;
    for (int x = 0; x < base.B0.size(); ++x) {
      if (rng.chance(0.6)) keep.push_back(x);
    }
    if (keep.empty()) keep.push_back(0);
    Object s = Object::finite_set(static_cast<int>(keep.size()));
    Morphism inc0 = Morphism::unchecked(s, base.B0, keep);
    Groupoid sub = full_subgroupoid(base, inc0);
    std::vector<int> f1(static_cast<std::size_t>(sub.B1.size()));
    for (int x = 0; x < sub.B1.size(); ++x) f1[static_cast<std::size_t>(x)] = sub.B1.coord(x, 1);
    return {Functor{sub, base, inc0, Morphism::unchecked(sub.B1, base.B1, std::move(f1))}, "full-subgroupoid", ex};
  }
  SizeBudget small = b;
  small.max_objects = std::min(b.max_objects, 3);
  small.max_arrows = std::min(b.max_arrows, 8);
  small.max_group_order = std::min(b.max_group_order, 4);
  Functor f = gen_functor(kind, rng, small).functor;
  return {comparison_T(f).T, "T", ex};
}

/// A discrete fibration into B.
inline GeneratedFunctor gen_discrete_fibration_into(const Groupoid& base, Rng& rng, const SizeBudget& b = {}) {
  const Kind kind = base.kind();
  Expected ex;
  ex.fibration = FibrationClass::discrete_fibration;
  std::vector<std::string> families{"identity", "arrow-action", "product-discrete"};
  if (capabilities(kind).pointed) families.push_back("h-kernel-leg");
  const std::string family = rng.pick(families);
  if (family == "identity") return {identity_functor(base), family, ex};
  if (family == "arrow-action") return {arrow_action_projection(arrow_action_groupoid(base), base), family, ex};
  if (family == "product-discrete") {
    Groupoid x = discrete_groupoid(random_object(kind, rng, kind == Kind::FinAb ? 4 : 3));
    Groupoid prod = product_groupoid(base, x);
    return {product_projections(base, x, prod).first, family, ex};
  }
  SizeBudget small = b;
  small.max_objects = std::min(b.max_objects, 3);
  small.max_arrows = std::min(b.max_arrows, 8);
  Groupoid target = gen_groupoid(kind, rng, small).groupoid;
  Functor f = search_functor(base, target, rng);
  if (kind == Kind::FinAb) f = zero_functor(base, target);
  return {strong_h_kernel(f).KF, family, ex};
}

/// A weak equivalence into B.
inline GeneratedFunctor gen_weak_equivalence_into(const Groupoid& base, Rng& rng) {
  Expected ex;
  ex.fully_faithful = true;
  ex.weak_equivalence = true;
  ex.equivalence = true;
  const int roll = rng.below(4);
  if (roll == 0) return {identity_functor(base), "identity", ex};
  if (roll == 1 || roll == 2) {
    ArrowGroupoid ag = arrow_groupoid(base);
    return {roll == 1 ? ag.delta : ag.gamma, roll == 1 ? "delta" : "gamma", ex};
  }
  Groupoid ind = indiscrete_groupoid(random_object(base.kind(), rng, 2));
  Groupoid prod = product_groupoid(base, ind);
  return {product_projections(base, ind, prod).first, "projection-indiscrete", ex};
}

// ---------------------------------------------------------------------------
// Arrow squares

/// A random commutative square (f, f0): a -> b with carriers of size <= max_size.
inline ArrowMorphism gen_arrow_morphism(Kind kind, Rng& rng, int max_size, bool f_surjective = false) {
  for (int attempt = 0;; ++attempt) {
    Object a_top = random_object(kind, rng, max_size);
    Object a_bot = random_object(kind, rng, max_size);
    Object b_top = random_object(kind, rng, max_size);
    Object b_bot = random_object(kind, rng, max_size);
    Morphism a = random_morphism(a_top, a_bot, rng);
    Morphism bmap = random_morphism(b_top, b_bot, rng);
    Morphism f0 = random_morphism(a_bot, b_bot, rng);
    std::vector<Morphism> cands;
    if (kind == Kind::FinAb) {
      for (auto& f : homomorphisms(a_top, b_top)) {
        if (compose(f, bmap).map() == compose(a, f0).map() && (!f_surjective || is_surjective(f))) cands.push_back(f);
      }
    } else {
      // Each x must land in the fiber of b over f0(a(x)).
      std::vector<int> map(static_cast<std::size_t>(a_top.size()));
      bool ok = true;
      for (int x = 0; x < a_top.size() && ok; ++x) {
        std::vector<int> fiber;
        for (int y = 0; y < b_top.size(); ++y) {
          if (bmap(y) == f0(a(x))) fiber.push_back(y);
        }
        if (fiber.empty()) {
          ok = false;
          break;
        }
        map[static_cast<std::size_t>(x)] = rng.pick(fiber);
      }
      if (ok && kind == Kind::FinPtdSet) map[static_cast<std::size_t>(a_top.basepoint())] = b_top.basepoint();
      if (ok) {
        Morphism f = Morphism::unchecked(a_top, b_top, std::move(map));
        if (!f_surjective || is_surjective(f)) cands.push_back(f);
      }
    }
    if (!cands.empty()) return make_arrow_morphism({a}, {bmap}, rng.pick(cands), f0);
    if (attempt > 200) throw InvariantViolation("could not generate a commutative square");
  }
}

}  // namespace groupoid_lab
