#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

/// Z/n with elements 0..n-1.
inline Object cyclic_group(int n) {
  if (n < 1) throw StructureError("cyclic group of order < 1");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return Object::abelian_group_unchecked(std::move(table), n);
}

/// A (+) B with (a, b) at index a*|B| + b.
inline Object direct_sum(const Object& a, const Object& b) {
  const int na = a.size();
  const int nb = b.size();
  const int n = na * nb;
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    labels[static_cast<std::size_t>(x)] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
    for (int y = 0; y < n; ++y) {
      table[static_cast<std::size_t>(x) * n + y] = a.add(x / nb, y / nb) * nb + b.add(x % nb, y % nb);
    }
  }
  bool labelled = a.has_labels() || b.has_labels();
  return Object::abelian_group_unchecked(std::move(table), n, labelled ? std::move(labels) : std::vector<std::string>{});
}

/// Product of cyclic groups of the given orders.
inline Object abelian_group_of_type(const std::vector<int>& orders) {
  Object g = cyclic_group(1);
  bool first = true;
  for (int k : orders) {
    g = first ? cyclic_group(k) : direct_sum(g, cyclic_group(k));
    first = false;
  }
  return g;
}

/// Invariant-factor types of every abelian group of order <= max_order, one
/// per isomorphism class (the trivial group included).
inline std::vector<std::vector<int>> abelian_group_types(int max_order) {
  std::vector<std::vector<int>> out;
  out.push_back({1});
  // Each type is a divisor chain d1 | d2 | ... with d1 > 1.
  auto extend = [&](auto&& self, std::vector<int>& chain, int product) -> void {
    if (!chain.empty()) out.push_back(chain);
    const int last = chain.empty() ? 1 : chain.back();
    for (int next = std::max(2, last); product * next <= max_order; ++next) {
      if (next % last != 0) continue;
      chain.push_back(next);
      self(self, chain, product * next);
      chain.pop_back();
    }
  };
  std::vector<int> chain;
  extend(extend, chain, 1);
  return out;
}

/// Every homomorphism A -> B, enumerated by images of the generators of A.
inline std::vector<Morphism> homomorphisms(const Object& a, const Object& b, std::size_t limit = 1u << 20) {
  std::vector<Morphism> out;
  const auto& gens = a.generators();
  std::vector<int> h(static_cast<std::size_t>(a.size()), -1);
  h[static_cast<std::size_t>(a.zero())] = b.zero();
  std::vector<int> members{a.zero()};
  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == gens.size()) {
      out.push_back(Morphism::unchecked(a, b, h));
      return;
    }
    const int g = gens[k];
    int r = 1;
    int rg = g;
    while (h[static_cast<std::size_t>(rg)] < 0) {
      rg = a.add(rg, g);
      ++r;
    }
    const int target = h[static_cast<std::size_t>(rg)];
    const std::vector<int> saved = members;
    for (int cand = 0; cand < b.size(); ++cand) {
      if (b.multiple(r, cand) != target) continue;
      std::vector<int> added;
      int jg = g;
      int jx = cand;
      for (int j = 1; j < r; ++j) {
        for (int m : saved) {
          int v = a.add(m, jg);
          h[static_cast<std::size_t>(v)] = b.add(h[static_cast<std::size_t>(m)], jx);
          added.push_back(v);
        }
        jg = a.add(jg, g);
        jx = b.add(jx, cand);
      }
      members.insert(members.end(), added.begin(), added.end());
      self(self, k + 1);
      for (int v : added) h[static_cast<std::size_t>(v)] = -1;
      members = saved;
    }
  };
  extend(extend, 0);
  return out;
}

/// x -> k*x on an abelian group.
inline Morphism multiplication_by(const Object& a, int k) {
  std::vector<int> map(static_cast<std::size_t>(a.size()));
  for (int x = 0; x < a.size(); ++x) map[static_cast<std::size_t>(x)] = a.multiple(((k % a.size()) + a.size()) % a.size(), x);
  return Morphism::unchecked(a, a, std::move(map));
}

/// Reduction Z/n -> Z/m for m dividing n.
inline Morphism reduction(int n, int m) {
  if (m <= 0 || n % m != 0) throw StructureError("reduction needs a divisor");
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) map[static_cast<std::size_t>(x)] = x % m;
  return Morphism::unchecked(cyclic_group(n), cyclic_group(m), std::move(map));
}

}  // namespace groupoid_lab
