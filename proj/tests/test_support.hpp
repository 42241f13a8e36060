#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "groupoid_lab/groupoid_lab.hpp"

namespace testing_support {

using namespace groupoid_lab;

/// Number of pairs (x, y) with f(x) = g(y).
inline int count_matching_pairs(const Morphism& f, const Morphism& g) {
  int n = 0;
  for (int x = 0; x < f.dom().size(); ++x) {
    for (int y = 0; y < g.dom().size(); ++y) n += f(x) == g(y);
  }
  return n;
}

/// Elements of a finite abelian group reachable from `gens` by addition.
inline std::set<int> closure(const Object& g, const std::vector<int>& gens) {
  std::set<int> out{g.zero()};
  std::vector<int> todo{g.zero()};
  while (!todo.empty()) {
    const int x = todo.back();
    todo.pop_back();
    for (int s : gens) {
      const int y = g.add(x, s);
      if (out.insert(y).second) todo.push_back(y);
    }
  }
  return out;
}

inline std::set<int> image_set(const Morphism& f) { return {f.map().begin(), f.map().end()}; }

inline int kernel_size(const Morphism& f) {
  int n = 0;
  for (int v : f.map()) n += v == f.cod().zero();
  return n;
}

inline bool bijective(const Morphism& f) { return is_injective(f) && is_surjective(f); }

/// A random map between finite sets of the given sizes.
inline Morphism random_set_map(const Object& x, const Object& y, std::mt19937& gen) {
  std::uniform_int_distribution<int> pick(0, y.size() - 1);
  std::vector<int> map(static_cast<std::size_t>(x.size()));
  for (auto& v : map) v = pick(gen);
  return Morphism::make(x, y, std::move(map));
}

inline Object z(int n) { return cyclic_group(n); }

}  // namespace testing_support
