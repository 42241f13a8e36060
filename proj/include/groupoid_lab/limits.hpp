#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/morphism.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

struct DiagramEdge {
  int src;
  int tgt;
  Morphism map;
};

/// A finite diagram: objects at the nodes, morphisms along the edges.
struct Diagram {
  std::vector<Object> nodes;
  std::vector<DiagramEdge> edges;
};

/// Limit of a diagram. The apex stores coordinates only for the kept nodes;
/// every other node is reached by an edge out of a kept node. `legs` has one
/// projection per node of the diagram.
struct LimitResult {
  Diagram diagram;
  Object apex;
  std::vector<Morphism> legs;
  std::vector<int> kept;  // node indices stored as apex coordinates

  const Morphism& leg(int node) const { return legs[static_cast<std::size_t>(node)]; }
};

namespace detail {

inline void check_diagram(const Diagram& diagram) {
  if (diagram.nodes.empty()) throw DiagramError("diagram has no nodes");
  const Kind kind = diagram.nodes.front().kind();
  for (const auto& node : diagram.nodes) {
    if (node.kind() != kind) throw DiagramError("diagram mixes base instances");
  }
  const int n = static_cast<int>(diagram.nodes.size());
  for (const auto& edge : diagram.edges) {
    if (edge.src < 0 || edge.src >= n || edge.tgt < 0 || edge.tgt >= n) {
      throw DiagramError("edge endpoint out of range");
    }
    if (!(edge.map.dom() == diagram.nodes[static_cast<std::size_t>(edge.src)]) ||
        !(edge.map.cod() == diagram.nodes[static_cast<std::size_t>(edge.tgt)])) {
      throw DiagramError("edge " + std::to_string(edge.src) + "->" + std::to_string(edge.tgt) +
                         " does not match its endpoint objects");
    }
  }
}

/// Nodes reached by an edge out of a node that stays a coordinate.
inline std::vector<int> kept_nodes(const Diagram& diagram) {
  const int n = static_cast<int>(diagram.nodes.size());
  std::vector<char> derived(static_cast<std::size_t>(n), 0);
  for (int j = n - 1; j >= 0; --j) {
    for (const auto& edge : diagram.edges) {
      if (edge.tgt == j && edge.src != j && !derived[static_cast<std::size_t>(edge.src)]) {
        derived[static_cast<std::size_t>(j)] = 1;
        break;
      }
    }
  }
  std::vector<int> kept;
  for (int j = 0; j < n; ++j) {
    if (!derived[static_cast<std::size_t>(j)]) kept.push_back(j);
  }
  return kept;
}

/// fiber[y] lists the x with f(x) = y, in increasing order.
inline std::vector<std::vector<int>> fibers(const Morphism& f) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(f.cod().size()));
  for (int x = 0; x < f.dom().size(); ++x) out[static_cast<std::size_t>(f(x))].push_back(x);
  return out;
}

}  // namespace detail

/// Limit of a finite diagram, computed by a constrained join over the nodes
/// and sorted lexicographically over the kept coordinates.
inline LimitResult finite_limit(const Diagram& diagram) {
  detail::check_diagram(diagram);
  const int n = static_cast<int>(diagram.nodes.size());
  const Kind kind = diagram.nodes.front().kind();

  std::vector<std::vector<std::vector<int>>> edge_fibers(diagram.edges.size());
  for (std::size_t k = 0; k < diagram.edges.size(); ++k) edge_fibers[k] = detail::fibers(diagram.edges[k].map);

  // Join order: prefer nodes whose value is forced, then nodes constrained to
  // a fiber, then the smallest remaining node.
  struct Step {
    int node;
    int forced_by = -1;  // edge index whose source is already placed
    int fiber_of = -1;   // edge index whose target is already placed
  };
  std::vector<Step> plan;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  for (int round = 0; round < n; ++round) {
    Step best{-1};
    int best_rank = 4;
    long best_cost = 0;
    for (int j = 0; j < n; ++j) {
      if (placed[static_cast<std::size_t>(j)]) continue;
      for (std::size_t k = 0; k < diagram.edges.size(); ++k) {
        const auto& e = diagram.edges[k];
        if (e.tgt == j && e.src != j && placed[static_cast<std::size_t>(e.src)]) {
          if (best_rank > 0) {
            best = {j, static_cast<int>(k), -1};
            best_rank = 0;
          }
        }
      }
      if (best_rank == 0) break;
      for (std::size_t k = 0; k < diagram.edges.size(); ++k) {
        const auto& e = diagram.edges[k];
        if (e.src == j && e.tgt != j && placed[static_cast<std::size_t>(e.tgt)]) {
          long cost = diagram.nodes[static_cast<std::size_t>(j)].size() /
                      std::max(1, diagram.nodes[static_cast<std::size_t>(e.tgt)].size());
          if (best_rank > 1 || (best_rank == 1 && cost < best_cost)) {
            best = {j, -1, static_cast<int>(k)};
            best_rank = 1;
            best_cost = cost;
          }
        }
      }
      long cost = diagram.nodes[static_cast<std::size_t>(j)].size();
      if (best_rank > 2 || (best_rank == 2 && cost < best_cost)) {
        best = {j, -1, -1};
        best_rank = 2;
        best_cost = cost;
      }
    }
    plan.push_back(best);
    placed[static_cast<std::size_t>(best.node)] = 1;
  }

  // Edges to check once both endpoints are placed, indexed by plan position.
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) position[static_cast<std::size_t>(plan[static_cast<std::size_t>(p)].node)] = p;
  std::vector<std::vector<int>> checks(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < diagram.edges.size(); ++k) {
    const auto& e = diagram.edges[k];
    int p = std::max(position[static_cast<std::size_t>(e.src)], position[static_cast<std::size_t>(e.tgt)]);
    checks[static_cast<std::size_t>(p)].push_back(static_cast<int>(k));
  }

  const std::vector<int> kept = detail::kept_nodes(diagram);
  std::vector<int> value(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> tuples;

  auto consistent = [&](int p) {
    for (int k : checks[static_cast<std::size_t>(p)]) {
      const auto& e = diagram.edges[static_cast<std::size_t>(k)];
      if (e.map(value[static_cast<std::size_t>(e.src)]) != value[static_cast<std::size_t>(e.tgt)]) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int p) -> void {
    if (p == n) {
      std::vector<int> t;
      t.reserve(kept.size());
      for (int j : kept) t.push_back(value[static_cast<std::size_t>(j)]);
      tuples.push_back(std::move(t));
      return;
    }
    const Step& step = plan[static_cast<std::size_t>(p)];
    const auto node = static_cast<std::size_t>(step.node);
    auto attempt = [&](int v) {
      value[node] = v;
      if (consistent(p)) self(self, p + 1);
    };
    if (step.forced_by >= 0) {
      const auto& e = diagram.edges[static_cast<std::size_t>(step.forced_by)];
      attempt(e.map(value[static_cast<std::size_t>(e.src)]));
    } else if (step.fiber_of >= 0) {
      const auto& e = diagram.edges[static_cast<std::size_t>(step.fiber_of)];
      for (int v : edge_fibers[static_cast<std::size_t>(step.fiber_of)][static_cast<std::size_t>(
               value[static_cast<std::size_t>(e.tgt)])]) {
        attempt(v);
      }
    } else {
      for (int v = 0; v < diagram.nodes[node].size(); ++v) attempt(v);
    }
    value[node] = -1;
  };
  recurse(recurse, 0);

  std::sort(tuples.begin(), tuples.end());
  std::vector<int> flat;
  flat.reserve(tuples.size() * kept.size());
  for (const auto& t : tuples) flat.insert(flat.end(), t.begin(), t.end());

  std::vector<Object> components;
  for (int j : kept) components.push_back(diagram.nodes[static_cast<std::size_t>(j)]);
  LimitResult result;
  result.diagram = diagram;
  result.kept = kept;
  result.apex = Object::subproduct(kind, std::move(components), std::move(flat));

  // Legs: coordinate projections for kept nodes, composites for the rest.
  result.legs.resize(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    std::vector<int> map(static_cast<std::size_t>(result.apex.size()));
    for (int x = 0; x < result.apex.size(); ++x) map[static_cast<std::size_t>(x)] = result.apex.coord(x, k);
    result.legs[static_cast<std::size_t>(kept[k])] =
        Morphism::unchecked(result.apex, diagram.nodes[static_cast<std::size_t>(kept[k])], std::move(map));
    done[static_cast<std::size_t>(kept[k])] = 1;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& e : diagram.edges) {
      if (done[static_cast<std::size_t>(e.src)] && !done[static_cast<std::size_t>(e.tgt)]) {
        result.legs[static_cast<std::size_t>(e.tgt)] = compose(result.legs[static_cast<std::size_t>(e.src)], e.map);
        done[static_cast<std::size_t>(e.tgt)] = 1;
        progress = true;
      }
    }
  }
  return result;
}

/// Pullback of f: X -> Z and g: Y -> Z. Nodes are [X, Y, Z]; the apex holds
/// the pairs (x, y) with f(x) = g(y).
inline LimitResult pullback(const Morphism& f, const Morphism& g) {
  if (!(f.cod() == g.cod())) throw DiagramError("pullback of morphisms with different codomains");
  return finite_limit(Diagram{{f.dom(), g.dom(), f.cod()}, {{0, 2, f}, {1, 2, g}}});
}

/// Product X x Y (nodes [X, Y], no edges).
inline LimitResult product(const Object& x, const Object& y) {
  if (x.kind() != y.kind()) throw DiagramError("product across instances");
  return finite_limit(Diagram{{x, y}, {}});
}

/// Kernel of f: X -> Y as the pullback along the zero object. Leg 0 is the
/// inclusion.
inline LimitResult kernel(const Morphism& f) {
  require_pointed(f.kind(), "kernel");
  Object zero = zero_object(f.kind());
  return pullback(f, zero_morphism(zero, f.cod()));
}

/// The inclusion leg of a kernel.
inline const Morphism& kernel_inclusion(const LimitResult& ker) { return ker.leg(0); }

/// Unique morphism X -> apex whose composite with each given leg is that
/// leg. Missing legs are filled along edges from given ones.
inline Morphism mediate(const LimitResult& limit, std::vector<std::optional<Morphism>> cone) {
  const auto& diagram = limit.diagram;
  const int n = static_cast<int>(diagram.nodes.size());
  if (static_cast<int>(cone.size()) != n) throw DiagramError("cone has the wrong number of legs");
  std::optional<Object> source;
  for (int j = 0; j < n; ++j) {
    const auto& leg = cone[static_cast<std::size_t>(j)];
    if (!leg) continue;
    if (!(leg->cod() == diagram.nodes[static_cast<std::size_t>(j)])) {
      throw NoMediatorError("cone leg " + std::to_string(j) + " has the wrong codomain");
    }
    if (source && !(leg->dom() == *source)) throw NoMediatorError("cone legs have different domains");
    source = leg->dom();
  }
  if (!source) throw NoMediatorError("cone has no legs");
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& e : diagram.edges) {
      if (cone[static_cast<std::size_t>(e.src)] && !cone[static_cast<std::size_t>(e.tgt)]) {
        cone[static_cast<std::size_t>(e.tgt)] = compose(*cone[static_cast<std::size_t>(e.src)], e.map);
        progress = true;
      }
    }
  }
  for (int j : limit.kept) {
    if (!cone[static_cast<std::size_t>(j)]) throw NoMediatorError("cone does not determine node " + std::to_string(j));
  }
  std::vector<int> map(static_cast<std::size_t>(source->size()));
  std::vector<int> tuple(limit.kept.size());
  for (int x = 0; x < source->size(); ++x) {
    for (const auto& e : diagram.edges) {
      const auto& s = *cone[static_cast<std::size_t>(e.src)];
      const auto& t = cone[static_cast<std::size_t>(e.tgt)];
      if (t && e.map(s(x)) != (*t)(x)) {
        throw NoMediatorError("cone does not commute along edge " + std::to_string(e.src) + "->" +
                              std::to_string(e.tgt));
      }
    }
    for (std::size_t k = 0; k < limit.kept.size(); ++k) tuple[k] = (*cone[static_cast<std::size_t>(limit.kept[k])])(x);
    auto idx = limit.apex.find(tuple);
    if (!idx) throw InvariantViolation("commuting cone tuple missing from limit apex");
    map[static_cast<std::size_t>(x)] = *idx;
  }
  return Morphism::unchecked(*source, limit.apex, std::move(map));
}

inline Morphism mediate(const LimitResult& limit, const std::vector<Morphism>& legs) {
  std::vector<std::optional<Morphism>> cone(legs.begin(), legs.end());
  cone.resize(limit.diagram.nodes.size());
  return mediate(limit, std::move(cone));
}

/// Pairing into a pullback: the mediator of (f, g).
inline Morphism pair_into(const LimitResult& pb, const Morphism& f, const Morphism& g) {
  return mediate(pb, std::vector<std::optional<Morphism>>{f, g, std::nullopt});
}

/// The factorization of f through a kernel, for f with f then the kernelled map zero.
inline Morphism lift_to_kernel(const LimitResult& ker, const Morphism& f) {
  return mediate(ker, std::vector<std::optional<Morphism>>{f, zero_morphism(f.dom(), ker.diagram.nodes[1]), std::nullopt});
}

/// Elements of the subgroup of `x` generated by `elements`.
inline std::vector<char> generated_subgroup(const Object& x, const std::vector<int>& elements) {
  std::vector<char> in(static_cast<std::size_t>(x.size()), 0);
  std::vector<int> members{x.zero()};
  in[static_cast<std::size_t>(x.zero())] = 1;
  for (int g : elements) {
    if (in[static_cast<std::size_t>(g)]) continue;
    std::vector<int> next = members;
    int step = g;
    while (!in[static_cast<std::size_t>(step)]) {
      for (int h : members) {
        int v = x.add(h, step);
        if (!in[static_cast<std::size_t>(v)]) {
          in[static_cast<std::size_t>(v)] = 1;
          next.push_back(v);
        }
      }
      step = x.add(step, g);
    }
    members = std::move(next);
  }
  return in;
}

struct Quotient {
  Object object;
  Morphism map;
};

/// Coequalizer of a reflexive pair d, c: R -> X with common section e.
inline Quotient reflexive_coequalizer(const Morphism& d, const Morphism& c, const Morphism& e) {
  if (!(d.dom() == c.dom()) || !(d.cod() == c.cod())) throw StructureError("coequalizer of a non-parallel pair");
  if (!(e.dom() == d.cod()) || !(e.cod() == d.dom())) throw StructureError("common section has the wrong type");
  if (!(compose(e, d) == identity(d.cod())) || !(compose(e, c) == identity(d.cod()))) {
    throw StructureError("non-reflexive pair: e is not a common section");
  }
  const Object& x = d.cod();
  const int n = x.size();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  if (x.kind() == Kind::FinAb) {
    std::vector<int> diffs;
    for (int r = 0; r < d.dom().size(); ++r) diffs.push_back(x.sub(d(r), c(r)));
    auto h = generated_subgroup(x, diffs);
    std::vector<int> hs;
    for (int v = 0; v < n; ++v) {
      if (h[static_cast<std::size_t>(v)]) hs.push_back(v);
    }
    int count = 0;
    for (int v = 0; v < n; ++v) {
      if (cls[static_cast<std::size_t>(v)] >= 0) continue;
      for (int k : hs) cls[static_cast<std::size_t>(x.add(v, k))] = count;
      ++count;
    }
    std::vector<int> rep(static_cast<std::size_t>(count), -1);
    for (int v = n - 1; v >= 0; --v) rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])] = v;
    std::vector<int> table(static_cast<std::size_t>(count) * count);
    for (int a = 0; a < count; ++a) {
      for (int b = 0; b < count; ++b) {
        table[static_cast<std::size_t>(a) * count + b] =
            cls[static_cast<std::size_t>(x.add(rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]))];
      }
    }
    Object q = Object::abelian_group_unchecked(std::move(table), count);
    return {q, Morphism::unchecked(x, q, std::move(cls))};
  }
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (int r = 0; r < d.dom().size(); ++r) {
    int a = find(d(r));
    int b = find(c(r));
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  // Classes are numbered by their least element.
  std::vector<int> number(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (int v = 0; v < n; ++v) {
    int root = find(v);
    if (number[static_cast<std::size_t>(root)] < 0) number[static_cast<std::size_t>(root)] = count++;
    cls[static_cast<std::size_t>(v)] = number[static_cast<std::size_t>(root)];
  }
  Object q = x.kind() == Kind::FinPtdSet ? Object::pointed_set(count, cls[static_cast<std::size_t>(x.basepoint())])
                                         : Object::finite_set(count);
  return {q, Morphism::unchecked(x, q, std::move(cls))};
}

/// Additive section of a surjective homomorphism, found by extending a
/// partial section one generator of the codomain at a time.
inline std::optional<Morphism> find_abelian_section(const Morphism& f) {
  const Object& x = f.dom();
  const Object& y = f.cod();
  if (!is_surjective(f)) return std::nullopt;
  auto fib = detail::fibers(f);
  const auto& gens = y.generators();
  std::vector<int> s(static_cast<std::size_t>(y.size()), -1);
  s[static_cast<std::size_t>(y.zero())] = x.zero();
  std::vector<int> members{y.zero()};

  auto extend = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) return true;
    const int g = gens[k];
    // Smallest r > 0 with r*g already covered.
    int r = 1;
    int rg = g;
    while (s[static_cast<std::size_t>(rg)] < 0) {
      rg = y.add(rg, g);
      ++r;
    }
    const int target = s[static_cast<std::size_t>(rg)];
    const std::vector<int> saved_members = members;
    for (int cand : fib[static_cast<std::size_t>(g)]) {
      if (x.multiple(r, cand) != target) continue;
      std::vector<int> added;
      int jg = g;
      int jx = cand;
      for (int j = 1; j < r; ++j) {
        for (int h : saved_members) {
          int v = y.add(h, jg);
          s[static_cast<std::size_t>(v)] = x.add(s[static_cast<std::size_t>(h)], jx);
          added.push_back(v);
        }
        jg = y.add(jg, g);
        jx = x.add(jx, cand);
      }
      members.insert(members.end(), added.begin(), added.end());
      if (self(self, k + 1)) return true;
      for (int v : added) s[static_cast<std::size_t>(v)] = -1;
      members = saved_members;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return Morphism::unchecked(y, x, std::move(s));
}

/// A section of f (a morphism s with s then f the identity), when one exists.
inline std::optional<Morphism> find_section(const Morphism& f) {
  if (!is_surjective(f)) return std::nullopt;
  if (f.kind() == Kind::FinAb) return find_abelian_section(f);
  std::vector<int> s(static_cast<std::size_t>(f.cod().size()), -1);
  for (int x = f.dom().size() - 1; x >= 0; --x) s[static_cast<std::size_t>(f(x))] = x;
  if (f.kind() == Kind::FinPtdSet) s[static_cast<std::size_t>(f.cod().basepoint())] = f.dom().basepoint();
  return Morphism::unchecked(f.cod(), f.dom(), std::move(s));
}

struct MorphismClass {
  bool mono = false;
  bool regular_epi = false;
  bool iso = false;
  bool split_epi = false;
};

/// Mono is injectivity and regular epi is surjectivity in all three instances.
inline MorphismClass classify_morphism(const Morphism& f) {
  MorphismClass out;
  out.mono = is_injective(f);
  out.regular_epi = is_surjective(f);
  out.iso = out.mono && out.regular_epi;
  out.split_epi = out.iso || (out.regular_epi && find_section(f).has_value());
  return out;
}

/// Whether the family factors through no proper subobject of the common codomain.
inline bool jointly_strongly_epi(const std::vector<Morphism>& fs) {
  if (fs.empty()) throw StructureError("jointly_strongly_epi of an empty family");
  const Object& y = fs.front().cod();
  for (const auto& f : fs) {
    if (!(f.cod() == y)) throw StructureError("family members have different codomains");
  }
  std::vector<int> elements;
  std::vector<char> hit(static_cast<std::size_t>(y.size()), 0);
  for (const auto& f : fs) {
    for (int v : f.map()) {
      if (!hit[static_cast<std::size_t>(v)]) {
        hit[static_cast<std::size_t>(v)] = 1;
        elements.push_back(v);
      }
    }
  }
  if (y.kind() == Kind::FinAb) hit = generated_subgroup(y, elements);
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

}  // namespace groupoid_lab
