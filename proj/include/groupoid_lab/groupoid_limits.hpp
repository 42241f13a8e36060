#pragma once

#include <optional>
#include <vector>

#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/limits.hpp"

namespace groupoid_lab {

struct GroupoidEdge {
  int src;
  int tgt;
  Functor map;
};

struct GroupoidDiagram {
  std::vector<Groupoid> nodes;
  std::vector<GroupoidEdge> edges;
};

/// Limit of a diagram of groupoids, computed level-wise.
struct GroupoidLimit {
  GroupoidDiagram diagram;
  LimitResult level0;
  LimitResult level1;
  Groupoid apex;
  std::vector<Functor> legs;

  const Functor& leg(int node) const { return legs[static_cast<std::size_t>(node)]; }
};

inline GroupoidLimit groupoid_limit(const GroupoidDiagram& diagram) {
  Diagram d0;
  Diagram d1;
  for (const auto& g : diagram.nodes) {
    d0.nodes.push_back(g.B0);
    d1.nodes.push_back(g.B1);
  }
  for (const auto& e : diagram.edges) {
    if (!(e.map.A == diagram.nodes[static_cast<std::size_t>(e.src)]) ||
        !(e.map.B == diagram.nodes[static_cast<std::size_t>(e.tgt)])) {
      throw DiagramError("groupoid edge does not match its endpoint groupoids");
    }
    d0.edges.push_back({e.src, e.tgt, e.map.F0});
    d1.edges.push_back({e.src, e.tgt, e.map.F1});
  }
  GroupoidLimit out;
  out.diagram = diagram;
  out.level0 = finite_limit(d0);
  out.level1 = finite_limit(d1);
  const auto& l0 = out.level0;
  const auto& l1 = out.level1;
  const std::size_t n = diagram.nodes.size();

  auto structure = [&](const LimitResult& from, const LimitResult& to, auto pick) {
    std::vector<Morphism> legs;
    for (std::size_t k = 0; k < n; ++k) legs.push_back(compose(from.legs[k], pick(diagram.nodes[k])));
    return mediate(to, legs);
  };
  Morphism dd = structure(l1, l0, [](const Groupoid& g) { return g.d; });
  Morphism cc = structure(l1, l0, [](const Groupoid& g) { return g.c; });
  Morphism ee = structure(l0, l1, [](const Groupoid& g) { return g.e; });
  Morphism ii = structure(l1, l1, [](const Groupoid& g) { return g.i; });

  const std::vector<int> kept = l1.kept;
  const Object apex1 = l1.apex;
  const GroupoidDiagram nodes = diagram;
  out.apex = make_groupoid(l0.apex, l1.apex, dd, cc, ee, ii, [apex1, kept, nodes](int x, int y) {
    std::vector<int> t(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      t[k] = nodes.nodes[static_cast<std::size_t>(kept[k])].compose(apex1.coord(x, k), apex1.coord(y, k));
    }
    auto idx = apex1.find(t);
    if (!idx) throw InvariantViolation("level-wise composite missing from limit");
    return *idx;
  });
  for (std::size_t k = 0; k < n; ++k) out.legs.push_back({out.apex, diagram.nodes[k], l0.legs[k], l1.legs[k]});
  return out;
}

/// Unique functor into the limit with the given legs (missing legs are
/// filled along edges).
inline Functor mediate_groupoid(const GroupoidLimit& limit, const std::vector<std::optional<Functor>>& cone) {
  std::vector<std::optional<Morphism>> c0;
  std::vector<std::optional<Morphism>> c1;
  std::optional<Groupoid> source;
  for (const auto& leg : cone) {
    if (leg) {
      c0.push_back(leg->F0);
      c1.push_back(leg->F1);
      if (!source) source = leg->A;
    } else {
      c0.push_back(std::nullopt);
      c1.push_back(std::nullopt);
    }
  }
  if (!source) throw NoMediatorError("cone has no legs");
  return {*source, limit.apex, mediate(limit.level0, c0), mediate(limit.level1, c1)};
}

struct PullbackGroupoid {
  GroupoidLimit limit;
  Functor Fhat;  // to the domain of G
  Functor Ghat;  // to the domain of F
};

/// Pullback of F: A -> B and G: C -> B. Nodes are [C, A, B].
inline PullbackGroupoid pullback_groupoid(const Functor& f, const Functor& g) {
  if (!(f.B == g.B)) throw DiagramError("pullback of functors with different codomains");
  GroupoidLimit lim = groupoid_limit(GroupoidDiagram{{g.A, f.A, f.B}, {{0, 2, g}, {1, 2, f}}});
  return {lim, lim.leg(0), lim.leg(1)};
}

struct KernelGroupoid {
  GroupoidLimit limit;
  Groupoid ker;
  Functor inclusion;
};

/// Level-wise kernel of a functor in a pointed instance. Nodes are [A, [0], B].
inline KernelGroupoid kernel_groupoid(const Functor& f) {
  require_pointed(f.A.kind(), "kernel_groupoid");
  Groupoid zero = zero_groupoid(f.A.kind());
  GroupoidLimit lim = groupoid_limit(GroupoidDiagram{{f.A, zero, f.B}, {{0, 2, f}, {1, 2, zero_functor(zero, f.B)}}});
  return {lim, lim.apex, lim.leg(0)};
}

}  // namespace groupoid_lab
