#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/object.hpp"

namespace groupoid_lab {

/// A structure-preserving map between two objects of the same base instance,
/// stored as the image of every carrier index.
class Morphism {
 public:
  Morphism() : map_(std::make_shared<const std::vector<int>>()) {}

  /// Validates range, basepoint preservation and additivity.
  static Morphism make(Object dom, Object cod, std::vector<int> map) {
    Morphism f = unchecked(std::move(dom), std::move(cod), std::move(map));
    std::string why = f.violation();
    if (!why.empty()) throw StructureError(why);
    return f;
  }

  /// Caller guarantees the map is a morphism of the instance.
  static Morphism unchecked(Object dom, Object cod, std::vector<int> map) {
    Morphism f;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    f.map_ = std::make_shared<const std::vector<int>>(std::move(map));
    return f;
  }

  const Object& dom() const { return dom_; }
  const Object& cod() const { return cod_; }
  Kind kind() const { return dom_.kind(); }
  const std::vector<int>& map() const { return *map_; }
  int operator()(int x) const { return (*map_)[static_cast<std::size_t>(x)]; }

  /// Empty when the data is a morphism of the instance, else the first problem found.
  std::string violation() const {
    const auto& m = *map_;
    if (dom_.kind() != cod_.kind()) return "domain and codomain belong to different instances";
    if (static_cast<int>(m.size()) != dom_.size()) return "map length differs from domain size";
    for (int v : m) {
      if (v < 0 || v >= cod_.size()) return "image " + std::to_string(v) + " outside codomain";
    }
    if (dom_.kind() == Kind::FinPtdSet && m[static_cast<std::size_t>(dom_.basepoint())] != cod_.basepoint()) {
      return "basepoint not preserved";
    }
    if (dom_.kind() == Kind::FinAb) {
      if (m[static_cast<std::size_t>(dom_.zero())] != cod_.zero()) return "zero not preserved";
      // Additivity on generators times everything implies additivity.
      for (int g : dom_.generators()) {
        for (int y = 0; y < dom_.size(); ++y) {
          if (m[static_cast<std::size_t>(dom_.add(g, y))] != cod_.add(m[static_cast<std::size_t>(g)],
                                                                       m[static_cast<std::size_t>(y)])) {
            return "not additive at (" + std::to_string(g) + "," + std::to_string(y) + ")";
          }
        }
      }
    }
    return {};
  }
  bool valid() const { return violation().empty(); }

  friend bool operator==(const Morphism& f, const Morphism& g) {
    return f.dom_ == g.dom_ && f.cod_ == g.cod_ && (f.map_ == g.map_ || *f.map_ == *g.map_);
  }

 private:
  Object dom_;
  Object cod_;
  std::shared_ptr<const std::vector<int>> map_;
};

/// Diagrammatic composite: f first, then g.
inline Morphism compose(const Morphism& f, const Morphism& g) {
  if (!(f.cod() == g.dom())) throw CompositionError("codomain of first arrow differs from domain of second");
  std::vector<int> out(f.map().size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = g(f.map()[x]);
  return Morphism::unchecked(f.dom(), g.cod(), std::move(out));
}

inline Morphism compose(const Morphism& f, const Morphism& g, const Morphism& h) {
  return compose(compose(f, g), h);
}

inline Morphism identity(const Object& x) {
  std::vector<int> out(static_cast<std::size_t>(x.size()));
  for (int k = 0; k < x.size(); ++k) out[static_cast<std::size_t>(k)] = k;
  return Morphism::unchecked(x, x, std::move(out));
}

inline Morphism zero_morphism(const Object& x, const Object& y) {
  require_pointed(x.kind(), "zero_morphism");
  return Morphism::unchecked(x, y, std::vector<int>(static_cast<std::size_t>(x.size()), y.basepoint()));
}

/// The zero object of a pointed instance.
inline Object zero_object(Kind kind) {
  require_pointed(kind, "zero_object");
  if (kind == Kind::FinPtdSet) return Object::pointed_set(1);
  return Object::abelian_group_unchecked({0}, 1);
}

/// Terminal object: a singleton of the instance.
inline Object terminal_object(Kind kind) {
  if (kind == Kind::FinSet) return Object::finite_set(1);
  return zero_object(kind);
}

/// The unique map to the terminal object `t`.
inline Morphism to_terminal(const Object& x, const Object& t) {
  return Morphism::unchecked(x, t, std::vector<int>(static_cast<std::size_t>(x.size()), 0));
}

inline bool is_injective(const Morphism& f) {
  std::vector<char> seen(static_cast<std::size_t>(f.cod().size()), 0);
  for (int v : f.map()) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline bool is_surjective(const Morphism& f) {
  std::vector<char> seen(static_cast<std::size_t>(f.cod().size()), 0);
  int hit = 0;
  for (int v : f.map()) {
    if (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      ++hit;
    }
  }
  return hit == f.cod().size();
}

/// Inverse of a bijective morphism.
inline Morphism inverse(const Morphism& f) {
  if (!is_injective(f) || !is_surjective(f)) throw StructureError("inverse of a non-bijective morphism");
  std::vector<int> out(static_cast<std::size_t>(f.cod().size()));
  for (int x = 0; x < f.dom().size(); ++x) out[static_cast<std::size_t>(f(x))] = x;
  return Morphism::unchecked(f.cod(), f.dom(), std::move(out));
}

/// Pointwise sum of two morphisms into an abelian group.
inline Morphism add_morphisms(const Morphism& f, const Morphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw CompositionError("sum of non-parallel morphisms");
  std::vector<int> out(f.map().size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.cod().add(f.map()[x], g.map()[x]);
  return Morphism::unchecked(f.dom(), f.cod(), std::move(out));
}

inline Morphism negate_morphism(const Morphism& f) {
  std::vector<int> out(f.map().size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.cod().neg(f.map()[x]);
  return Morphism::unchecked(f.dom(), f.cod(), std::move(out));
}

/// Elements of the codomain hit by f.
inline std::vector<char> image_mask(const Morphism& f) {
  std::vector<char> hit(static_cast<std::size_t>(f.cod().size()), 0);
  for (int v : f.map()) hit[static_cast<std::size_t>(v)] = 1;
  return hit;
}

}  // namespace groupoid_lab
