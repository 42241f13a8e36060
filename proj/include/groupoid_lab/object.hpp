#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groupoid_lab/error.hpp"

namespace groupoid_lab {

/// The three finite base categories.
enum class Kind { FinSet, FinPtdSet, FinAb };

struct Capabilities {
  bool pointed;
  bool regular;
  bool protomodular;
  bool has_reflexive_coequalizers;
};

// Protomodularity is a declared fact about each instance, not something we decide.
constexpr Capabilities capabilities(Kind kind) {
  switch (kind) {
    case Kind::FinSet:
      return {false, true, false, true};
    case Kind::FinPtdSet:
      return {true, true, false, true};
    case Kind::FinAb:
      return {true, true, true, true};
  }
  return {false, false, false, false};
}

inline std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::FinSet:
      return "FinSet";
    case Kind::FinPtdSet:
      return "FinPtdSet";
    case Kind::FinAb:
      return "FinAb";
  }
  return "?";
}

/// Accepts the canonical spelling and the lowercase CLI spelling.
inline std::optional<Kind> parse_kind(std::string_view text) {
  if (text == "FinSet" || text == "finset") return Kind::FinSet;
  if (text == "FinPtdSet" || text == "finptdset") return Kind::FinPtdSet;
  if (text == "FinAb" || text == "finab") return Kind::FinAb;
  return std::nullopt;
}

inline void require_pointed(Kind kind, std::string_view operation) {
  if (!capabilities(kind).pointed) {
    throw CapabilityError(std::string(operation) + " requires a pointed instance, got " +
                          std::string(to_string(kind)));
  }
}

/// Violated axiom of a candidate abelian group table.
struct TableViolation {
  std::string axiom;
  std::string detail;
};

/// Checks closure, identity, inverses, commutativity and associativity of an
/// n-by-n addition table (row-major). Reports at most one violation per axiom.
inline std::vector<TableViolation> validate_abelian_table(std::span<const int> table, int n) {
  std::vector<TableViolation> out;
  if (n <= 0) {
    out.push_back({"nonempty", "an abelian group has at least one element"});
    return out;
  }
  if (static_cast<long>(table.size()) != static_cast<long>(n) * n) {
    out.push_back({"closure", "addition table must have n*n entries"});
    return out;
  }
  for (int v : table) {
    if (v < 0 || v >= n) {
      out.push_back({"closure", "entry " + std::to_string(v) + " outside carrier"});
      return out;
    }
  }
  auto at = [&](int x, int y) { return table[static_cast<std::size_t>(x) * n + y]; };
  std::optional<int> zero;
  for (int z = 0; z < n && !zero; ++z) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = at(z, x) == x && at(x, z) == x;
    if (ok) zero = z;
  }
  if (!zero) {
    out.push_back({"identity", "no two-sided neutral element"});
  } else {
    for (int x = 0; x < n; ++x) {
      bool found = false;
      for (int y = 0; y < n && !found; ++y) found = at(x, y) == *zero;
      if (!found) {
        out.push_back({"inverses", "element " + std::to_string(x) + " has no inverse"});
        break;
      }
    }
  }
  for (int x = 0; x < n && (out.empty() || out.back().axiom != "commutativity"); ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (at(x, y) != at(y, x)) {
        out.push_back({"commutativity", std::to_string(x) + "+" + std::to_string(y)});
        break;
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (at(at(x, y), z) != at(x, at(y, z))) {
          out.push_back({"associativity", "(" + std::to_string(x) + "+" + std::to_string(y) + ")+" +
                                              std::to_string(z)});
          return out;
        }
      }
    }
  }
  return out;
}

/// A finite object of one of the base instances: a carrier {0..n-1} plus the
/// structure of its kind. Objects produced by limits remember the tuple of
/// coordinates each element stands for; those tuples are kept in
/// lexicographic order so that lookups are binary searches.
///
/// Objects are immutable and cheap to copy.
class Object {
  struct Rep {
    Kind kind = Kind::FinSet;
    int size = 0;
    int point = -1;
    std::vector<int> table;  // dense addition, FinAb only
    std::vector<int> negation;
    std::vector<Object> components;
    std::vector<int> coords;  // flat, arity = components.size()
    std::vector<std::string> labels;
    mutable std::once_flag gens_once;
    mutable std::vector<int> gens;
    mutable std::once_flag cache_once;
    mutable std::vector<int> cache;  // addition table of small subproducts
  };

  static constexpr int kCachedTableLimit = 512;

 public:
  Object() : rep_(empty_rep()) {}

  static Object finite_set(int n, std::vector<std::string> labels = {}) {
    if (n < 0) throw StructureError("negative carrier size");
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::FinSet;
    rep->size = n;
    rep->labels = checked_labels(std::move(labels), n);
    return Object(std::move(rep));
  }

  static Object pointed_set(int n, int basepoint = 0, std::vector<std::string> labels = {}) {
    if (n < 1) throw StructureError("a pointed set has at least one element");
    if (basepoint < 0 || basepoint >= n) throw StructureError("basepoint outside carrier");
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::FinPtdSet;
    rep->size = n;
    rep->point = basepoint;
    rep->labels = checked_labels(std::move(labels), n);
    return Object(std::move(rep));
  }

  /// Validates the table against the abelian-group axioms.
  static Object abelian_group(std::vector<int> table, int n, std::vector<std::string> labels = {}) {
    auto violations = validate_abelian_table(table, n);
    if (!violations.empty()) {
      throw StructureError("not an abelian group (" + violations.front().axiom + "): " +
                           violations.front().detail);
    }
    return abelian_group_unchecked(std::move(table), n, std::move(labels));
  }

  /// Caller guarantees the table is an abelian group.
  static Object abelian_group_unchecked(std::vector<int> table, int n,
                                        std::vector<std::string> labels = {}) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::FinAb;
    rep->size = n;
    rep->table = std::move(table);
    rep->negation.assign(static_cast<std::size_t>(n), -1);
    for (int z = 0; z < n; ++z) {
      if (rep->table[static_cast<std::size_t>(z) * n + z] == z &&
          rep->table[static_cast<std::size_t>(z) * n] == 0) {
        rep->point = z;
        break;
      }
    }
    if (rep->point < 0) {
      for (int z = 0; z < n; ++z) {
        if (rep->table[static_cast<std::size_t>(z) * n + z] == z) {
          rep->point = z;
          break;
        }
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (rep->table[static_cast<std::size_t>(x) * n + y] == rep->point) {
          rep->negation[static_cast<std::size_t>(x)] = y;
          break;
        }
      }
    }
    rep->labels = checked_labels(std::move(labels), n);
    return Object(std::move(rep));
  }

  /// Sub-object of the product of `components` made of the given tuples
  /// (flat, lexicographically sorted, no duplicates). For pointed kinds the
  /// tuple of basepoints must be present; for FinAb the tuples must form a
  /// subgroup. Used by limit constructions, which guarantee both.
  static Object subproduct(Kind kind, std::vector<Object> components, std::vector<int> coords) {
    auto rep = std::make_shared<Rep>();
    rep->kind = kind;
    const std::size_t arity = components.size();
    if (arity == 0) throw StructureError("subproduct needs at least one component");
    rep->size = static_cast<int>(coords.size() / arity);
    rep->components = std::move(components);
    rep->coords = std::move(coords);
    Object obj(rep);
    if (capabilities(kind).pointed) {
      std::vector<int> base(arity);
      for (std::size_t k = 0; k < arity; ++k) base[k] = rep->components[k].basepoint();
      auto idx = obj.find(base);
      if (!idx) throw StructureError("subproduct does not contain the basepoint tuple");
      rep->point = *idx;
    }
    if (kind == Kind::FinAb) {
      rep->negation.resize(static_cast<std::size_t>(rep->size));
      std::vector<int> t(arity);
      for (int x = 0; x < rep->size; ++x) {
        for (std::size_t k = 0; k < arity; ++k) t[k] = rep->components[k].neg(obj.coord(x, k));
        auto idx = obj.find(t);
        if (!idx) throw StructureError("subproduct is not closed under negation");
        rep->negation[static_cast<std::size_t>(x)] = *idx;
      }
    }
    return obj;
  }

  Kind kind() const { return rep_->kind; }
  int size() const { return rep_->size; }
  bool is_pointed() const { return rep_->point >= 0; }

  /// Basepoint (FinPtdSet) or zero (FinAb).
  int basepoint() const {
    if (rep_->point < 0) {
      throw CapabilityError("object of kind " + std::string(to_string(kind())) + " has no basepoint");
    }
    return rep_->point;
  }
  int zero() const { return basepoint(); }

  int add(int x, int y) const {
    const Rep& r = *rep_;
    if (!r.table.empty()) return r.table[static_cast<std::size_t>(x) * r.size + y];
    if (r.kind != Kind::FinAb) throw CapabilityError("addition on a non-abelian object");
    if (r.size <= kCachedTableLimit) {
      std::call_once(r.cache_once, [this, &r] {
        r.cache.resize(static_cast<std::size_t>(r.size) * r.size);
        for (int a = 0; a < r.size; ++a) {
          for (int b = 0; b < r.size; ++b) r.cache[static_cast<std::size_t>(a) * r.size + b] = add_by_coordinates(a, b);
        }
      });
      return r.cache[static_cast<std::size_t>(x) * r.size + y];
    }
    return add_by_coordinates(x, y);
  }

 private:
  int add_by_coordinates(int x, int y) const {
    const Rep& r = *rep_;
    const std::size_t arity = r.components.size();
    std::vector<int> t(arity);
    for (std::size_t k = 0; k < arity; ++k) t[k] = r.components[k].add(coord(x, k), coord(y, k));
    auto idx = find(t);
    if (!idx) throw InvariantViolation("subproduct not closed under addition");
    return *idx;
  }

 public:
  int neg(int x) const {
    if (rep_->kind != Kind::FinAb) throw CapabilityError("negation on a non-abelian object");
    return rep_->negation[static_cast<std::size_t>(x)];
  }
  int sub(int x, int y) const { return add(x, neg(y)); }
  /// k * x for k >= 0.
  int multiple(int k, int x) const {
    int acc = zero();
    for (int j = 0; j < k; ++j) acc = add(acc, x);
    return acc;
  }

  bool has_dense_table() const { return !rep_->table.empty(); }
  bool has_coordinates() const { return !rep_->components.empty(); }
  int arity() const { return static_cast<int>(rep_->components.size()); }
  const std::vector<Object>& components() const { return rep_->components; }
  int coord(int element, std::size_t k) const {
    return rep_->coords[static_cast<std::size_t>(element) * rep_->components.size() + k];
  }
  std::span<const int> coords_of(int element) const {
    const std::size_t arity = rep_->components.size();
    return {rep_->coords.data() + static_cast<std::size_t>(element) * arity, arity};
  }

  /// Index of the element with the given coordinates, if it is in the carrier.
  std::optional<int> find(std::span<const int> tuple) const {
    const std::size_t arity = rep_->components.size();
    if (tuple.size() != arity || arity == 0) return std::nullopt;
    int lo = 0;
    int hi = rep_->size;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      auto c = coords_of(mid);
      if (std::lexicographical_compare(c.begin(), c.end(), tuple.begin(), tuple.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < rep_->size) {
      auto c = coords_of(lo);
      if (std::equal(c.begin(), c.end(), tuple.begin(), tuple.end())) return lo;
    }
    return std::nullopt;
  }

  /// Greedy generating set (FinAb): each generator lies outside the subgroup
  /// spanned by the previous ones.
  const std::vector<int>& generators() const {
    std::call_once(rep_->gens_once, [this] {
      if (kind() != Kind::FinAb) return;
      std::vector<char> in(static_cast<std::size_t>(size()), 0);
      std::vector<int> members{zero()};
      in[static_cast<std::size_t>(zero())] = 1;
      for (int x = 0; x < size(); ++x) {
        if (in[static_cast<std::size_t>(x)]) continue;
        rep_->gens.push_back(x);
        // members := members + <x>
        std::vector<int> next = members;
        int step = x;
        while (!in[static_cast<std::size_t>(step)]) {
          for (int h : members) {
            int v = add(h, step);
            if (!in[static_cast<std::size_t>(v)]) {
              in[static_cast<std::size_t>(v)] = 1;
              next.push_back(v);
            }
          }
          step = add(step, x);
        }
        members = std::move(next);
      }
    });
    return rep_->gens;
  }

  bool has_labels() const { return !rep_->labels.empty(); }
  std::string label(int element) const {
    if (!rep_->labels.empty()) return rep_->labels[static_cast<std::size_t>(element)];
    if (!rep_->components.empty()) {
      std::string out = "(";
      auto c = coords_of(element);
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ",";
        out += rep_->components[k].label(c[k]);
      }
      return out + ")";
    }
    return std::to_string(element);
  }

  /// Same object, different element names.
  Object relabeled(std::vector<std::string> labels) const {
    auto rep = std::make_shared<Rep>();
    rep->kind = rep_->kind;
    rep->size = rep_->size;
    rep->point = rep_->point;
    rep->table = rep_->table;
    rep->negation = rep_->negation;
    rep->components = rep_->components;
    rep->coords = rep_->coords;
    rep->labels = checked_labels(std::move(labels), rep_->size);
    return Object(std::move(rep));
  }

  bool same_instance(const Object& other) const { return rep_ == other.rep_; }

  /// Structural equality: kind, carrier, basepoint, coordinates and addition.
  /// Labels are ignored.
  friend bool operator==(const Object& a, const Object& b) {
    if (a.rep_ == b.rep_) return true;
    const Rep& x = *a.rep_;
    const Rep& y = *b.rep_;
    if (x.kind != y.kind || x.size != y.size || x.point != y.point) return false;
    if (x.coords != y.coords || x.components.size() != y.components.size()) return false;
    for (std::size_t k = 0; k < x.components.size(); ++k) {
      if (!(x.components[k] == y.components[k])) return false;
    }
    if (x.kind != Kind::FinAb) return true;
    if (!x.components.empty()) return true;  // addition is componentwise on both sides
    return x.table == y.table;
  }

 private:
  explicit Object(std::shared_ptr<Rep> rep) : rep_(std::move(rep)) {}

  static std::shared_ptr<Rep> empty_rep() {
    static const std::shared_ptr<Rep> rep = std::make_shared<Rep>();
    return rep;
  }

  static std::vector<std::string> checked_labels(std::vector<std::string> labels, int n) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n) {
      throw StructureError("label count does not match carrier size");
    }
    return labels;
  }

  std::shared_ptr<Rep> rep_;
};

}  // namespace groupoid_lab
