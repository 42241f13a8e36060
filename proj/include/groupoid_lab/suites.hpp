#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupoid_lab/abelian.hpp"
#include "groupoid_lab/arrow_category.hpp"
#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/functor_classes.hpp"
#include "groupoid_lab/generators.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/homotopy_limits.hpp"
#include "groupoid_lab/invariants.hpp"
#include "groupoid_lab/limits.hpp"
#include "groupoid_lab/serialize.hpp"

namespace groupoid_lab {

class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};

struct CaseFailure {
  int index = 0;
  std::string message;
  Json witness;
};

struct SuiteReport {
  std::string suite;
  Kind instance = Kind::FinSet;
  std::uint64_t seed = 0;
  int cases = 0;
  bool expects_witness = false;
  bool skipped = false;
  std::string skip_reason;
  std::vector<CaseFailure> failures;
  std::optional<Json> witness;
  Json stats = Json::object();
  Json bounds = Json::object();
  double elapsed_ms = 0;

  bool passed() const {
    if (skipped) return true;
    if (!failures.empty()) return false;
    return !expects_witness || witness.has_value();
  }
  int stat(const std::string& key) const { return stats.contains(key) ? stats.at(key).get<int>() : 0; }
};

/// Elapsed time is left out unless asked for, so equal runs give equal bytes.
inline Json to_json(const SuiteReport& r, bool with_timing = false) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"case", f.index}, {"message", f.message}, {"witness", f.witness}});
  Json j{{"suite", r.suite},
         {"instance", instance_name(r.instance)},
         {"seed", r.seed},
         {"cases", r.cases},
         {"failures", std::move(failures)},
         {"status", r.skipped ? "skipped" : (r.passed() ? "pass" : "fail")},
         {"stats", r.stats},
         {"bounds", r.bounds}};
  if (r.skipped) j["skip_reason"] = r.skip_reason;
  if (r.expects_witness) j["witness"] = r.witness ? *r.witness : Json(nullptr);
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

struct SuiteOptions {
  bool inject_fault = false;  // replace the classifier by a broken one where a suite supports it
  int max_recorded_failures = 5;
};

class SuiteContext {
 public:
  SuiteContext(Kind kind, int cases, std::uint64_t seed, SuiteOptions options, SuiteReport& report)
      : kind(kind), cases(cases), seed(seed), options(options), report_(report) {}

  Rng rng(int index) const { return Rng(seed, static_cast<std::uint64_t>(index)); }
  void count(const std::string& key, int by = 1) {
    report_.stats[key] = (report_.stats.contains(key) ? report_.stats[key].get<int>() : 0) + by;
  }
  void fail(int index, std::string message, Json witness = nullptr) {
    ++failure_count_;
    count("failures");
    if (static_cast<int>(report_.failures.size()) < options.max_recorded_failures) {
      report_.failures.push_back({index, std::move(message), std::move(witness)});
    }
  }
  void found(Json witness) {
    if (!report_.witness) report_.witness = std::move(witness);
  }
  void bound(const std::string& key, Json value) { report_.bounds[key] = std::move(value); }
  void set_cases(int n) { report_.cases = n; }

  /// Runs body(i) for every case, turning escaped library errors into failures.
  void for_each_case(const std::function<void(int)>& body) {
    for (int i = 0; i < cases; ++i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        fail(i, std::string("exception: ") + e.what());
      }
    }
  }

  Kind kind;
  int cases;
  std::uint64_t seed;
  SuiteOptions options;

 private:
  SuiteReport& report_;
  int failure_count_ = 0;
};

// ---------------------------------------------------------------------------
// Elementwise oracles, independent of the limit machinery

namespace oracle {

/// Whether top.right = left.bottom and P -> X x_Z Y is a bijection, where
/// top: P -> X, left: P -> Y, right: X -> Z, bottom: Y -> Z.
inline bool is_pullback_square(const Morphism& top, const Morphism& left, const Morphism& right, const Morphism& bottom) {
  const int np = top.dom().size();
  std::set<std::pair<int, int>> hit;
  for (int p = 0; p < np; ++p) {
    if (right(top(p)) != bottom(left(p))) return false;
    if (!hit.insert({top(p), left(p)}).second) return false;
  }
  std::size_t matching = 0;
  for (int x = 0; x < right.dom().size(); ++x) {
    for (int y = 0; y < bottom.dom().size(); ++y) matching += right(x) == bottom(y);
  }
  return matching == hit.size();
}

/// Whether k is injective with image exactly the preimage of the zero of f.
inline bool is_kernel_of(const Morphism& k, const Morphism& f) {
  if (!is_injective(k)) return false;
  const auto img = image_mask(k);
  for (int x = 0; x < f.dom().size(); ++x) {
    if (static_cast<bool>(img[static_cast<std::size_t>(x)]) != (f(x) == f.cod().zero())) return false;
  }
  return true;
}

inline bool is_bijective(const Morphism& f) { return is_injective(f) && is_surjective(f); }

/// Images cover the codomain (jointly strongly epi in the set-based instances).
inline bool jointly_surjective(const std::vector<Morphism>& fs) {
  std::vector<char> hit(static_cast<std::size_t>(fs.front().cod().size()), 0);
  for (const auto& f : fs) {
    for (int v : f.map()) hit[static_cast<std::size_t>(v)] = 1;
  }
  return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

/// F1 restricted to the loops at each object is a bijection onto the loops at F0 x.
inline bool vertex_groups_preserved(const Functor& f) {
  for (int x = 0; x < f.A.B0.size(); ++x) {
    std::vector<int> loops_a;
    for (int a = 0; a < f.A.B1.size(); ++a) {
      if (f.A.d(a) == x && f.A.c(a) == x) loops_a.push_back(a);
    }
    const int y = f.F0(x);
    std::set<int> images;
    for (int a : loops_a) images.insert(f.F1(a));
    int loops_b = 0;
    for (int b = 0; b < f.B.B1.size(); ++b) loops_b += f.B.d(b) == y && f.B.c(b) == y;
    if (images.size() != loops_a.size() || static_cast<int>(images.size()) != loops_b) return false;
    for (int b : images) {
      if (f.B.d(b) != y || f.B.c(b) != y) return false;
    }
  }
  return true;
}

/// Every morphism X -> Y of the instance, or nothing if there are more than `cap`.
inline std::optional<std::vector<Morphism>> all_morphisms(const Object& x, const Object& y, std::size_t cap = 200000) {
  if (x.kind() == Kind::FinAb) {
    auto homs = homomorphisms(x, y, cap + 1);
    if (homs.size() > cap) return std::nullopt;
    return homs;
  }
  const bool pointed = x.kind() == Kind::FinPtdSet;
  double total = 1;
  for (int v = 0; v < x.size(); ++v) {
    if (!(pointed && v == x.basepoint())) total *= y.size();
  }
  if (total > static_cast<double>(cap)) return std::nullopt;
  std::vector<Morphism> out;
  std::vector<int> map(static_cast<std::size_t>(x.size()), 0);
  if (pointed) map[static_cast<std::size_t>(x.basepoint())] = y.basepoint();
  auto rec = [&](auto&& self, int v) -> void {
    if (v == x.size()) {
      out.push_back(Morphism::unchecked(x, y, map));
      return;
    }
    if (pointed && v == x.basepoint()) {
      self(self, v + 1);
      return;
    }
    for (int t = 0; t < y.size(); ++t) {
      map[static_cast<std::size_t>(v)] = t;
      self(self, v + 1);
    }
  };
  if (x.size() == 0) return std::vector<Morphism>{Morphism::unchecked(x, y, {})};
  rec(rec, 0);
  return out;
}

/// Every functor X -> Y, by filtering pairs of morphisms.
inline std::optional<std::vector<Functor>> all_functors(const Groupoid& x, const Groupoid& y, std::size_t cap = 200000) {
  auto f0s = all_morphisms(x.B0, y.B0, cap);
  auto f1s = all_morphisms(x.B1, y.B1, cap);
  if (!f0s || !f1s || static_cast<double>(f0s->size()) * static_cast<double>(f1s->size()) > static_cast<double>(cap)) {
    return std::nullopt;
  }
  std::vector<Functor> out;
  for (const auto& f0 : *f0s) {
    for (const auto& f1 : *f1s) {
      Functor f{x, y, f0, f1};
      if (is_valid(f)) out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Counterexample minimization

/// F restricted to the full subgroupoid of A on the kept objects (set-based instances).
inline Functor restrict_to_objects(const Functor& f, const std::vector<int>& keep) {
  const Object& a0 = f.A.B0;
  Object s;
  if (a0.kind() == Kind::FinPtdSet) {
    const auto it = std::find(keep.begin(), keep.end(), a0.basepoint());
    s = Object::pointed_set(static_cast<int>(keep.size()), static_cast<int>(it - keep.begin()));
  } else {
    s = Object::finite_set(static_cast<int>(keep.size()));
  }
  Morphism inc = Morphism::unchecked(s, a0, keep);
  Groupoid sub = full_subgroupoid(f.A, inc);
  std::vector<int> f1(static_cast<std::size_t>(sub.B1.size()));
  for (int x = 0; x < sub.B1.size(); ++x) f1[static_cast<std::size_t>(x)] = f.F1(sub.B1.coord(x, 1));
  return {sub, f.B, compose(inc, f.F0), Morphism::unchecked(sub.B1, f.B.B1, std::move(f1))};
}

/// Greedy removal of domain objects while `still_fails` holds. FinAb
/// witnesses are returned unchanged since single elements cannot be dropped.
inline Functor minimize_functor(Functor f, const std::function<bool(const Functor&)>& still_fails) {
  if (f.A.kind() == Kind::FinAb) return f;
  bool changed = true;
  while (changed && f.A.B0.size() > 1) {
    changed = false;
    for (int x = 0; x < f.A.B0.size(); ++x) {
      if (f.A.kind() == Kind::FinPtdSet && x == f.A.B0.basepoint()) continue;
      std::vector<int> keep;
      for (int y = 0; y < f.A.B0.size(); ++y) {
        if (y != x) keep.push_back(y);
      }
      Functor g = restrict_to_objects(f, keep);
      bool fails = false;
      try {
        fails = still_fails(g);
      } catch (const std::exception&) {
        fails = false;
      }
      if (fails) {
        f = std::move(g);
        changed = true;
        break;
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Deliberately broken structures

struct Corruption {
  std::string name;
  Kind kind;
  std::string expected_axiom;
  std::vector<Violation> violations;
  bool base_valid = false;  // the structure before corruption passes its validator
};

namespace detail {

/// The smallest loop that is not a group: a non-associative Latin square with
/// identity 0 in which every element is its own inverse.
inline GroupTable nonassociative_loop5() {
  return {5, {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0}};
}

inline int arrow_between(const Groupoid& g, int x, int y) {
  for (int a = 0; a < g.B1.size(); ++a) {
    if (g.d(a) == x && g.c(a) == y) return a;
  }
  throw InvariantViolation("no arrow between the requested objects");
}

inline Morphism replaced(const Morphism& f, int at, int value) {
  std::vector<int> map = f.map();
  map[static_cast<std::size_t>(at)] = value;
  return Morphism::unchecked(f.dom(), f.cod(), std::move(map));
}

inline Corruption corrupt_groupoid(std::string name, const Groupoid& base, std::string axiom,
                                   const std::function<void(Groupoid&)>& edit) {
  Groupoid g = base;
  edit(g);
  return {std::move(name), base.kind(), std::move(axiom), validate_groupoid(g), is_valid(base)};
}

inline Corruption corrupt_functor(std::string name, const Functor& base, std::string axiom,
                                  const std::function<void(Functor&)>& edit) {
  Functor f = base;
  edit(f);
  return {std::move(name), base.A.kind(), std::move(axiom), validate_functor(f), is_valid(base)};
}

inline Corruption corrupt_nat(std::string name, const NatTransformation& base, std::string axiom,
                              const std::function<void(NatTransformation&)>& edit) {
  NatTransformation n = base;
  edit(n);
  return {std::move(name), base.source.A.kind(), std::move(axiom), validate_nat(n), is_valid(base)};
}

}  // namespace detail

/// Twenty-one broken groupoids, functors and transformations, each with the
/// axiom its validator must name.
inline std::vector<Corruption> corruption_catalogue() {
  using detail::arrow_between;
  using detail::replaced;
  std::vector<Corruption> out;
  const Kind S = Kind::FinSet;
  const Kind P = Kind::FinPtdSet;
  const Kind A = Kind::FinAb;

  for (Kind k : {S, P}) {
    Groupoid z3 = group_delooping(k, cyclic_table(3));
    out.push_back(detail::corrupt_groupoid("constant composition", z3, "unit-law", [](Groupoid& g) {
      g.m = Morphism::unchecked(g.m.dom(), g.m.cod(), std::vector<int>(static_cast<std::size_t>(g.m.dom().size()), 0));
    }));
    Groupoid loop = group_delooping(k, cyclic_table(5));
    out.push_back(detail::corrupt_groupoid("non-associative loop", loop, "associativity", [](Groupoid& g) {
      const GroupTable t = detail::nonassociative_loop5();
      std::vector<int> m(static_cast<std::size_t>(g.pairs.apex.size()));
      for (int p = 0; p < g.pairs.apex.size(); ++p) m[static_cast<std::size_t>(p)] = t(g.first(p), g.second(p));
      g.m = Morphism::unchecked(g.m.dom(), g.m.cod(), std::move(m));
    }));
  }

  // FinSet
  {
    Groupoid ind2 = indiscrete_groupoid(Object::finite_set(2));
    out.push_back(detail::corrupt_groupoid("unit pointing elsewhere", ind2, "unit-target", [](Groupoid& g) {
      g.e = replaced(g.e, 0, arrow_between(g, 0, 1));
    }));
    Groupoid ind3 = indiscrete_groupoid(Object::finite_set(3));
    out.push_back(detail::corrupt_groupoid("composite with wrong end", ind3, "composition-target", [](Groupoid& g) {
      const int p = g.pair(arrow_between(g, 0, 1), arrow_between(g, 1, 2));
      g.m = replaced(g.m, p, arrow_between(g, 0, 0));
    }));
    Groupoid z3 = group_delooping(S, cyclic_table(3));
    out.push_back(detail::corrupt_groupoid("identity as inverse", z3, "inverse-law",
                                           [](Groupoid& g) { g.i = identity(g.B1); }));
    out.push_back(detail::corrupt_functor("functor moving a source", identity_functor(ind2), "preserves-source",
                                          [](Functor& f) { f.F1 = replaced(f.F1, arrow_between(f.A, 0, 1), arrow_between(f.B, 1, 1)); }));
    out.push_back(detail::corrupt_functor("non-multiplicative functor", identity_functor(z3), "preserves-composition",
                                          [](Functor& f) { f.F1 = replaced(f.F1, 2, 1); }));
    Groupoid s3 = group_delooping(S, symmetric3_table());
    out.push_back(detail::corrupt_nat("non-central component", identity_nat(identity_functor(s3)), "naturality",
                                      [](NatTransformation& n) { n.alpha = replaced(n.alpha, 0, 1); }));
  }

  // FinPtdSet
  {
    Groupoid ind2 = indiscrete_groupoid(Object::pointed_set(2, 0));
    out.push_back(detail::corrupt_groupoid("source map moving the base point", ind2, "typing", [](Groupoid& g) {
      g.d = replaced(g.d, g.B1.basepoint(), 1);
    }));
    Groupoid ind3 = indiscrete_groupoid(Object::pointed_set(3, 0));
    out.push_back(detail::corrupt_groupoid("unit with wrong source", ind3, "unit-source", [](Groupoid& g) {
      g.e = replaced(g.e, 1, arrow_between(g, 2, 1));
    }));
    out.push_back(detail::corrupt_groupoid("identity as inverse on arrows between objects", ind2, "inverse-source",
                                           [](Groupoid& g) { g.i = identity(g.B1); }));
    Groupoid disc = discrete_groupoid(Object::pointed_set(2, 0));
    Groupoid z2 = group_delooping(P, cyclic_table(2));
    Functor collapse{disc, z2, zero_morphism(disc.B0, z2.B0), zero_morphism(disc.B1, z2.B1)};
    out.push_back(detail::corrupt_functor("functor dropping a unit", collapse, "preserves-units",
                                          [](Functor& f) { f.F1 = replaced(f.F1, 1, 1); }));
    out.push_back(detail::corrupt_nat("component ending elsewhere", identity_nat(identity_functor(ind2)), "component-target",
                                      [](NatTransformation& n) { n.alpha = replaced(n.alpha, 1, arrow_between(n.source.B, 1, 0)); }));
  }

  // FinAb
  {
    Object z2 = cyclic_group(2);
    Object z3 = cyclic_group(3);
    Groupoid arrow = groupoid_from_arrow(identity(z2));
    out.push_back(detail::corrupt_groupoid("non-additive source map", arrow, "typing", [](Groupoid& g) {
      g.d = Morphism::unchecked(g.B1, g.B0, {0, 1, 1, 1});
    }));
    Groupoid bz3 = delooping(z3);
    out.push_back(detail::corrupt_groupoid("zero composition", bz3, "unit-law", [](Groupoid& g) {
      g.m = zero_morphism(g.m.dom(), g.B1);
    }));
    out.push_back(detail::corrupt_groupoid("identity as inverse", bz3, "inverse-law",
                                           [](Groupoid& g) { g.i = identity(g.B1); }));
    out.push_back(detail::corrupt_groupoid("composite starting elsewhere", arrow, "composition-source", [](Groupoid& g) {
      // (a, n) then (a + n, n') goes to (a + n, n + n'): additive, but from the wrong object.
      std::vector<int> m(static_cast<std::size_t>(g.pairs.apex.size()));
      for (int p = 0; p < g.pairs.apex.size(); ++p) {
        const int x = g.first(p);
        const int y = g.second(p);
        const int a = x / 2;
        const int n = x % 2;
        const int n2 = y % 2;
        m[static_cast<std::size_t>(p)] = ((a + n) % 2) * 2 + (n + n2) % 2;
      }
      g.m = Morphism::unchecked(g.m.dom(), g.B1, std::move(m));
    }));
    out.push_back(detail::corrupt_functor("non-additive functor", identity_functor(bz3), "typing",
                                          [](Functor& f) { f.F1 = replaced(f.F1, 2, 1); }));
    out.push_back(detail::corrupt_functor("square that does not commute", identity_functor(arrow), "preserves-target",
                                          [z2](Functor& f) {
                                            f.F1 = functor_from_square(f.A, f.B, identity(z2), zero_morphism(z2, z2)).F1;
                                          }));
    Groupoid dz2 = discrete_groupoid(z2);
    out.push_back(detail::corrupt_nat("component leaving its object", identity_nat(identity_functor(dz2)),
                                      "component-source", [](NatTransformation& n) { n.alpha = zero_morphism(n.alpha.dom(), n.alpha.cod()); }));
  }
  (void)A;
  return out;
}

// ---------------------------------------------------------------------------
// Suites

using SuiteBody = std::function<void(SuiteContext&)>;

struct SuiteInfo {
  std::string name;
  std::string description;
  std::vector<Kind> instances;
  int default_cases = 100;
  bool expects_witness = false;  // on the listed witness instances
  std::vector<Kind> witness_instances;
  SuiteBody body;
};

namespace detail {

inline const std::vector<Kind> all_kinds{Kind::FinSet, Kind::FinPtdSet, Kind::FinAb};
inline const std::vector<Kind> pointed_kinds{Kind::FinPtdSet, Kind::FinAb};

inline SizeBudget suite_budget(Kind kind) {
  SizeBudget b;
  if (kind == Kind::FinAb) b.max_arrows = 16;
  return b;
}

/// Smaller carriers for suites building several strong h-pullbacks per case.
inline SizeBudget heavy_budget(Kind kind) {
  SizeBudget b;
  b.max_objects = 3;
  b.max_group_order = 4;
  b.max_arrows = kind == Kind::FinAb ? 8 : 9;
  return b;
}

inline std::string tag_mismatch(const GeneratedFunctor& g, const FunctorClassification& c) {
  const Expected& e = g.expected;
  std::string out;
  if (e.fibration && *e.fibration != c.fibration) {
    out += "fibration tag " + std::string(to_string(*e.fibration)) + " vs " + std::string(to_string(c.fibration)) + "; ";
  }
  if (e.star && c.star && *e.star != (*c.star >= StarClass::star_fibration)) out += "star tag; ";
  if (e.fully_faithful && *e.fully_faithful != c.flags.fully_faithful) out += "fully faithful tag; ";
  if (e.weak_equivalence && *e.weak_equivalence != c.flags.weak_equivalence) out += "weak equivalence tag; ";
  if (e.equivalence && *e.equivalence != c.flags.equivalence) out += "equivalence tag; ";
  return out;
}

/// The fibration class, or a deliberately wrong one under fault injection:
/// discrete fibrations are reported as non-fibrations.
inline FibrationClass fibration_under_test(const Functor& f, bool fault) {
  FibrationClass c = classify_fibration(f);
  if (fault && c == FibrationClass::discrete_fibration) return FibrationClass::not_fibration;
  return c;
}

inline StarClass star_under_test(const Functor& f, bool fault) {
  StarClass c = classify_star_fibration(f);
  if (fault && c == StarClass::split_epi_star_fibration) return StarClass::not_star;
  return c;
}

inline GeneratedFunctor mixed_functor(Kind kind, Rng& rng, int index, const SizeBudget& b) {
  switch (index % 3) {
    case 0: return gen_fibration(kind, rng, b);
    case 1: return gen_functor(kind, rng, b);
    default:
      if (kind == Kind::FinAb) return random_square_functor(rng, b.max_arrows).generated;
      return gen_functor_from(rng.pick(std::vector<std::string>{"embedding", "delooping-hom", "search"}), kind, rng, b);
  }
}

// --- axioms ---------------------------------------------------------------

inline NatTransformation random_conjugation(const Functor& f, Rng& rng) {
  const Groupoid& b = f.B;
  if (f.A.kind() == Kind::FinAb) {
    std::vector<Morphism> alphas;
    for (auto& h : homomorphisms(f.A.B0, b.B1)) {
      if (compose(h, b.d).map() == f.F0.map()) alphas.push_back(std::move(h));
    }
    return conjugate(f, rng.pick(alphas));
  }
  std::vector<int> alpha(static_cast<std::size_t>(f.A.B0.size()));
  for (int x = 0; x < f.A.B0.size(); ++x) {
    std::vector<int> out_arrows;
    for (int a = 0; a < b.B1.size(); ++a) {
      if (b.d(a) == f.F0(x)) out_arrows.push_back(a);
    }
    alpha[static_cast<std::size_t>(x)] = rng.pick(out_arrows);
  }
  if (f.A.kind() == Kind::FinPtdSet) {
    alpha[static_cast<std::size_t>(f.A.B0.basepoint())] = b.e(f.F0(f.A.B0.basepoint()));
  }
  return conjugate(f, Morphism::unchecked(f.A.B0, b.B1, std::move(alpha)));
}

inline void suite_axioms(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedGroupoid g = gen_groupoid(ctx.kind, rng, b);
    auto vg = validate_groupoid(g.groupoid);
    ctx.count("groupoids");
    ctx.count("family:" + g.family);
    if (!vg.empty()) ctx.fail(i, "generated " + g.family + " groupoid fails " + vg.front().axiom, to_json(g.groupoid));

    GeneratedFunctor f = gen_functor(ctx.kind, rng, b);
    ctx.count("functors");
    auto vf = validate_functor(f.functor);
    if (!vf.empty()) ctx.fail(i, "generated " + f.family + " functor fails " + vf.front().axiom, to_json(f.functor));

    std::vector<NatTransformation> nats{identity_nat(f.functor), random_conjugation(f.functor, rng)};
    for (const auto& n : nats) {
      ctx.count("transformations");
      auto vn = validate_nat(n);
      if (!vn.empty()) ctx.fail(i, "generated transformation fails " + vn.front().axiom, to_json(n));
    }
  });
}

inline void suite_axioms_corrupted(SuiteContext& ctx) {
  int n = 0;
  for (const auto& c : corruption_catalogue()) {
    if (c.kind != ctx.kind) continue;
    ++n;
    ctx.count("corrupted");
    if (!c.base_valid) {
      ctx.fail(n, c.name + ": structure before corruption is already invalid");
      continue;
    }
    bool named = false;
    std::string names;
    for (const auto& v : c.violations) {
      named = named || v.axiom == c.expected_axiom;
      names += v.axiom + " ";
    }
    if (c.violations.empty()) ctx.fail(n, c.name + ": accepted");
    else if (!named) ctx.fail(n, c.name + ": expected " + c.expected_axiom + ", got " + names);
    else ctx.count("rejected with the expected axiom");
  }
  ctx.set_cases(n);
}

// --- comparison T ---------------------------------------------------------

inline void suite_prop_fibration_t(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  const bool fault = ctx.options.inject_fault;
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const Functor& f = g.functor;
    auto disagrees = [fault](const Functor& h) {
      const FibrationClass c = fibration_under_test(h, fault);
      const Functor t = comparison_T(h).T;
      return (c >= FibrationClass::fibration) != is_weak_equivalence(t) ||
             (c >= FibrationClass::split_epi_fibration) != is_equivalence(t);
    };
    const FibrationClass c = fibration_under_test(f, fault);
    const Functor t = comparison_T(f).T;
    const bool we = is_weak_equivalence(t);
    const bool eq = is_equivalence(t);
    ctx.count(c >= FibrationClass::fibration ? "fibrations" : "non-fibrations");
    if (c == FibrationClass::fibration) ctx.count("non-split fibrations");
    if (!is_fully_faithful(t)) ctx.fail(i, "T is not fully faithful", to_json(f));
    if ((c >= FibrationClass::fibration) != we || (c >= FibrationClass::split_epi_fibration) != eq) {
      Functor w = minimize_functor(f, disagrees);
      ctx.fail(i, std::string("class ") + std::string(to_string(c)) + " but T weak=" + (we ? "1" : "0") +
                      " equivalence=" + (eq ? "1" : "0") + " (" + g.family + ")",
               to_json(w));
    }
    if (!fault) {
      const std::string m = tag_mismatch(g, classify_functor(f));
      if (!m.empty()) ctx.fail(i, "generator tag disagrees (" + g.family + "): " + m, to_json(f));
    }
  });
}

/// The square of the characterization proof: f-bar : A1 -> V(F)1 over
/// A0 -> P0 -> V(F)0 is a pullback of d along T0, and f-bar then c is tau_c.
inline std::string t_square_problem(const Functor& f) {
  const ComparisonT ct = comparison_T(f);
  const Functor& t = ct.T;
  const Groupoid& v = t.B;
  const Groupoid& a = f.A;
  const Groupoid& b = f.B;
  const ArrowGroupoid& ag = ct.V.arrows;
  std::vector<int> sq(static_cast<std::size_t>(a.B1.size()));
  for (int x = 0; x < a.B1.size(); ++x) {
    const int unit = b.e(f.F0(a.d(x)));
    sq[static_cast<std::size_t>(x)] = ag.square(unit, f.F1(x), unit, f.F1(x));
  }
  const GroupoidLimit& lim = ct.V.limit;
  const Morphism fbar = mediate(lim.level1, std::vector<std::optional<Morphism>>{
                                                compose(a.d, f.F0), Morphism::unchecked(a.B1, ag.vec.B1, std::move(sq)),
                                                identity(a.B1), std::nullopt, std::nullopt});
  // A0 is identified with the objects (F0 x, x) of [B0] x_{N,F} A.
  const Morphism to_p0 =
      mediate(ct.pullback.limit.level0, std::vector<std::optional<Morphism>>{f.F0, identity(a.B0), std::nullopt});
  if (!oracle::is_bijective(to_p0)) return "objects of the pullback are not A0";
  if (!oracle::is_pullback_square(fbar, a.d, v.d, compose(to_p0, t.F0))) return "square over T0 is not a pullback";
  const TauFactorization tc = tau_factorization(f, Side::c);
  for (int x = 0; x < a.B1.size(); ++x) {
    const int y = v.c(fbar(x));
    if (lim.level0.leg(2)(y) != tc.alpha()(tc.tau(x)) || lim.level0.leg(1)(y) != tc.beta()(tc.tau(x))) {
      return "f-bar then c differs from tau_c";
    }
  }
  return {};
}

inline void suite_t_square(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const std::string problem = t_square_problem(g.functor);
    ctx.count("squares");
    if (!problem.empty()) ctx.fail(i, problem + " (" + g.family + ")", to_json(g.functor));
  });
}

// --- comparison J ---------------------------------------------------------

inline void suite_prop_star_j(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  const bool fault = ctx.options.inject_fault;
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const Functor& f = g.functor;
    auto disagrees = [fault](const Functor& h) {
      const StarClass c = star_under_test(h, fault);
      const Functor j = comparison_J(h).J;
      return (c >= StarClass::star_fibration) != is_weak_equivalence(j) ||
             (c >= StarClass::split_epi_star_fibration) != is_equivalence(j);
    };
    const StarClass c = star_under_test(f, fault);
    const Functor j = comparison_J(f).J;
    const bool we = is_weak_equivalence(j);
    const bool eq = is_equivalence(j);
    ctx.count(c >= StarClass::star_fibration ? "star" : "non-star");
    if (c == StarClass::star_fibration) ctx.count("non-split star");
    if (c >= StarClass::star_fibration && !is_fibration(f)) ctx.count("star, not fibration");
    if (!is_fully_faithful(j)) ctx.fail(i, "J is not fully faithful", to_json(f));
    if ((c >= StarClass::star_fibration) != we || (c >= StarClass::split_epi_star_fibration) != eq) {
      Functor w = minimize_functor(f, disagrees);
      ctx.fail(i, std::string("class ") + std::string(to_string(c)) + " but J weak=" + (we ? "1" : "0") +
                      " equivalence=" + (eq ? "1" : "0") + " (" + g.family + ")",
               to_json(w));
    }
    if (!fault) {
      const std::string m = tag_mismatch(g, classify_functor(f));
      if (!m.empty()) ctx.fail(i, "generator tag disagrees (" + g.family + "): " + m, to_json(f));
    }
  });
}

inline void suite_cor_fibration_j(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = gen_fibration(ctx.kind, rng, b);
    const FibrationClass c = classify_fibration(g.functor);
    const Functor j = comparison_J(g.functor).J;
    ctx.count(c >= FibrationClass::split_epi_fibration ? "split" : "non-split");
    if (!is_weak_equivalence(j)) ctx.fail(i, "fibration with J not a weak equivalence (" + g.family + ")", to_json(g.functor));
    if (c >= FibrationClass::split_epi_fibration && !is_equivalence(j)) {
      ctx.fail(i, "split epi fibration with J not an equivalence (" + g.family + ")", to_json(g.functor));
    }
  });
}

inline void suite_fibration_implies_star(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = gen_fibration(ctx.kind, rng, b);
    ctx.count("fibrations");
    if (!is_star_fibration(g.functor)) ctx.fail(i, "fibration that is not a *-fibration (" + g.family + ")", to_json(g.functor));
  });
}

/// Exhaustive over squares (phi0, psi) : G(delta) -> G(delta') with every
/// group of order <= max_order, stopping at the first *-fibration that is
/// not a fibration.
inline void suite_star_not_fibration(SuiteContext& ctx) {
  const int max_order = 8;
  ctx.bound("max_order", max_order);
  const auto types = abelian_group_types(max_order);
  std::vector<Object> groups;
  for (const auto& t : types) groups.push_back(abelian_group_of_type(t));
  // Quadruples (A0, N, B0, N') in order of total size, so the first witness is a smallest one.
  std::vector<std::array<std::size_t, 4>> shapes;
  const std::size_t g = groups.size();
  for (std::size_t i = 0; i < g * g * g * g; ++i) shapes.push_back({i % g, i / g % g, i / (g * g) % g, i / (g * g * g)});
  auto total = [&](const std::array<std::size_t, 4>& s) {
    int n = 0;
    for (auto k : s) n += groups[k].size();
    return n;
  };
  std::stable_sort(shapes.begin(), shapes.end(), [&](const auto& x, const auto& y) { return total(x) < total(y); });
  int searched = 0;
  for (const auto& shape : shapes) {
    const Object& a0 = groups[shape[0]];
    const Object& n = groups[shape[1]];
    const Object& b0 = groups[shape[2]];
    const Object& np = groups[shape[3]];
    for (const auto& dp : homomorphisms(np, b0)) {
      for (const auto& delta : homomorphisms(n, a0)) {
        for (const auto& phi0 : homomorphisms(a0, b0)) {
          for (const auto& psi : square_completions(delta, dp, phi0, np)) {
            ++searched;
            SquareFunctor sq = make_square_functor(delta, dp, phi0, psi);
            const Functor& f = sq.generated.functor;
            const bool star = is_star_fibration(f);
            const bool fib = is_fibration(f);
            if (star != *sq.generated.expected.star ||
                fib != (*sq.generated.expected.fibration >= FibrationClass::fibration)) {
              ctx.fail(searched, "classifier disagrees with the square oracle", to_json(f));
            }
            if (star && !fib) {
              ctx.count("searched", searched);
              ctx.set_cases(searched);
              ctx.found(to_json(f));
              return;
            }
          }
        }
      }
    }
  }
  ctx.count("searched", searched);
  ctx.set_cases(searched);
}

// --- strong h-kernel and normalization ------------------------------------

inline void suite_hkernel_discrete(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const HKernel hk = strong_h_kernel(g.functor);
    ctx.count("kernels");
    if (classify_fibration(hk.KF) != FibrationClass::discrete_fibration) {
      ctx.fail(i, "K(F) is not a discrete fibration (" + g.family + ")", to_json(g.functor));
    }
  });
}

/// N(F) as a square of base morphisms: Ker(d_A) -> Ker(d_B) over A0 -> B0.
inline bool normalization_is_pullback(const Functor& f) {
  const ArrowMorphism n = normalize(f);
  return oracle::is_pullback_square(n.f, n.source.a, n.target.a, n.f0);
}

inline void suite_normalize_ff_pullback(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = gen_fully_faithful(ctx.kind, rng, b);
    ctx.count("family:" + g.family);
    if (!is_fully_faithful(g.functor)) {
      ctx.fail(i, "generated functor is not fully faithful (" + g.family + ")", to_json(g.functor));
      return;
    }
    if (!normalization_is_pullback(g.functor)) {
      ctx.fail(i, "normalization of a fully faithful functor is not a pullback (" + g.family + ")", to_json(g.functor));
    }
  });
}

inline void suite_pullback_discrete_fibration(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor f;
    if (i % 2 == 0) {
      f = gen_weak_equivalence(ctx.kind, rng, heavy_budget(ctx.kind));
    } else {
      Groupoid base = gen_groupoid(ctx.kind, rng, b).groupoid;
      f = gen_weak_equivalence_into(base, rng);
    }
    GeneratedFunctor g = f.functor.B.B1.size() > 64
                             ? GeneratedFunctor{identity_functor(f.functor.B), "identity", {}}
                             : gen_discrete_fibration_into(f.functor.B, rng, b);
    if (!is_weak_equivalence(f.functor) || !is_discrete_fibration(g.functor)) {
      ctx.fail(i, "generated pair does not meet the hypotheses (" + f.family + ", " + g.family + ")");
      return;
    }
    const bool eq = is_equivalence(f.functor);
    ctx.count(eq ? "F equivalence" : "F weak equivalence only");
    const PullbackGroupoid pb = pullback_groupoid(f.functor, g.functor);
    if (!is_weak_equivalence(pb.Fhat)) {
      ctx.fail(i, "F-hat is not a weak equivalence (" + f.family + ", " + g.family + ")",
               Json{{"F", to_json(f.functor)}, {"G", to_json(g.functor)}});
    }
    if (eq && !is_equivalence(pb.Fhat)) {
      ctx.fail(i, "F-hat is not an equivalence (" + f.family + ", " + g.family + ")",
               Json{{"F", to_json(f.functor)}, {"G", to_json(g.functor)}});
    }
  });
}

/// Compares N(Ker F) with the kernel of N(F) and N(K(F)) with the strong
/// h-kernel of N(F) through their canonical comparisons.
inline std::string normalization_kernel_problem(const Functor& f) {
  const ArrowMorphism nf = normalize(f);

  const KernelGroupoid kg = kernel_groupoid(f);
  const ArrowMorphism ninc = normalize(kg.inclusion);
  const ArrowKernel ak = kernel_arr(nf);
  const Morphism t = lift_to_kernel(ak.top, ninc.f);
  const Morphism t0 = lift_to_kernel(ak.bottom, ninc.f0);
  if (!oracle::is_bijective(t) || !oracle::is_bijective(t0)) return "kernel comparison is not an isomorphism";
  if (compose(ninc.source.a, t0).map() != compose(t, ak.object.a).map()) return "kernel comparison does not commute";

  const HKernel hk = strong_h_kernel(f);
  const ArrowHKernel ahk = strong_h_kernel_arr(nf);
  const NormalizedObject nb = normalize_obj(f.B);
  const Morphism s0 = pair_into(ahk.pullback, hk.KF.F0, lift_to_kernel(nb.kernel_d, hk.kF.alpha));
  const ArrowMorphism nk = normalize(hk.KF);
  const Morphism& s = nk.f;
  if (!oracle::is_bijective(s) || !oracle::is_bijective(s0)) return "strong h-kernel comparison is not an isomorphism";
  if (compose(nk.source.a, s0).map() != compose(s, ahk.object.a).map()) return "strong h-kernel comparison does not commute";
  if (compose(s0, ahk.b_prime()).map() != nk.f0.map()) return "strong h-kernel comparison misses the inclusion";
  return {};
}

inline void suite_normalize_kernels(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const std::string problem = normalization_kernel_problem(g.functor);
    ctx.count("functors");
    if (!problem.empty()) ctx.fail(i, problem + " (" + g.family + ")", to_json(g.functor));
  });
}

/// The 0-level of the two-row diagram: Ker(d) -> A1 over the comparison
/// A0 x Ker(d_B) -> A0 x B1 x A0 is a pullback and both rows are kernels.
inline std::string kernel_rows_problem(const Functor& f) {
  const PartialZero pz = partial_zero(f);
  const ArrowMorphism nf = normalize(f);
  const NormalizedObject na = normalize_obj(f.A);
  const NormalizedObject nb = normalize_obj(f.B);
  const LimitResult pb = pullback(f.F0, nb.object.a);
  const Morphism dn = pair_into(pb, nf.source.a, nf.f);
  const Morphism inner = pair_into(pz.inner, zero_morphism(pb.apex, f.A.B0), compose(pb.leg(1), kernel_inclusion(nb.kernel_d)));
  const Morphism bottom = pair_into(pz.outer, inner, pb.leg(0));
  const Morphism& kd = kernel_inclusion(na.kernel_d);
  if (!oracle::is_pullback_square(kd, dn, pz.map, bottom)) return "left-hand square is not a pullback";
  if (!oracle::is_kernel_of(kd, f.A.d)) return "top row is not a kernel";
  if (!oracle::is_kernel_of(bottom, compose(pz.outer.leg(0), pz.inner.leg(0)))) return "bottom row is not a kernel";
  return {};
}

inline void suite_kernel_rows(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = mixed_functor(ctx.kind, rng, i, b);
    const std::string problem = kernel_rows_problem(g.functor);
    ctx.count("functors");
    if (!problem.empty()) ctx.fail(i, problem + " (" + g.family + ")", to_json(g.functor));
  });
}

// --- normalization transfer items -----------------------------------------

struct TransferItem {
  int number;
  std::string statement;
  bool needs_protomodular;
  std::function<bool(const FunctorClassification&)> antecedent_f;  // set when the hypothesis is on F
  std::function<bool(const ArrowFlags&)> antecedent_n;             // set when the hypothesis is on N(F)
  std::function<bool(const FunctorClassification&)> consequent_f;
  std::function<bool(const ArrowFlags&)> consequent_n;
};

inline const std::vector<TransferItem>& transfer_items() {
  using FC = FunctorClassification;
  using AF = ArrowFlags;
  static const std::vector<TransferItem> items{
      {1, "F faithful => N(F) faithful", false, [](const FC& c) { return c.flags.faithful; }, {}, {},
       [](const AF& a) { return a.faithful; }},
      {2, "F fully faithful => N(F) fully faithful", false, [](const FC& c) { return c.flags.fully_faithful; }, {}, {},
       [](const AF& a) { return a.fully_faithful; }},
      {3, "F full => N(F) full", false, [](const FC& c) { return c.flags.full; }, {}, {},
       [](const AF& a) { return a.full; }},
      {4, "N(F) faithful => F faithful", true, {}, [](const AF& a) { return a.faithful; },
       [](const FC& c) { return c.flags.faithful; }, {}},
      {5, "N(F) fully faithful => F fully faithful", true, {}, [](const AF& a) { return a.fully_faithful; },
       [](const FC& c) { return c.flags.fully_faithful; }, {}},
      {6, "N(F) full => F full", true, {}, [](const AF& a) { return a.full; }, [](const FC& c) { return c.flags.full; },
       {}},
      {7, "F essentially surjective => N(F) essentially surjective", true,
       [](const FC& c) { return c.flags.essentially_surjective; }, {}, {},
       [](const AF& a) { return a.essentially_surjective; }},
      {8, "N(F) essentially surjective => F essentially surjective", false, {},
       [](const AF& a) { return a.essentially_surjective; }, [](const FC& c) { return c.flags.essentially_surjective; },
       {}},
      {9, "F fibration => N(F) fibration", false, [](const FC& c) { return c.flags.fibration; }, {}, {},
       [](const AF& a) { return a.fibration; }},
      {10, "N(F) fibration => F fibration", true, {}, [](const AF& a) { return a.fibration; },
       [](const FC& c) { return c.flags.fibration; }, {}},
  };
  return items;
}

inline GeneratedFunctor transfer_functor(Kind kind, Rng& rng, int index, const SizeBudget& b) {
  switch (index % 4) {
    case 0: return gen_functor(kind, rng, b);
    case 1: return gen_fibration(kind, rng, b);
    case 2: return gen_fully_faithful(kind, rng, b);
    default:
      if (kind == Kind::FinAb) return random_square_functor(rng, b.max_arrows).generated;
      return gen_weak_equivalence(kind, rng, b);
  }
}

inline SuiteBody transfer_suite(const TransferItem& item) {
  return [item](SuiteContext& ctx) {
    const SizeBudget b = suite_budget(ctx.kind);
    ctx.for_each_case([&](int i) {
      Rng rng = ctx.rng(i);
      GeneratedFunctor g = transfer_functor(ctx.kind, rng, i, b);
      const FunctorClassification c = classify_functor(g.functor);
      const ArrowFlags a = classify_arrow_morphism(normalize(g.functor));
      const bool hyp = item.antecedent_f ? item.antecedent_f(c) : item.antecedent_n(a);
      if (!hyp) {
        ctx.count("antecedent false");
        return;
      }
      ctx.count("antecedent true");
      const bool concl = item.consequent_f ? item.consequent_f(c) : item.consequent_n(a);
      if (!concl) ctx.fail(i, item.statement + " fails (" + g.family + ")", to_json(g.functor));
    });
  };
}

// --- protomodularity ------------------------------------------------------

/// Independent check that J_arr is essentially surjective, on pairs in
/// A0 x B: the images of <k_f0, 0> and of <a, f> cover the pullback
/// A0 x_{f0,b} B (pointed sets) or generate it (abelian groups).
inline bool j_arr_covers(const ArrowMorphism& m) {
  const Object& a0 = m.f0.dom();
  const Object& b = m.target.top();
  std::set<std::pair<int, int>> hit;
  for (int x = 0; x < a0.size(); ++x) {
    if (m.f0(x) == m.f0.cod().zero()) hit.insert({x, b.zero()});
  }
  for (int x = 0; x < m.source.top().size(); ++x) hit.insert({m.source.a(x), m.f(x)});
  if (a0.kind() == Kind::FinAb) {
    std::vector<std::pair<int, int>> frontier(hit.begin(), hit.end());
    const std::vector<std::pair<int, int>> gens = frontier;
    while (!frontier.empty()) {
      const auto [x, y] = frontier.back();
      frontier.pop_back();
      for (const auto& [gx, gy] : gens) {
        const std::pair<int, int> sum{a0.add(x, gx), b.add(y, gy)};
        if (hit.insert(sum).second) frontier.push_back(sum);
      }
    }
  }
  for (int x = 0; x < a0.size(); ++x) {
    for (int y = 0; y < b.size(); ++y) {
      if (m.f0(x) == m.target.a(y) && !hit.count({x, y})) return false;
    }
  }
  return true;
}

inline bool j_arr_weak_equivalence(const ArrowMorphism& m) {
  return is_weak_equivalence_arr(comparison_J_arr(m).J);
}

/// Calls visit on every commutative square with f surjective, all four
/// carriers drawn from `objects`, until visit returns false.
inline void for_each_fibration_square(const std::vector<Object>& objects,
                                      const std::function<bool(const ArrowMorphism&)>& visit) {
  for (const auto& a0 : objects) {
    for (const auto& b0 : objects) {
      for (const auto& atop : objects) {
        for (const auto& btop : objects) {
          auto as = oracle::all_morphisms(atop, a0);
          auto bs = oracle::all_morphisms(btop, b0);
          auto f0s = oracle::all_morphisms(a0, b0);
          auto fs = oracle::all_morphisms(atop, btop);
          std::vector<Morphism> onto;
          for (auto& f : *fs) {
            if (is_surjective(f)) onto.push_back(f);
          }
          if (onto.empty()) continue;
          for (const auto& a : *as) {
            for (const auto& b : *bs) {
              for (const auto& f0 : *f0s) {
                const auto af0 = compose(a, f0).map();
                for (const auto& f : onto) {
                  if (compose(f, b).map() != af0) continue;
                  if (!visit(ArrowMorphism{{a}, {b}, f, f0})) return;
                }
              }
            }
          }
        }
      }
    }
  }
}

/// (id, f0): id_{A0} -> f0 for the fold f0: {*, x, y} -> {*, z}.
inline ArrowMorphism fold_square() {
  const Object a0 = Object::pointed_set(3, 0, {"*", "x", "y"});
  const Object b0 = Object::pointed_set(2, 0, {"*", "z"});
  const Morphism f0 = Morphism::unchecked(a0, b0, {0, 1, 1});
  return {{identity(a0)}, {f0}, identity(a0), f0};
}

inline std::vector<Morphism> automorphisms(const Object& g) {
  std::vector<Morphism> out;
  for (auto& h : homomorphisms(g, g)) {
    if (is_injective(h)) out.push_back(std::move(h));
  }
  return out;
}

/// One member of each orbit of `maps` under m -> pre then m then post.
inline std::vector<Morphism> orbit_representatives(const std::vector<Morphism>& maps, const std::vector<Morphism>& pres,
                                                   const std::vector<Morphism>& posts) {
  std::set<std::vector<int>> seen;
  std::vector<Morphism> reps;
  for (const auto& m : maps) {
    if (seen.count(m.map())) continue;
    reps.push_back(m);
    std::vector<int> image(m.map().size());
    for (const auto& pre : pres) {
      for (const auto& post : posts) {
        for (std::size_t x = 0; x < image.size(); ++x) image[x] = post(m(pre(static_cast<int>(x))));
        seen.insert(image);
      }
    }
  }
  return reps;
}

/// As for_each_fibration_square over abelian groups, but one square per
/// isomorphism class: f up to automorphisms of both ends, b up to Aut(B0),
/// f0 up to Aut(A0).
inline void for_each_fibration_square_up_to_iso(const std::vector<Object>& groups,
                                                const std::function<bool(const ArrowMorphism&)>& visit) {
  std::vector<std::vector<Morphism>> auts;
  for (const auto& g : groups) auts.push_back(automorphisms(g));
  const std::vector<Morphism> none;
  auto ids = [&](std::size_t k) { return std::vector<Morphism>{identity(groups[k])}; };
  const std::size_t n = groups.size();
  for (std::size_t ia = 0; ia < n; ++ia) {
    for (std::size_t ib = 0; ib < n; ++ib) {
      if (groups[ib].size() > groups[ia].size()) continue;
      std::vector<Morphism> onto;
      for (auto& f : homomorphisms(groups[ia], groups[ib])) {
        if (is_surjective(f)) onto.push_back(std::move(f));
      }
      if (onto.empty()) continue;
      const auto fs = orbit_representatives(onto, auts[ia], auts[ib]);
      for (std::size_t ib0 = 0; ib0 < n; ++ib0) {
        const auto bs = orbit_representatives(homomorphisms(groups[ib], groups[ib0]), ids(ib), auts[ib0]);
        for (std::size_t ia0 = 0; ia0 < n; ++ia0) {
          const auto f0s = orbit_representatives(homomorphisms(groups[ia0], groups[ib0]), auts[ia0], ids(ib0));
          const auto as = homomorphisms(groups[ia], groups[ia0]);
          for (const auto& f : fs) {
            for (const auto& b : bs) {
              const auto fb = compose(f, b).map();
              for (const auto& f0 : f0s) {
                for (const auto& a : as) {
                  bool commutes = true;
                  for (int x = 0; x < a.dom().size() && commutes; ++x) commutes = f0(a(x)) == fb[static_cast<std::size_t>(x)];
                  if (!commutes) continue;
                  if (!visit(ArrowMorphism{{a}, {b}, f, f0})) return;
                }
              }
            }
          }
        }
      }
    }
  }
}

inline void suite_protomodularity(SuiteContext& ctx) {
  std::vector<Object> objects;
  if (ctx.kind == Kind::FinAb) {
    const int max_order = 8;
    ctx.bound("max_order", max_order);
    ctx.bound("up_to_isomorphism", true);
    for (const auto& t : abelian_group_types(max_order)) objects.push_back(abelian_group_of_type(t));
  } else {
    const int max_size = 3;
    ctx.bound("max_size", max_size);
    for (int n = 1; n <= max_size; ++n) objects.push_back(Object::pointed_set(n, 0));
  }
  int searched = 0;
  int failures = 0;
  const bool witness_mode = ctx.kind == Kind::FinPtdSet;
  const auto search = ctx.kind == Kind::FinAb ? for_each_fibration_square_up_to_iso : for_each_fibration_square;
  search(objects, [&](const ArrowMorphism& m) {
    ++searched;
    const bool we = j_arr_weak_equivalence(m);
    if (we != j_arr_covers(m)) ctx.fail(searched, "J_arr classification disagrees with the pair oracle", to_json(m));
    if (!we) {
      if (witness_mode) {
        ctx.count("witnesses");
        ctx.found(to_json(m));
        return true;
      }
      if (++failures <= 1) ctx.fail(searched, "fibration square with J_arr not a weak equivalence", to_json(m));
    }
    return true;
  });
  if (witness_mode) {
    const ArrowMorphism fold = fold_square();
    if (!j_arr_weak_equivalence(fold) && !j_arr_covers(fold)) ctx.count("fold square qualifies");
    else ctx.fail(searched, "fold-map square is not a counterexample", to_json(fold));
  }
  ctx.count("squares searched", searched);
  ctx.set_cases(searched);
}

// --- pi invariance --------------------------------------------------------

inline void suite_pi_invariance(SuiteContext& ctx) {
  const SizeBudget b = suite_budget(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    GeneratedFunctor g = gen_weak_equivalence(ctx.kind, rng, b);
    if (!is_weak_equivalence(g.functor)) {
      ctx.fail(i, "generated functor is not a weak equivalence (" + g.family + ")", to_json(g.functor));
      return;
    }
    ctx.count("family:" + g.family);
    if (!oracle::is_bijective(pi0_map(g.functor))) ctx.fail(i, "pi0 map is not a bijection (" + g.family + ")", to_json(g.functor));
    if (!oracle::vertex_groups_preserved(g.functor)) {
      ctx.fail(i, "a vertex group is not mapped bijectively (" + g.family + ")", to_json(g.functor));
    }
    if (capabilities(ctx.kind).pointed && !oracle::is_bijective(pi1_map(g.functor))) {
      ctx.fail(i, "pi1 map is not a bijection (" + g.family + ")", to_json(g.functor));
    }
  });
}

// --- universal properties by enumeration ----------------------------------

inline std::vector<Object> small_test_objects(Kind kind) {
  switch (kind) {
    case Kind::FinSet: return {Object::finite_set(1), Object::finite_set(2)};
    case Kind::FinPtdSet: return {Object::pointed_set(2, 0), Object::pointed_set(3, 0)};
    case Kind::FinAb: return {cyclic_group(2), cyclic_group(4), abelian_group_of_type({2, 2})};
  }
  return {};
}

/// For a limit over `diagram` and a test object T: every commuting cone out of
/// T has exactly one candidate T -> apex with those legs, and mediate finds it.
inline std::string limit_uniqueness_problem(const LimitResult& lim, const Object& t, int& cones) {
  const auto& nodes = lim.diagram.nodes;
  std::vector<std::vector<Morphism>> maps;
  for (const auto& node : nodes) {
    auto all = oracle::all_morphisms(t, node, 4000);
    if (!all) return {};
    maps.push_back(std::move(*all));
  }
  auto candidates = oracle::all_morphisms(t, lim.apex, 40000);
  if (!candidates) return {};
  std::map<std::vector<std::vector<int>>, int> hits;
  std::map<std::vector<std::vector<int>>, int> first;
  for (std::size_t k = 0; k < candidates->size(); ++k) {
    std::vector<std::vector<int>> cone;
    for (const auto& leg : lim.legs) cone.push_back(compose((*candidates)[k], leg).map());
    if (hits[cone]++ == 0) first[cone] = static_cast<int>(k);
  }
  // Enumerate commuting cones over all nodes.
  std::vector<std::size_t> pick(nodes.size(), 0);
  const std::size_t n = nodes.size();
  for (;;) {
    bool commutes = true;
    for (const auto& e : lim.diagram.edges) {
      if (compose(maps[static_cast<std::size_t>(e.src)][pick[static_cast<std::size_t>(e.src)]], e.map).map() !=
          maps[static_cast<std::size_t>(e.tgt)][pick[static_cast<std::size_t>(e.tgt)]].map()) {
        commutes = false;
        break;
      }
    }
    if (commutes) {
      ++cones;
      std::vector<std::vector<int>> cone;
      std::vector<std::optional<Morphism>> legs;
      for (std::size_t k = 0; k < n; ++k) {
        cone.push_back(maps[k][pick[k]].map());
        legs.push_back(maps[k][pick[k]]);
      }
      auto it = hits.find(cone);
      if (it == hits.end()) return "a commuting cone has no mediator";
      if (it->second != 1) return "a commuting cone has " + std::to_string(it->second) + " mediators";
      if (mediate(lim, legs).map() != (*candidates)[static_cast<std::size_t>(first[cone])].map()) {
        return "mediate differs from the enumerated mediator";
      }
    }
    std::size_t k = 0;
    while (k < n && ++pick[k] == maps[k].size()) pick[k++] = 0;
    if (k == n) break;
  }
  std::size_t total = 0;
  for (const auto& [cone, count] : hits) total += count;
  if (total != candidates->size()) return "candidate bookkeeping mismatch";
  return {};
}

/// Every functor X -> P into a strong h-pullback is the unique one with its
/// (H, K, mu), and every such triple arises; mediate_h_pullback finds it.
inline std::string h_pullback_uniqueness_problem(const HPullback& hp, const Groupoid& x, int& cones) {
  auto into_p = oracle::all_functors(x, hp.P(), 40000);
  auto into_a = oracle::all_functors(x, hp.F.A, 4000);
  auto into_c = oracle::all_functors(x, hp.G.A, 4000);
  auto alphas = oracle::all_morphisms(x.B0, hp.F.B.B1, 4000);
  if (!into_p || !into_a || !into_c || !alphas) return {};
  using Key = std::vector<std::vector<int>>;
  std::map<Key, int> hits;
  std::map<Key, std::size_t> first;
  for (std::size_t k = 0; k < into_p->size(); ++k) {
    const Functor& m = (*into_p)[k];
    Key key{compose(m.F0, hp.Gp.F0).map(), compose(m.F1, hp.Gp.F1).map(), compose(m.F0, hp.Fp.F0).map(),
            compose(m.F1, hp.Fp.F1).map(), compose(m.F0, hp.phi.alpha).map()};
    if (hits[key]++ == 0) first[key] = k;
  }
  for (const auto& h : *into_a) {
    for (const auto& k : *into_c) {
      const Functor kg = compose_functors(k, hp.G);
      const Functor hf = compose_functors(h, hp.F);
      for (const auto& alpha : *alphas) {
        NatTransformation mu{kg, hf, alpha};
        if (!is_valid(mu)) continue;
        ++cones;
        Key key{h.F0.map(), h.F1.map(), k.F0.map(), k.F1.map(), alpha.map()};
        auto it = hits.find(key);
        if (it == hits.end()) return "a cone (H, K, mu) has no mediating functor";
        if (it->second != 1) return "a cone has " + std::to_string(it->second) + " mediating functors";
        const Functor med = mediate_h_pullback(hp, h, k, mu);
        const Functor& expect = (*into_p)[first[key]];
        if (med.F0.map() != expect.F0.map() || med.F1.map() != expect.F1.map()) {
          return "mediate_h_pullback differs from the enumerated mediator";
        }
      }
    }
  }
  return {};
}

inline std::vector<Groupoid> small_test_groupoids(Kind kind) {
  if (kind == Kind::FinAb) return {zero_groupoid(kind), discrete_groupoid(cyclic_group(2)), delooping(cyclic_group(2))};
  std::vector<Groupoid> out{terminal_groupoid(kind), group_delooping(kind, cyclic_table(2))};
  out.push_back(discrete_groupoid(kind == Kind::FinPtdSet ? Object::pointed_set(2, 0) : Object::finite_set(2)));
  return out;
}

inline void suite_universal_property(SuiteContext& ctx) {
  const int max_size = 5;
  ctx.bound("max_object_size", max_size);
  const auto tests = small_test_objects(ctx.kind);
  const auto test_groupoids = small_test_groupoids(ctx.kind);
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    const int shape = i % 4;
    int cones = 0;
    std::string problem;
    if (shape < 3) {
      Object x = random_object(ctx.kind, rng, max_size);
      Object y = random_object(ctx.kind, rng, max_size);
      Object z = random_object(ctx.kind, rng, max_size);
      LimitResult lim;
      if (shape == 0) {
        lim = pullback(random_morphism(x, z, rng), random_morphism(y, z, rng));
      } else if (shape == 1 && capabilities(ctx.kind).pointed) {
        lim = kernel(random_morphism(x, z, rng));
      } else {
        Morphism f = random_morphism(x, z, rng);
        lim = finite_limit(Diagram{{x, y, z, z}, {{0, 2, f}, {1, 2, random_morphism(y, z, rng)}, {0, 3, random_morphism(x, z, rng)}}});
      }
      if (lim.apex.size() > max_size * max_size) return;
      for (const auto& t : tests) {
        problem = limit_uniqueness_problem(lim, t, cones);
        if (!problem.empty()) break;
      }
      ctx.count("limit cones", cones);
    } else {
      SizeBudget tiny;
      tiny.max_objects = 2;
      tiny.max_group_order = 2;
      tiny.max_arrows = 4;
      GeneratedFunctor f = gen_functor(ctx.kind, rng, tiny);
      Groupoid c = gen_groupoid(ctx.kind, rng, tiny).groupoid;
      if (f.functor.B.B1.size() > max_size || f.functor.A.B1.size() > max_size || c.B1.size() > max_size) return;
      Functor g = ctx.kind == Kind::FinAb ? zero_functor(c, f.functor.B) : search_functor(c, f.functor.B, rng);
      const HPullback hp = strong_h_pullback(f.functor, g);
      for (const auto& x : test_groupoids) {
        problem = h_pullback_uniqueness_problem(hp, x, cones);
        if (!problem.empty()) break;
      }
      ctx.count("h-pullback cones", cones);
    }
    if (!problem.empty()) ctx.fail(i, problem);
  });
}

// --- arrow category laws --------------------------------------------------

inline ArrowMorphism square_from_map(const ArrowObject& a, const ArrowObject& b, const Morphism& u) {
  return {a, b, compose(a.a, u), compose(u, b.a)};
}

inline void suite_null_homotopy_laws(SuiteContext& ctx) {
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    const int sz = ctx.kind == Kind::FinAb ? 4 : 3;
    auto obj = [&] {
      Object top = random_object(ctx.kind, rng, sz);
      Object bottom = random_object(ctx.kind, rng, sz);
      return ArrowObject{random_morphism(top, bottom, rng)};
    };
    ArrowObject a2 = obj(), a1 = obj(), a = obj(), b = obj(), b1 = obj(), b2 = obj();
    // Squares induced by maps between bottoms and tops, and a diagonal d of g.
    Diagonal mu{square_from_map(a, b, random_morphism(a.bottom(), b.top(), rng)), {}};
    mu.d = random_morphism(a.bottom(), b.top(), rng);
    mu.square = square_from_map(a, b, mu.d);
    const ArrowMorphism p1 = square_from_map(a1, a, random_morphism(a1.bottom(), a.top(), rng));
    const ArrowMorphism p2 = square_from_map(a2, a1, random_morphism(a2.bottom(), a1.top(), rng));
    const ArrowMorphism h1 = square_from_map(b, b1, random_morphism(b.bottom(), b1.top(), rng));
    const ArrowMorphism h2 = square_from_map(b1, b2, random_morphism(b1.bottom(), b2.top(), rng));
    if (!is_valid(mu) || !is_commutative(p1) || !is_commutative(h1)) {
      ctx.fail(i, "generated data is not a diagonal of commutative squares");
      return;
    }
    const Diagonal same = act_on_diagonal(identity_arr(a), mu, identity_arr(b));
    if (!(same.d == mu.d) || !(same.square == mu.square)) ctx.fail(i, "identity condition fails", to_json(mu));
    const Diagonal lhs = act_on_diagonal(compose_arr(p2, p1), mu, compose_arr(h1, h2));
    const Diagonal rhs = act_on_diagonal(p2, act_on_diagonal(p1, mu, h1), h2);
    if (!(lhs.d == rhs.d) || !(lhs.square == rhs.square) || !is_valid(lhs)) {
      ctx.fail(i, "associativity condition fails", to_json(mu));
    }
    const Morphism z = zero_morphism(a1.bottom(), a.top());
    const Diagonal zero = act_on_diagonal(square_from_map(a1, a, z), mu, h1);
    for (int v : zero.d.map()) {
      if (v != zero.d.cod().zero()) {
        ctx.fail(i, "composing with a zero square gives a non-zero diagonal", to_json(mu));
        break;
      }
    }
    ctx.count("triples");
  });
}

inline void suite_strong_kernels_arr(SuiteContext& ctx) {
  ctx.for_each_case([&](int i) {
    Rng rng = ctx.rng(i);
    const ArrowMorphism m = gen_arrow_morphism(ctx.kind, rng, ctx.kind == Kind::FinAb ? 6 : 4);
    const ArrowComparisonJ cj = comparison_J_arr(m);
    const Morphism& kf = cj.J.f;
    const Morphism& bottom = cj.J.f0;
    // The left-hand square Ker(f) -> A over Ker(f0) -> A0 x_{f0,b} B is a pullback.
    if (!is_fully_faithful_arr(cj.J) ||
        !oracle::is_pullback_square(kf, cj.kernel.object.a, cj.hkernel.object.a, bottom)) {
      ctx.fail(i, "kernel comparison J_arr is not fully faithful", to_json(m));
    }
    ctx.count(is_surjective(m.f) ? "fibrations" : "non-fibrations");
  });
}

}  // namespace detail

inline const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> registry = [] {
    using namespace detail;
    std::vector<SuiteInfo> r{
        {"axioms", "generated groupoids, functors and transformations pass their validators", all_kinds, 120, false, {},
         suite_axioms},
        {"axioms-corrupted", "deliberately broken structures are rejected with the expected axiom", all_kinds, 1, false,
         {}, suite_axioms_corrupted},
        {"prop-fibration-T", "F fibration iff T weak equivalence; split epi fibration iff T equivalence", all_kinds, 200,
         false, {}, suite_prop_fibration_t},
        {"t-square-pullback", "the square over T0 built from F is a pullback and recovers tau_c", all_kinds, 50, false,
         {}, suite_t_square},
        {"prop-star-J", "F *-fibration iff J weak equivalence; split epi *-fibration iff J equivalence", pointed_kinds,
         200, false, {}, suite_prop_star_j},
        {"cor-fibration-J", "fibrations have J a weak equivalence, split ones an equivalence", pointed_kinds, 200, false,
         {}, suite_cor_fibration_j},
        {"fibration-implies-star", "every fibration is a *-fibration", pointed_kinds, 500, false, {},
         suite_fibration_implies_star},
        {"star-not-fibration", "bounded search for a *-fibration that is not a fibration", {Kind::FinAb}, 1, true,
         {Kind::FinAb}, suite_star_not_fibration},
        {"hkernel-discrete", "K(F) is a discrete fibration", pointed_kinds, 200, false, {}, suite_hkernel_discrete},
        {"normalize-ff-pullback", "the normalization of a fully faithful functor is a pullback", pointed_kinds, 100,
         false, {}, suite_normalize_ff_pullback},
        {"pullback-discrete-fibration",
         "pulling back a weak equivalence (equivalence) along a discrete fibration gives one", all_kinds, 100, false, {},
         suite_pullback_discrete_fibration},
        {"normalize-kernels", "normalization preserves kernels and strong h-kernels", pointed_kinds, 200, false, {},
         suite_normalize_kernels},
        {"kernel-rows", "rows of the partial-functor diagram are kernels and its left square a pullback", pointed_kinds,
         100, false, {}, suite_kernel_rows},
    };
    for (const auto& item : transfer_items()) {
      r.push_back({"normalization-transfer-" + std::to_string(item.number), item.statement,
                   item.needs_protomodular ? std::vector<Kind>{Kind::FinAb} : pointed_kinds, 120, false, {},
                   transfer_suite(item)});
    }
    r.push_back({"protomodularity-char",
                 "fibration squares have J_arr a weak equivalence in FinAb; a counterexample exists in FinPtdSet",
                 pointed_kinds, 1, true, {Kind::FinPtdSet}, suite_protomodularity});
    r.push_back({"pi-invariance", "weak equivalences induce isomorphisms on pi0 and vertex groups", all_kinds, 100, false,
                 {}, suite_pi_invariance});
    r.push_back({"universal-property", "limits and strong h-pullbacks have unique mediators, by enumeration", all_kinds,
                 60, false, {}, suite_universal_property});
    r.push_back({"null-homotopy-laws", "identity, associativity and zero laws for the action on diagonals",
                 pointed_kinds, 200, false, {}, suite_null_homotopy_laws});
    r.push_back({"strong-kernels-arr", "kernel comparisons in the arrow category are fully faithful", pointed_kinds, 200,
                 false, {}, suite_strong_kernels_arr});
    return r;
  }();
  return registry;
}

inline const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : suite_registry()) {
    if (s.name == name) return s;
  }
  throw UnknownSuiteError("unknown suite '" + name + "'");
}

/// Runs a registered suite. Suites skip instances they do not apply to.
inline SuiteReport run_suite(const std::string& name, Kind instance, int cases, std::uint64_t seed,
                             SuiteOptions options = {}) {
  const SuiteInfo& info = find_suite(name);
  SuiteReport report;
  report.suite = name;
  report.instance = instance;
  report.seed = seed;
  report.cases = cases;
  if (std::find(info.instances.begin(), info.instances.end(), instance) == info.instances.end()) {
    report.skipped = true;
    report.skip_reason = "suite does not apply to " + instance_name(instance);
    return report;
  }
  report.expects_witness = info.expects_witness && std::find(info.witness_instances.begin(), info.witness_instances.end(),
                                                             instance) != info.witness_instances.end();
  const auto start = std::chrono::steady_clock::now();
  SuiteContext ctx(instance, cases, seed, options, report);
  try {
    info.body(ctx);
  } catch (const std::exception& e) {
    ctx.fail(-1, std::string("suite aborted: ") + e.what());
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace groupoid_lab
