#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "groupoid_lab/error.hpp"
#include "groupoid_lab/functor.hpp"
#include "groupoid_lab/groupoid.hpp"
#include "groupoid_lab/homotopy_limits.hpp"
#include "groupoid_lab/limits.hpp"

namespace groupoid_lab {

enum class Side { d, c };

/// Factorization of (d, F1) through A0 x_{F0,d} B1, or of (c, F1) through
/// A0 x_{F0,c} B1. The pullback is kept so its legs alpha and beta are at hand.
struct TauFactorization {
  LimitResult pullback;
  Morphism tau;

  const Morphism& alpha() const { return pullback.leg(0); }
  const Morphism& beta() const { return pullback.leg(1); }
};

inline TauFactorization tau_factorization(const Functor& f, Side side) {
  const Morphism& bs = side == Side::d ? f.B.d : f.B.c;
  const Morphism& as = side == Side::d ? f.A.d : f.A.c;
  TauFactorization out{pullback(f.F0, bs), {}};
  out.tau = pair_into(out.pullback, as, f.F1);
  return out;
}

/// Ordered from weakest to strongest.
enum class FibrationClass { not_fibration, fibration, split_epi_fibration, discrete_fibration };
enum class StarClass { not_star, star_fibration, split_epi_star_fibration };

inline std::string_view to_string(FibrationClass c) {
  switch (c) {
    case FibrationClass::not_fibration: return "not_fibration";
    case FibrationClass::fibration: return "fibration";
    case FibrationClass::split_epi_fibration: return "split_epi_fibration";
    case FibrationClass::discrete_fibration: return "discrete_fibration";
  }
  return "?";
}

inline std::string_view to_string(StarClass c) {
  switch (c) {
    case StarClass::not_star: return "not_star";
    case StarClass::star_fibration: return "star_fibration";
    case StarClass::split_epi_star_fibration: return "split_epi_star_fibration";
  }
  return "?";
}

namespace detail {

inline FibrationClass fibration_label(const MorphismClass& m) {
  if (m.iso) return FibrationClass::discrete_fibration;
  if (m.split_epi) return FibrationClass::split_epi_fibration;
  if (m.regular_epi) return FibrationClass::fibration;
  return FibrationClass::not_fibration;
}

inline StarClass star_label(const MorphismClass& m) {
  if (m.split_epi) return StarClass::split_epi_star_fibration;
  if (m.regular_epi) return StarClass::star_fibration;
  return StarClass::not_star;
}

inline bool same_class(const MorphismClass& a, const MorphismClass& b) {
  return a.mono == b.mono && a.regular_epi == b.regular_epi && a.iso == b.iso && a.split_epi == b.split_epi;
}

}  // namespace detail

inline FibrationClass classify_fibration(const Functor& f) {
  const MorphismClass cd = classify_morphism(tau_factorization(f, Side::d).tau);
  const MorphismClass cc = classify_morphism(tau_factorization(f, Side::c).tau);
  if (!detail::same_class(cd, cc)) throw InvariantViolation("tau_d and tau_c classify differently");
  return detail::fibration_label(cd);
}

inline bool is_fibration(const Functor& f) { return classify_fibration(f) >= FibrationClass::fibration; }
inline bool is_discrete_fibration(const Functor& f) {
  return classify_fibration(f) == FibrationClass::discrete_fibration;
}

/// Factorization of the kernel-restricted data: for side d,
/// Ker(F1.c) -> A0 x_{F0, k_c.d} Ker(c), with the symmetric version for side c.
struct HatTauFactorization {
  LimitResult source_kernel;  // Ker(F1.c) for side d
  LimitResult target_kernel;  // Ker(c) of B for side d
  LimitResult pullback;
  Morphism restricted;  // F1 restricted to the kernels
  Morphism tau;
};

inline HatTauFactorization hat_tau_factorization(const Functor& f, Side side) {
  require_pointed(f.A.kind(), "hat_tau_factorization");
  const Morphism& a_near = side == Side::d ? f.A.d : f.A.c;
  const Morphism& b_near = side == Side::d ? f.B.d : f.B.c;
  const Morphism& b_far = side == Side::d ? f.B.c : f.B.d;
  HatTauFactorization out;
  out.source_kernel = kernel(compose(f.F1, b_far));
  out.target_kernel = kernel(b_far);
  const Morphism& ks = kernel_inclusion(out.source_kernel);
  const Morphism& kt = kernel_inclusion(out.target_kernel);
  out.restricted = lift_to_kernel(out.target_kernel, compose(ks, f.F1));
  out.pullback = pullback(f.F0, compose(kt, b_near));
  out.tau = pair_into(out.pullback, compose(ks, a_near), out.restricted);
  return out;
}

inline StarClass classify_star_fibration(const Functor& f) {
  const MorphismClass cd = classify_morphism(hat_tau_factorization(f, Side::d).tau);
  const MorphismClass cc = classify_morphism(hat_tau_factorization(f, Side::c).tau);
  if (!detail::same_class(cd, cc)) throw InvariantViolation("hat tau_d and hat tau_c classify differently");
  return detail::star_label(cd);
}

inline bool is_star_fibration(const Functor& f) { return classify_star_fibration(f) >= StarClass::star_fibration; }

/// The limit of A0 -> B0 <- B1 -> B0 <- A0 and the comparison from A1.
struct FullFaithfulness {
  LimitResult limit;
  Morphism comparison;
};

inline FullFaithfulness full_faithfulness(const Functor& f) {
  FullFaithfulness out;
  out.limit = finite_limit(Diagram{{f.A.B0, f.B.B1, f.A.B0, f.B.B0, f.B.B0},
                                   {{0, 3, f.F0}, {1, 3, f.B.d}, {1, 4, f.B.c}, {2, 4, f.F0}}});
  out.comparison = mediate(out.limit, std::vector<Morphism>{f.A.d, f.F1, f.A.c});
  return out;
}

inline bool is_fully_faithful(const Functor& f) {
  const Morphism& t = full_faithfulness(f).comparison;
  return is_injective(t) && is_surjective(t);
}

/// d(F)0: A1 -> A0 x_{F0,d} B1 x_{c,F0} A0 built from two pullbacks.
struct PartialZero {
  LimitResult inner;  // A0 x_{F0,d} B1
  LimitResult outer;  // inner x_{c,F0} A0
  Morphism map;
  bool faithful = false;
  bool full = false;
};

inline PartialZero partial_zero(const Functor& f) {
  PartialZero out;
  out.inner = pullback(f.F0, f.B.d);
  out.outer = pullback(compose(out.inner.leg(1), f.B.c), f.F0);
  out.map = pair_into(out.outer, pair_into(out.inner, f.A.d, f.F1), f.A.c);
  out.faithful = is_injective(out.map);
  out.full = is_surjective(out.map);
  return out;
}

inline bool is_faithful(const Functor& f) { return partial_zero(f).faithful; }
inline bool is_full(const Functor& f) { return partial_zero(f).full; }

/// beta_d then c, out of A0 x_{F0,d} B1 (side d), or beta_c then d (side c).
inline Morphism essential_surjectivity_witness(const Functor& f, Side side) {
  const TauFactorization t = tau_factorization(f, side);
  return compose(t.beta(), side == Side::d ? f.B.c : f.B.d);
}

inline MorphismClass essential_surjectivity_class(const Functor& f) {
  const MorphismClass cd = classify_morphism(essential_surjectivity_witness(f, Side::d));
  const MorphismClass cc = classify_morphism(essential_surjectivity_witness(f, Side::c));
  if (cd.regular_epi != cc.regular_epi || cd.split_epi != cc.split_epi) {
    throw InvariantViolation("essential surjectivity differs between the d and c sides");
  }
  return cd;
}

inline bool is_essentially_surjective(const Functor& f) { return essential_surjectivity_class(f).regular_epi; }

inline bool is_weak_equivalence(const Functor& f) { return is_fully_faithful(f) && is_essentially_surjective(f); }

inline bool is_equivalence(const Functor& f) {
  return is_fully_faithful(f) && essential_surjectivity_class(f).split_epi;
}

struct FunctorFlags {
  bool faithful = false;
  bool full = false;
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool weak_equivalence = false;
  bool equivalence = false;
  bool fibration = false;
  bool split_epi_fibration = false;
  bool discrete_fibration = false;
  bool star_fibration = false;
  bool split_epi_star_fibration = false;
};

struct FunctorClassification {
  FunctorFlags flags;
  FibrationClass fibration = FibrationClass::not_fibration;
  std::optional<StarClass> star;  // pointed instances only
  Morphism tau_d;
  Morphism tau_c;
  std::optional<Morphism> hat_tau_d;
  std::optional<Morphism> hat_tau_c;
  Morphism partial;
  Morphism essential_witness;
  std::optional<Functor> T;
  std::optional<Functor> J;
};

/// Every predicate with its deciding morphism. The comparison functors are
/// built only on request since they live on much larger groupoids.
inline FunctorClassification classify_functor(const Functor& f, bool with_comparisons = false) {
  FunctorClassification out;
  out.tau_d = tau_factorization(f, Side::d).tau;
  out.tau_c = tau_factorization(f, Side::c).tau;
  out.fibration = classify_fibration(f);
  const PartialZero pz = partial_zero(f);
  out.partial = pz.map;
  out.essential_witness = essential_surjectivity_witness(f, Side::d);
  const MorphismClass es = essential_surjectivity_class(f);
  auto& fl = out.flags;
  fl.faithful = pz.faithful;
  fl.full = pz.full;
  fl.fully_faithful = is_fully_faithful(f);
  if (fl.fully_faithful != (pz.faithful && pz.full)) {
    throw InvariantViolation("full faithfulness differs between the limit and d(F)0 computations");
  }
  fl.essentially_surjective = es.regular_epi;
  fl.weak_equivalence = fl.fully_faithful && es.regular_epi;
  fl.equivalence = fl.fully_faithful && es.split_epi;
  fl.fibration = out.fibration >= FibrationClass::fibration;
  fl.split_epi_fibration = out.fibration >= FibrationClass::split_epi_fibration;
  fl.discrete_fibration = out.fibration == FibrationClass::discrete_fibration;
  if (capabilities(f.A.kind()).pointed) {
    out.hat_tau_d = hat_tau_factorization(f, Side::d).tau;
    out.hat_tau_c = hat_tau_factorization(f, Side::c).tau;
    out.star = classify_star_fibration(f);
    fl.star_fibration = *out.star >= StarClass::star_fibration;
    fl.split_epi_star_fibration = *out.star == StarClass::split_epi_star_fibration;
  }
  if (with_comparisons) {
    out.T = comparison_T(f).T;
    if (capabilities(f.A.kind()).pointed) out.J = comparison_J(f).J;
  }
  return out;
}

}  // namespace groupoid_lab
