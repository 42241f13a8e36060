#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace groupoid_lab;
using namespace testing_support;

namespace {

/// (id, f0) on a = id of {*, x, y}, with f0 folding x and y onto z.
ArrowMorphism fold() {
  const Object a0 = Object::pointed_set(3, 0, {"*", "x", "y"});
  const Object b0 = Object::pointed_set(2, 0, {"*", "z"});
  const Morphism f0 = Morphism::make(a0, b0, {0, 1, 1});
  return make_arrow_morphism({identity(a0)}, {f0}, identity(a0), f0);
}

/// A square with a chosen diagonal d: A0 -> B, so f = a.d and f0 = d.b.
Diagonal random_diagonal(Kind k, Rng& rng) {
  const Object a_top = random_object(k, rng, 4);
  const Object a_bot = random_object(k, rng, 4);
  const Object b_top = random_object(k, rng, 4);
  const Object b_bot = random_object(k, rng, 4);
  const Morphism a = random_morphism(a_top, a_bot, rng);
  const Morphism b = random_morphism(b_top, b_bot, rng);
  const Morphism d = random_morphism(a_bot, b_top, rng);
  return {make_arrow_morphism({a}, {b}, compose(a, d), compose(d, b)), d};
}

/// A square into `target` from the identity arrow on a random object.
ArrowMorphism random_square_into(const ArrowObject& target, Rng& rng) {
  const Object x = random_object(target.top().kind(), rng, 4);
  const Morphism u = random_morphism(x, target.top(), rng);
  return make_arrow_morphism({identity(x)}, target, u, compose(u, target.a));
}

/// The square (b, id): b -> id_{B0}.
ArrowMorphism collapse_square(const ArrowObject& source) {
  return make_arrow_morphism(source, {identity(source.bottom())}, source.a, identity(source.bottom()));
}

}  // namespace

TEST(Diagonals, IdentityCondition) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 40);
      const Diagonal mu = random_diagonal(k, rng);
      ASSERT_TRUE(is_valid(mu));
      const Diagonal same = act_on_diagonal(identity_arr(mu.square.source), mu, identity_arr(mu.square.target));
      EXPECT_EQ(same.d, mu.d);
      EXPECT_EQ(same.square, mu.square);
    }
  }
}

TEST(Diagonals, AssociativityCondition) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 41);
      const Diagonal mu = random_diagonal(k, rng);
      const ArrowMorphism p = random_square_into(mu.square.source, rng);
      const ArrowMorphism p2 = random_square_into(p.source, rng);
      const ArrowMorphism h = collapse_square(mu.square.target);
      const ArrowMorphism h2 = collapse_square(h.target);
      const Diagonal once = act_on_diagonal(compose_arr(p2, p), mu, compose_arr(h, h2));
      const Diagonal twice = act_on_diagonal(p2, act_on_diagonal(p, mu, h), h2);
      EXPECT_TRUE(is_valid(once));
      EXPECT_EQ(once.d, twice.d);
      EXPECT_EQ(once.square, twice.square);
    }
  }
}

TEST(Diagonals, ZeroPrecompositionGivesTheZeroDiagonal) {
  Rng rng(3, 42);
  const Diagonal mu = random_diagonal(Kind::FinAb, rng);
  const ArrowObject& a = mu.square.source;
  const Object zero = zero_object(Kind::FinAb);
  const ArrowMorphism p{{identity(zero)}, a, zero_morphism(zero, a.top()), zero_morphism(zero, a.bottom())};
  const Diagonal out = act_on_diagonal(p, mu, identity_arr(mu.square.target));
  EXPECT_EQ(out.d, zero_morphism(zero, mu.square.target.top()));
}

TEST(Diagonals, NonComposableThrows) {
  Rng rng(4, 43);
  const Diagonal mu = random_diagonal(Kind::FinSet, rng);
  const ArrowObject other{identity(Object::finite_set(7))};
  EXPECT_THROW(act_on_diagonal(identity_arr(other), mu, identity_arr(mu.square.target)), CompositionError);
}

TEST(KernelArr, OfAnIdentitySquareIsZero) {
  const ArrowObject a{reduction(4, 2)};
  const ArrowKernel k = kernel_arr(identity_arr(a));
  EXPECT_EQ(k.object.top().size(), 1);
  EXPECT_EQ(k.object.bottom().size(), 1);
}

TEST(KernelArr, OfIdentityOnTopHasTrivialTop) {
  const ArrowMorphism m = fold();
  const ArrowKernel k = kernel_arr(m);
  EXPECT_EQ(k.object.top().size(), 1);
  EXPECT_EQ(k.object.bottom().size(), kernel_size(m.f0));
  EXPECT_EQ(k.object.bottom().size(), 1);
}

TEST(KernelArr, MatchesElementwiseKernels) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(s, 44);
      const ArrowMorphism m = gen_arrow_morphism(k, rng, 6);
      const ArrowKernel ker = kernel_arr(m);
      EXPECT_EQ(ker.object.top().size(), kernel_size(m.f));
      EXPECT_EQ(ker.object.bottom().size(), kernel_size(m.f0));
      EXPECT_TRUE(is_commutative(ker.inclusion));
      for (int x = 0; x < ker.object.top().size(); ++x) {
        EXPECT_EQ(ker.inclusion.f0(ker.object.a(x)), m.source.a(ker.inclusion.f(x)));
      }
    }
  }
}

TEST(StrongHKernelArr, FoldPullbackHasFiveElements) {
  const ArrowMorphism m = fold();
  const ArrowHKernel hk = strong_h_kernel_arr(m);
  EXPECT_EQ(count_matching_pairs(m.f0, m.target.a), 5);
  EXPECT_EQ(hk.pullback.apex.size(), 5);
}

TEST(StrongHKernelArr, OfTheIdentitySquareIsTheGraph) {
  const ArrowObject a{reduction(4, 2)};
  const ArrowHKernel hk = strong_h_kernel_arr(identity_arr(a));
  // Pairs (u, x) with u = a(x), one per x.
  EXPECT_EQ(hk.pullback.apex.size(), 4);
  EXPECT_TRUE(bijective(hk.partial()));
}

TEST(StrongHKernelArr, OfAZeroSquareIsAProduct) {
  const ArrowObject a{reduction(4, 2)};
  const ArrowObject b{identity(z(3))};
  const ArrowMorphism zero{a, b, zero_morphism(z(4), z(3)), zero_morphism(z(2), z(3))};
  const ArrowHKernel hk = strong_h_kernel_arr(zero);
  // Pairs (u, x) with 0 = x.
  EXPECT_EQ(hk.pullback.apex.size(), count_matching_pairs(zero.f0, b.a));
  EXPECT_EQ(hk.pullback.apex.size(), 2);
}

TEST(StrongHKernelArr, DiagonalAndInclusionAreCoherent) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(s, 45);
      const ArrowMorphism m = gen_arrow_morphism(k, rng, 6);
      const ArrowHKernel hk = strong_h_kernel_arr(m);
      EXPECT_TRUE(is_commutative(hk.inclusion));
      EXPECT_TRUE(is_valid(hk.diagonal));
      EXPECT_EQ(compose(hk.partial(), hk.b_prime()), m.source.a);
      EXPECT_EQ(compose(hk.partial(), hk.f0_prime()), m.f);
    }
  }
}

TEST(ComparisonJArr, FoldSquareIsNotEssentiallySurjective) {
  const ArrowComparisonJ c = comparison_J_arr(fold());
  EXPECT_TRUE(is_fully_faithful_arr(c.J));
  EXPECT_FALSE(is_essentially_surjective_arr(c.J));
  // The images cover (*, *), (x, x), (y, y) and miss (x, y), (y, x).
  std::set<int> covered = image_set(c.J.f0);
  for (int v : image_set(c.hkernel.partial())) covered.insert(v);
  EXPECT_EQ(covered.size(), 3u);
}

TEST(ComparisonJArr, OfTheIdentitySquareIsAWeakEquivalence) {
  const ArrowObject a{reduction(4, 2)};
  EXPECT_TRUE(is_weak_equivalence_arr(comparison_J_arr(identity_arr(a)).J));
}

TEST(ComparisonJArr, IsAlwaysFullyFaithful) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 60; ++s) {
      Rng rng(s, 46);
      const ArrowMorphism m = gen_arrow_morphism(k, rng, 6);
      const ArrowComparisonJ c = comparison_J_arr(m);
      EXPECT_TRUE(is_commutative(c.J));
      EXPECT_TRUE(is_fully_faithful_arr(c.J));
    }
  }
}

TEST(ComparisonJArr, SurjectiveTopGivesAWeakEquivalenceInAbelianGroups) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s, 47);
    const ArrowMorphism m = gen_arrow_morphism(Kind::FinAb, rng, 6, true);
    ASSERT_TRUE(is_surjective(m.f));
    EXPECT_TRUE(is_weak_equivalence_arr(comparison_J_arr(m).J));
  }
}

TEST(ClassifyArrow, IdentitySquare) {
  const ArrowFlags f = classify_arrow_morphism(identity_arr({reduction(4, 2)}));
  EXPECT_TRUE(f.faithful && f.full && f.fully_faithful && f.essentially_surjective);
  EXPECT_TRUE(f.weak_equivalence && f.fibration && f.star_fibration);
}

TEST(ClassifyArrow, FoldSquareIsAFibrationButNotAStarFibration) {
  const ArrowFlags f = classify_arrow_morphism(fold());
  EXPECT_TRUE(f.fibration);
  EXPECT_FALSE(f.star_fibration);
}

TEST(ClassifyArrow, FibrationsAreStarFibrationsInAbelianGroups) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s, 48);
    const ArrowFlags f = classify_arrow_morphism(gen_arrow_morphism(Kind::FinAb, rng, 6, true));
    EXPECT_TRUE(f.fibration);
    EXPECT_TRUE(f.star_fibration);
  }
}

TEST(ClassifyArrow, NeedsAPointedInstance) {
  const ArrowObject a{identity(Object::finite_set(2))};
  EXPECT_THROW(classify_arrow_morphism(identity_arr(a)), CapabilityError);
}

TEST(Normalize, IdentityGivesTheIdentitySquare) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 49);
      const Groupoid g = gen_groupoid(k, rng).groupoid;
      const ArrowMorphism n = normalize(identity_functor(g));
      EXPECT_EQ(n, identity_arr(normalize_obj(g).object));
    }
  }
}

TEST(Normalize, RecoversTheArrowOfAnArrowGroupoid) {
  int checked = 0;
  for (const auto& tn : abelian_group_types(8)) {
    for (const auto& ta : abelian_group_types(8)) {
      const Object n = abelian_group_of_type(tn);
      const Object a0 = abelian_group_of_type(ta);
      if (n.size() * a0.size() > 16) continue;
      for (const Morphism& delta : homomorphisms(n, a0, 24)) {
        const NormalizedObject no = normalize_obj(groupoid_from_arrow(delta));
        ASSERT_EQ(no.object.top().size(), n.size());
        // Ker(d) holds the arrows (0, m), which sit at index m.
        for (int x = 0; x < n.size(); ++x) {
          const int arrow = kernel_inclusion(no.kernel_d)(x);
          ASSERT_EQ(arrow / n.size(), 0);
          EXPECT_EQ(no.object.a(x), delta(arrow % n.size()));
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Normalize, FullyFaithfulFunctorsGivePullbackSquares) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(s, 50);
      const Functor f = gen_fully_faithful(k, rng, {3, 4, 8}).functor;
      ASSERT_TRUE(is_fully_faithful(f));
      const ArrowMorphism n = normalize(f);
      EXPECT_TRUE(is_commutative(n));
      // A pullback square: the top is in bijection with pairs over the bottom.
      EXPECT_EQ(n.source.top().size(), count_matching_pairs(n.f0, n.target.a));
      EXPECT_TRUE(bijective(partial_arr(n)));
    }
  }
}

TEST(Normalize, NullHomotopyLiftsThroughTheKernel) {
  const Groupoid g = groupoid_from_arrow(identity(z(2)));
  const Functor id = identity_functor(g);
  const Functor zero = zero_functor(g, g);
  // alpha(a) = (0, a) goes from 0 to a.
  const NatTransformation alpha{zero, id, Morphism::make(g.B0, g.B1, {0, 1})};
  ASSERT_TRUE(validate_nat(alpha).empty());
  const Diagonal d = normalize_homotopy(alpha);
  EXPECT_TRUE(is_valid(d));
  EXPECT_EQ(compose(d.d, d.square.target.a), id.F0);
  EXPECT_THROW(normalize_homotopy(identity_nat(id)), StructureError);
}
