#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace groupoid_lab;
using namespace testing_support;

namespace {

const SizeBudget kSmall{3, 4, 8};

bool same_maps(const Functor& a, const Functor& b) { return a.F0.map() == b.F0.map() && a.F1.map() == b.F1.map(); }

/// Quadruples (x, y, u, v) of group elements with x y = u v.
int commuting_square_count(const GroupTable& t) {
  int n = 0;
  for (int x = 0; x < t.order; ++x) {
    for (int y = 0; y < t.order; ++y) {
      for (int u = 0; u < t.order; ++u) {
        for (int v = 0; v < t.order; ++v) n += t(x, y) == t(u, v);
      }
    }
  }
  return n;
}

}  // namespace

TEST(PullbackGroupoid, OfIdentitiesIsTheGroupoidItself) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(s, 10);
      const Groupoid b = gen_groupoid(k, rng, kSmall).groupoid;
      const Functor id = identity_functor(b);
      const PullbackGroupoid pb = pullback_groupoid(id, id);
      EXPECT_TRUE(validate_groupoid(pb.limit.apex).empty());
      EXPECT_TRUE(bijective(pb.Fhat.F0) && bijective(pb.Fhat.F1));
      EXPECT_TRUE(bijective(pb.Ghat.F0) && bijective(pb.Ghat.F1));
    }
  }
}

TEST(PullbackGroupoid, LevelOneCarrierCountsMatchingPairs) {
  const Groupoid b = delooping(z(2));
  const Functor id = identity_functor(b);
  const Functor n = discrete_embedding(b);
  const PullbackGroupoid pb = pullback_groupoid(id, n);
  // Arrows are pairs (x, a) with e(x) = a, and only a = 0 qualifies.
  EXPECT_EQ(count_matching_pairs(n.F1, id.F1), 1);
  EXPECT_EQ(pb.limit.apex.B1.size(), 1);
  EXPECT_EQ(pb.limit.apex.B0.size(), count_matching_pairs(n.F0, id.F0));
}

TEST(PullbackGroupoid, LevelsAreBasePullbacks) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 11);
      const Functor g = gen_functor(k, rng, kSmall).functor;
      const Functor f = gen_discrete_fibration_into(g.B, rng, kSmall).functor;
      const PullbackGroupoid pb = pullback_groupoid(f, g);
      EXPECT_EQ(pb.limit.apex.B0.size(), count_matching_pairs(g.F0, f.F0));
      EXPECT_EQ(pb.limit.apex.B1.size(), count_matching_pairs(g.F1, f.F1));
      EXPECT_TRUE(validate_functor(pb.Fhat).empty());
      EXPECT_TRUE(validate_functor(pb.Ghat).empty());
    }
  }
}

TEST(KernelGroupoid, AgreesWithThePullbackAlongZero) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 12);
      const Functor f = gen_functor(k, rng, kSmall).functor;
      const KernelGroupoid ker = kernel_groupoid(f);
      const Groupoid zero = zero_groupoid(k);
      const PullbackGroupoid pb = pullback_groupoid(f, zero_functor(zero, f.B));
      EXPECT_EQ(ker.ker.B0.size(), pb.limit.apex.B0.size());
      EXPECT_EQ(ker.ker.B1.size(), pb.limit.apex.B1.size());
      EXPECT_EQ(ker.ker.B1.size(), kernel_size(f.F1));
      EXPECT_TRUE(validate_functor(ker.inclusion).empty());
    }
  }
}

TEST(KernelGroupoid, OfIdentityAndOfZero) {
  const Groupoid a = groupoid_from_arrow(Morphism::make(z(2), z(4), {0, 2}));
  const KernelGroupoid of_id = kernel_groupoid(identity_functor(a));
  EXPECT_EQ(of_id.ker.B0.size(), 1);
  EXPECT_EQ(of_id.ker.B1.size(), 1);
  const KernelGroupoid of_zero = kernel_groupoid(functor_to_terminal(a));
  EXPECT_EQ(of_zero.ker.B0.size(), a.B0.size());
  EXPECT_EQ(of_zero.ker.B1.size(), a.B1.size());
}

TEST(ArrowGroupoid, OfADiscreteGroupoidIsDiscrete) {
  const Groupoid b = discrete_groupoid(Object::finite_set(3));
  const ArrowGroupoid ag = arrow_groupoid(b);
  EXPECT_EQ(ag.vec.B0.size(), 3);
  EXPECT_EQ(ag.vec.B1.size(), 3);
  EXPECT_TRUE(ag.delta.F0.map() == std::vector<int>({0, 1, 2}));
  EXPECT_TRUE(ag.gamma.F0.map() == std::vector<int>({0, 1, 2}));
  EXPECT_TRUE(bijective(ag.delta.F1) && bijective(ag.gamma.F1));
}

TEST(ArrowGroupoid, OfADeloopingHasCubeManyArrows) {
  for (int n : {2, 3, 4}) {
    const GroupTable t = cyclic_table(n);
    EXPECT_EQ(commuting_square_count(t), n * n * n);
    EXPECT_EQ(arrow_groupoid(delooping(z(n))).vec.B1.size(), commuting_square_count(t));
  }
  const GroupTable s3 = symmetric3_table();
  const Groupoid b = group_delooping(Kind::FinSet, s3);
  EXPECT_EQ(arrow_groupoid(b).vec.B1.size(), commuting_square_count(s3));
  EXPECT_EQ(commuting_square_count(s3), 216);
}

TEST(ArrowGroupoid, StructureIsValidAndDeltaGammaAreEquivalences) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(s, 13);
      const Groupoid b = gen_groupoid(k, rng, kSmall).groupoid;
      const ArrowGroupoid ag = arrow_groupoid(b);
      EXPECT_TRUE(validate_groupoid(ag.vec).empty());
      EXPECT_TRUE(validate_functor(ag.delta).empty());
      EXPECT_TRUE(validate_functor(ag.gamma).empty());
      EXPECT_TRUE(validate_nat(ag.beta).empty());
      EXPECT_TRUE(is_equivalence(ag.delta));
      EXPECT_TRUE(is_equivalence(ag.gamma));
    }
  }
}

TEST(Twist, DiscreteGivesIdentity) {
  const ArrowGroupoid ag = arrow_groupoid(discrete_groupoid(z(3)));
  const Twist t = twist_iso(ag);
  EXPECT_EQ(t.tau.F1, identity(ag.vec.B1));
  EXPECT_EQ(t.tau.F0, identity(ag.vec.B0));
}

TEST(Twist, IsAnInvolutionOnEightSquaresForZ2) {
  const ArrowGroupoid ag = arrow_groupoid(delooping(z(2)));
  const Twist t = twist_iso(ag);
  ASSERT_EQ(t.tau.F1.dom().size(), 8);
  EXPECT_EQ(compose(t.tau.F1, t.tau.F1), identity(ag.vec.B1));
  EXPECT_NE(t.tau.F1, identity(ag.vec.B1));
}

TEST(Twist, IsAValidInvolutiveIsomorphism) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(s, 14);
      const ArrowGroupoid ag = arrow_groupoid(gen_groupoid(k, rng, kSmall).groupoid);
      const Twist t = twist_iso(ag);
      EXPECT_TRUE(validate_groupoid(t.transposed).empty());
      EXPECT_TRUE(validate_functor(t.tau).empty());
      EXPECT_EQ(compose(t.tau.F1, t.tau.F1), identity(ag.vec.B1));
      for (int x = 0; x < ag.vec.B1.size(); ++x) {
        EXPECT_EQ(ag.b1(t.tau.F1(x)), ag.g0(x));
        EXPECT_EQ(ag.f0(t.tau.F1(x)), ag.b2(x));
      }
    }
  }
}

TEST(StrongHPullback, OfIdentitiesMatchesTheArrowGroupoid) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng(s, 15);
      const Groupoid b = gen_groupoid(k, rng, kSmall).groupoid;
      const HPullback hp = strong_h_pullback(identity_functor(b), identity_functor(b));
      const ArrowGroupoid ag = arrow_groupoid(b);
      EXPECT_EQ(hp.P().B0.size(), ag.vec.B0.size());
      EXPECT_EQ(hp.P().B1.size(), ag.vec.B1.size());
    }
  }
}

TEST(StrongHPullback, VOfIdentityOnDeloopingHasTwoObjects) {
  const Groupoid b = delooping(z(2));
  const Functor id = identity_functor(b);
  const HPullback v = v_groupoid(id);
  EXPECT_EQ(count_matching_pairs(id.F0, b.c), 2);
  EXPECT_EQ(v.P().B0.size(), 2);
  EXPECT_TRUE(validate_groupoid(v.P()).empty());
}

TEST(StrongHPullback, UniversalConeMediatesToIdentity) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      Rng rng(s, 16);
      const Functor f = gen_functor(k, rng, kSmall).functor;
      const HPullback v = v_groupoid(f);
      const Functor m = mediate_h_pullback(v, v.Gp, v.Fp, v.phi);
      EXPECT_EQ(m.F0, identity(v.P().B0));
      EXPECT_EQ(m.F1, identity(v.P().B1));
    }
  }
}

TEST(StrongHPullback, MismatchedConeIsRejected) {
  const Groupoid b = delooping(z(2));
  const Functor id = identity_functor(b);
  const HPullback hp = strong_h_pullback(id, id);
  NatTransformation wrong = hp.phi;
  wrong.alpha = Morphism::unchecked(hp.P().B0, b.B1, std::vector<int>(static_cast<std::size_t>(hp.P().B0.size()), 0));
  EXPECT_THROW(mediate_h_pullback(hp, hp.Gp, hp.Fp, wrong), NoMediatorError);
  EXPECT_THROW(strong_h_pullback(id, identity_functor(delooping(z(3)))), DiagramError);
}

TEST(StrongHKernel, OfIdentityOnAnArrowGroupoidIsN) {
  const Morphism delta = Morphism::make(z(2), z(4), {0, 2});
  const HKernel hk = strong_h_kernel(identity_functor(groupoid_from_arrow(delta)));
  // Objects are arrows (0, n) from the base point to a = delta(n), one per n.
  int pairs = 0;
  for (int a = 0; a < 4; ++a) {
    for (int n = 0; n < 2; ++n) pairs += a == delta(n);
  }
  EXPECT_EQ(pairs, 2);
  EXPECT_EQ(hk.groupoid().B0.size(), pairs);
}

TEST(StrongHKernel, OfAFunctorToZeroIsTheDomain) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      Rng rng(s, 17);
      const Groupoid a = gen_groupoid(k, rng, kSmall).groupoid;
      const HKernel hk = strong_h_kernel(functor_to_terminal(a));
      EXPECT_TRUE(bijective(hk.KF.F0));
      EXPECT_TRUE(bijective(hk.KF.F1));
    }
  }
}

TEST(StrongHKernel, LegIsADiscreteFibration) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      Rng rng(s, 18);
      const Functor f = gen_functor(k, rng, kSmall).functor;
      const HKernel hk = strong_h_kernel(f);
      EXPECT_TRUE(validate_functor(hk.KF).empty());
      EXPECT_TRUE(validate_nat(hk.kF).empty());
      EXPECT_TRUE(is_discrete_fibration(hk.KF));
    }
  }
}

TEST(ComparisonT, OfIdentityIsAnEquivalence) {
  const Functor id = identity_functor(delooping(z(3)));
  EXPECT_TRUE(is_equivalence(comparison_T(id).T));
}

TEST(ComparisonT, OfTheObjectEmbeddingIsFullyFaithfulOnly) {
  const Functor n = discrete_embedding(delooping(z(2)));
  const Functor t = comparison_T(n).T;
  EXPECT_TRUE(is_fully_faithful(t));
  EXPECT_FALSE(is_essentially_surjective(t));
}

TEST(ComparisonT, CommutesWithTheLegsAndIsFullyFaithful) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 19);
      const Functor f = gen_functor(k, rng, kSmall).functor;
      const ComparisonT c = comparison_T(f);
      EXPECT_TRUE(validate_functor(c.T).empty());
      EXPECT_TRUE(same_maps(compose_functors(c.T, c.V.Gp), c.pullback.Ghat));
      EXPECT_TRUE(same_maps(compose_functors(c.T, c.V.Fp), c.pullback.Fhat));
      EXPECT_TRUE(is_fully_faithful(c.T));
    }
  }
}

TEST(ComparisonJ, OfIdentityAndOfZeroAreEquivalences) {
  const Groupoid a = groupoid_from_arrow(Morphism::make(z(2), z(4), {0, 2}));
  EXPECT_TRUE(is_equivalence(comparison_J(identity_functor(a)).J));
  EXPECT_TRUE(is_equivalence(comparison_J(functor_to_terminal(a)).J));
  const Groupoid p = indiscrete_groupoid(Object::pointed_set(3, 0));
  EXPECT_TRUE(is_equivalence(comparison_J(functor_to_terminal(p)).J));
}

TEST(ComparisonJ, FactorsTheKernelInclusionAndIsFullyFaithful) {
  for (Kind k : {Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s, 20);
      const Functor f = gen_functor(k, rng, kSmall).functor;
      const ComparisonJ c = comparison_J(f);
      EXPECT_TRUE(validate_functor(c.J).empty());
      EXPECT_TRUE(same_maps(compose_functors(c.J, c.hkernel.KF), c.kernel.inclusion));
      EXPECT_TRUE(is_fully_faithful(c.J));
    }
  }
}

TEST(ComparisonJ, NeedsAPointedInstance) {
  EXPECT_THROW(comparison_J(identity_functor(indiscrete_groupoid(Object::finite_set(2)))), CapabilityError);
}
