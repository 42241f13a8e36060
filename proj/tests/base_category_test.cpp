#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace groupoid_lab;
using namespace testing_support;

TEST(Capabilities, InstanceTable) {
  constexpr auto s = capabilities(Kind::FinSet);
  constexpr auto p = capabilities(Kind::FinPtdSet);
  constexpr auto a = capabilities(Kind::FinAb);
  EXPECT_FALSE(s.pointed);
  EXPECT_TRUE(s.regular);
  EXPECT_FALSE(s.protomodular);
  EXPECT_TRUE(s.has_reflexive_coequalizers);
  EXPECT_TRUE(p.pointed);
  EXPECT_TRUE(p.regular);
  EXPECT_FALSE(p.protomodular);
  EXPECT_TRUE(p.has_reflexive_coequalizers);
  EXPECT_TRUE(a.pointed);
  EXPECT_TRUE(a.regular);
  EXPECT_TRUE(a.protomodular);
  EXPECT_TRUE(a.has_reflexive_coequalizers);
}

TEST(Objects, AbelianTableIsValidatedOnConstruction) {
  std::vector<int> ok{0, 1, 2, 1, 2, 0, 2, 0, 1};
  EXPECT_EQ(Object::abelian_group(ok, 3).size(), 3);
  std::vector<int> broken = ok;
  broken[4] = 1;  // 1 + 1 = 1 breaks inverses and associativity
  EXPECT_THROW(Object::abelian_group(broken, 3), StructureError);
  std::vector<int> noncommutative{0, 1, 2, 1, 2, 0, 2, 1, 0};
  EXPECT_THROW(Object::abelian_group(noncommutative, 3), StructureError);
}

TEST(Morphisms, PointedAndAdditiveChecks) {
  const Object p2 = Object::pointed_set(2, 0);
  EXPECT_THROW(Morphism::make(p2, p2, {1, 0}), StructureError);
  EXPECT_NO_THROW(Morphism::make(p2, p2, {0, 0}));
  EXPECT_THROW(Morphism::make(z(3), z(3), {0, 1, 1}), StructureError);
  EXPECT_THROW(Morphism::make(z(2), z(2), {0, 2}), StructureError);
  EXPECT_NO_THROW(Morphism::make(z(4), z(2), {0, 1, 0, 1}));
}

TEST(Compose, IdentityLaws) {
  std::mt19937 gen(7);
  const Object x = Object::finite_set(4);
  const Object y = Object::finite_set(3);
  const Morphism f = random_set_map(x, y, gen);
  EXPECT_EQ(compose(f, identity(y)), f);
  EXPECT_EQ(compose(identity(x), f), f);
}

TEST(Compose, DoublingThenReductionIsZero) {
  const Morphism twice = multiplication_by(z(4), 2);
  const Morphism mod2 = reduction(4, 2);
  const Morphism composite = compose(twice, mod2);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(composite(x), 0) << "at " << x;
}

TEST(Compose, AssociativeOnRandomSetMaps) {
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const Object a = Object::finite_set(size(gen));
    const Object b = Object::finite_set(size(gen));
    const Object c = Object::finite_set(size(gen));
    const Object d = Object::finite_set(size(gen));
    const Morphism f = random_set_map(a, b, gen);
    const Morphism g = random_set_map(b, c, gen);
    const Morphism h = random_set_map(c, d, gen);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
  }
}

TEST(Compose, MismatchedEndsThrow) {
  EXPECT_THROW(compose(identity(z(2)), identity(z(3))), CompositionError);
}

TEST(Pullback, AlongIdentityIsTheOtherDomain) {
  std::mt19937 gen(3);
  const Object x = Object::finite_set(4);
  const Object y = Object::finite_set(3);
  const Morphism g = random_set_map(x, y, gen);
  const LimitResult pb = pullback(identity(y), g);
  EXPECT_TRUE(bijective(pb.leg(1)));
}

TEST(Pullback, TwoPointsOverAPoint) {
  const Object two = Object::finite_set(2);
  const Object one = Object::finite_set(1);
  const Morphism f = Morphism::make(two, one, {0, 0});
  const LimitResult pb = pullback(f, f);
  EXPECT_EQ(pb.apex.size(), count_matching_pairs(f, f));
  EXPECT_EQ(pb.apex.size(), 4);
}

TEST(Pullback, ReductionWithItselfHasOrderEight) {
  const Morphism mod2 = reduction(4, 2);
  const LimitResult pb = pullback(mod2, mod2);
  EXPECT_EQ(pb.apex.size(), count_matching_pairs(mod2, mod2));
  EXPECT_EQ(pb.apex.size(), 8);
  EXPECT_EQ(pb.apex.kind(), Kind::FinAb);
}

TEST(Pullback, LegsCommuteAndApexIsLexicographic) {
  std::mt19937 gen(5);
  const Object x = Object::finite_set(4);
  const Object y = Object::finite_set(5);
  const Object zz = Object::finite_set(3);
  const Morphism f = random_set_map(x, zz, gen);
  const Morphism g = random_set_map(y, zz, gen);
  const LimitResult pb = pullback(f, g);
  EXPECT_EQ(compose(pb.leg(0), f), compose(pb.leg(1), g));
  for (int p = 1; p < pb.apex.size(); ++p) {
    const auto a = std::make_pair(pb.leg(0)(p - 1), pb.leg(1)(p - 1));
    const auto b = std::make_pair(pb.leg(0)(p), pb.leg(1)(p));
    EXPECT_LT(a, b);
  }
}

TEST(FiniteLimit, SingleNode) {
  const Object x = z(6);
  const LimitResult lim = finite_limit(Diagram{{x}, {}});
  EXPECT_EQ(lim.apex.size(), 6);
  EXPECT_TRUE(bijective(lim.leg(0)));
}

TEST(FiniteLimit, TwoCospanLimitOfIdentityOnDiscreteIsA1) {
  const Groupoid a = discrete_groupoid(Object::finite_set(2));
  const FullFaithfulness ff = full_faithfulness(identity_functor(a));
  EXPECT_EQ(ff.limit.apex.size(), a.B1.size());
  EXPECT_TRUE(bijective(ff.comparison));
}

TEST(FiniteLimit, FiveNodeObjectLimitMatchesIteratedPullback) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng(s);
      const Functor f = gen_functor(k, rng).functor;
      const HPullback v = v_groupoid(f);
      const LimitResult& lim = v.limit.level0;
      const LimitResult chained = pullback(f.F0, f.B.c);
      ASSERT_EQ(lim.apex.size(), chained.apex.size());
      // (x, b, a) with x = d b and c b = F0 a corresponds to (a, b).
      std::set<std::pair<int, int>> seen;
      for (int p = 0; p < lim.apex.size(); ++p) {
        EXPECT_EQ(lim.leg(0)(p), f.B.d(lim.leg(1)(p)));
        EXPECT_EQ(f.B.c(lim.leg(1)(p)), f.F0(lim.leg(2)(p)));
        seen.insert({lim.leg(2)(p), lim.leg(1)(p)});
      }
      EXPECT_EQ(static_cast<int>(seen.size()), chained.apex.size());
    }
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(identity(z(5))).apex.size(), 1);
  const LimitResult k = kernel(reduction(4, 2));
  EXPECT_EQ(k.apex.size(), 2);
  EXPECT_EQ(image_set(kernel_inclusion(k)), (std::set<int>{0, 2}));
  const Object p3 = Object::pointed_set(3, 0);
  const Object p2 = Object::pointed_set(2, 0);
  EXPECT_EQ(kernel(zero_morphism(p3, p2)).apex.size(), 3);
  EXPECT_EQ(kernel(zero_morphism(z(6), z(4))).apex.size(), 6);
}

TEST(Kernel, NeedsAPointedInstance) {
  const Object x = Object::finite_set(2);
  EXPECT_THROW(kernel(identity(x)), CapabilityError);
}

TEST(ReflexiveCoequalizer, EqualLegsGiveIdentityQuotient) {
  const Object x = z(4);
  const Quotient q = reflexive_coequalizer(identity(x), identity(x), identity(x));
  EXPECT_EQ(q.object.size(), 4);
  EXPECT_TRUE(bijective(q.map));
}

TEST(ReflexiveCoequalizer, GroupoidOfDoublingHasTwoComponents) {
  const Morphism delta = Morphism::make(z(2), z(4), {0, 2});
  const Groupoid g = groupoid_from_arrow(delta);
  const Quotient q = reflexive_coequalizer(g.d, g.c, g.e);
  // Cokernel of delta: Z4 / {0, 2}.
  EXPECT_EQ(q.object.size(), 4 / static_cast<int>(image_set(delta).size()));
  EXPECT_EQ(q.object.size(), 2);
  EXPECT_EQ(q.object.kind(), Kind::FinAb);
}

TEST(ReflexiveCoequalizer, ConnectedSetGroupoidHasOneClass) {
  const Groupoid g = indiscrete_groupoid(Object::finite_set(2));
  EXPECT_EQ(reflexive_coequalizer(g.d, g.c, g.e).object.size(), 1);
}

TEST(ClassifyMorphism, Examples) {
  const MorphismClass id = classify_morphism(identity(z(3)));
  EXPECT_TRUE(id.mono && id.regular_epi && id.iso && id.split_epi);
  const MorphismClass mod2 = classify_morphism(reduction(4, 2));
  EXPECT_TRUE(mod2.regular_epi);
  EXPECT_FALSE(mod2.split_epi);
  EXPECT_FALSE(mod2.mono);
  // Sections s: Z2 -> Z4 need 2 s(1) = 0 and s(1) odd, which no element satisfies.
  for (int s1 = 0; s1 < 4; ++s1) EXPECT_FALSE((2 * s1) % 4 == 0 && s1 % 2 == 1);
  const Object one = Object::pointed_set(1, 0);
  const Object two = Object::pointed_set(2, 0);
  const MorphismClass inc = classify_morphism(Morphism::make(one, two, {0}));
  EXPECT_TRUE(inc.mono);
  EXPECT_FALSE(inc.regular_epi);
}

TEST(JointlyStronglyEpi, Examples) {
  EXPECT_TRUE(jointly_strongly_epi({reduction(6, 3)}));
  const Morphism twice = multiplication_by(z(4), 2);
  EXPECT_EQ(closure(z(4), {0, 2}), (std::set<int>{0, 2}));
  EXPECT_FALSE(jointly_strongly_epi({twice, twice}));
  const Object target = Object::pointed_set(3, 0, {"*", "x", "y"});
  const Object two = Object::pointed_set(2, 0);
  const Morphism to_x = Morphism::make(two, target, {0, 1});
  const Morphism to_y = Morphism::make(two, target, {0, 2});
  EXPECT_TRUE(jointly_strongly_epi({to_x, to_y}));
  EXPECT_FALSE(jointly_strongly_epi({to_x}));
  // The two images miss (1, 1) as sets but generate Z2 x Z2.
  const Object k = abelian_group_of_type({2, 2});
  const Morphism p1 = Morphism::make(z(2), k, {0, 1});
  const Morphism p2 = Morphism::make(z(2), k, {0, 2});
  EXPECT_TRUE(jointly_strongly_epi({p1, p2}));
}

TEST(Mediate, OwnLegsGiveIdentity) {
  const Morphism mod2 = reduction(4, 2);
  const LimitResult pb = pullback(mod2, mod2);
  const Morphism m = mediate(pb, pb.legs);
  EXPECT_EQ(m, identity(pb.apex));
}

TEST(Mediate, NonCommutingConeThrows) {
  const Morphism mod2 = reduction(4, 2);
  const LimitResult pb = pullback(mod2, mod2);
  EXPECT_THROW(mediate(pb, std::vector<Morphism>{identity(z(4)), zero_morphism(z(4), z(4))}), NoMediatorError);
}

TEST(Mediate, TauIsTheFactorizationOfDAndF1) {
  Rng rng(21);
  const Functor f = gen_functor(Kind::FinSet, rng).functor;
  const TauFactorization t = tau_factorization(f, Side::d);
  EXPECT_EQ(compose(t.tau, t.alpha()), f.A.d);
  EXPECT_EQ(compose(t.tau, t.beta()), f.F1);
}

TEST(Mediate, PartialOfASquareFactorsThroughThePullback) {
  const Object a = z(4);
  const Morphism mod2 = reduction(4, 2);
  const ArrowMorphism m{{identity(a)}, {mod2}, identity(a), mod2};
  ASSERT_TRUE(is_commutative(m));
  const Morphism p = partial_arr(m);
  const LimitResult pb = pullback(m.f0, m.target.a);
  EXPECT_EQ(compose(p, pb.leg(0)), m.source.a);
  EXPECT_EQ(compose(p, pb.leg(1)), m.f);
}
