#include <gtest/gtest.h>

#include <map>

#include "test_support.hpp"

using namespace groupoid_lab;
using namespace testing_support;

namespace {

int count_mask(const std::vector<char>& m) {
  int n = 0;
  for (char c : m) n += c != 0;
  return n;
}

/// Isomorphism invariants of a square, used to compare the two protomodularity searches.
std::vector<int> square_signature(const ArrowMorphism& m) {
  return {m.source.top().size(),
          m.f0.dom().size(),
          m.target.top().size(),
          m.f0.cod().size(),
          kernel_size(m.f),
          kernel_size(m.f0),
          kernel_size(m.source.a),
          kernel_size(m.target.a),
          count_mask(image_mask(m.source.a)),
          count_mask(image_mask(m.target.a)),
          count_mask(image_mask(m.f0)),
          pullback(m.f0, m.target.a).apex.size(),
          count_mask(image_mask(partial_arr(m))),
          kernel_size(compose(m.source.a, m.f0)),
          static_cast<int>(detail::j_arr_covers(m))};
}

}  // namespace

TEST(Generators, SameSeedSameOutput) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng r1(s, 60);
      Rng r2(s, 60);
      const GeneratedGroupoid g1 = gen_groupoid(k, r1);
      const GeneratedGroupoid g2 = gen_groupoid(k, r2);
      EXPECT_EQ(g1.family, g2.family);
      EXPECT_EQ(g1.groupoid, g2.groupoid);
      EXPECT_EQ(gen_functor(k, r1).functor, gen_functor(k, r2).functor);
    }
  }
}

TEST(Generators, FamilyHistogramCoversEveryFamily) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    std::map<std::string, int> histogram;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      Rng rng(s, 61);
      const GeneratedGroupoid g = gen_groupoid(k, rng);
      ++histogram[g.family];
      ASSERT_TRUE(validate_groupoid(g.groupoid).empty()) << g.family << " seed " << s;
    }
    for (const auto& family : groupoid_families(k)) EXPECT_GT(histogram[family], 0) << family;
  }
}

TEST(Generators, FunctorsAreValid) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      Rng rng(s, 62);
      const GeneratedFunctor g = gen_functor(k, rng);
      EXPECT_TRUE(validate_functor(g.functor).empty()) << g.family;
    }
  }
}

TEST(Generators, FibrationsClassifyAsFibrations) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    int non_split = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
      Rng rng(s, 63);
      const GeneratedFunctor g = gen_fibration(k, rng);
      const FibrationClass c = classify_fibration(g.functor);
      EXPECT_GE(c, FibrationClass::fibration) << g.family;
      non_split += c == FibrationClass::fibration;
    }
    if (k == Kind::FinAb) EXPECT_GT(non_split, 0);
    else EXPECT_EQ(non_split, 0);
  }
}

TEST(Generators, ProductProjectionIsASplitEpiFibration) {
  const Groupoid a = delooping(z(3));
  const Groupoid b = indiscrete_groupoid(z(2));
  const auto [pa, pb] = product_projections(a, b, product_groupoid(a, b));
  EXPECT_EQ(classify_fibration(pa), FibrationClass::split_epi_fibration);
  EXPECT_EQ(classify_fibration(pb), FibrationClass::split_epi_fibration);
}

TEST(Generators, ArrowMorphismsCommute) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(s, 64);
      const ArrowMorphism m = gen_arrow_morphism(k, rng, 6, s % 2 == 0);
      EXPECT_TRUE(is_commutative(m));
      if (s % 2 == 0) EXPECT_TRUE(is_surjective(m.f));
    }
  }
}

TEST(Suites, FibrationSuitePassesOnFinSet) {
  const SuiteReport r = run_suite("prop-fibration-T", Kind::FinSet, 200, 42);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases, 200);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_GT(r.stat("fibrations"), 0);
  EXPECT_GT(r.stat("non-fibrations"), 0);
}

TEST(Suites, FaultInjectionFailsWithAWitness) {
  SuiteOptions options;
  options.inject_fault = true;
  const SuiteReport r = run_suite("prop-fibration-T", Kind::FinSet, 100, 42, options);
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.failures.empty());
  EXPECT_FALSE(r.failures.front().witness.is_null());
  EXPECT_EQ(to_json(r).at("status"), "fail");
}

TEST(Suites, ProtomodularityWitnessOnPointedSets) {
  const SuiteReport r = run_suite("protomodularity-char", Kind::FinPtdSet, 1, 42);
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.stat("fold square qualifies"), 1);
  EXPECT_GT(r.stat("witnesses"), 0);
  const ArrowMorphism w = arrow_morphism_from_json(*r.witness);
  EXPECT_TRUE(is_surjective(w.f));
  EXPECT_FALSE(is_weak_equivalence_arr(comparison_J_arr(w).J));
  // Independent check: the two images leave part of the pullback uncovered.
  const ArrowComparisonJ c = comparison_J_arr(w);
  EXPECT_FALSE(detail::j_arr_covers(w));
  EXPECT_FALSE(jointly_strongly_epi({c.J.f0, c.hkernel.partial()}));
}

TEST(Suites, StarWithoutFibrationIsFound) {
  const SuiteReport r = run_suite("star-not-fibration", Kind::FinAb, 1, 42);
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.witness.has_value());
  const Functor f = functor_from_json(*r.witness);
  EXPECT_TRUE(validate_functor(f).empty());
  EXPECT_TRUE(is_star_fibration(f));
  EXPECT_FALSE(is_fibration(f));
}

TEST(Suites, IsomorphismReductionMatchesBruteForce) {
  std::vector<Object> groups;
  for (const auto& t : abelian_group_types(4)) groups.push_back(abelian_group_of_type(t));
  std::set<std::vector<int>> brute;
  std::set<std::vector<int>> reduced;
  int brute_count = 0;
  int reduced_count = 0;
  detail::for_each_fibration_square(groups, [&](const ArrowMorphism& m) {
    ++brute_count;
    brute.insert(square_signature(m));
    return true;
  });
  detail::for_each_fibration_square_up_to_iso(groups, [&](const ArrowMorphism& m) {
    ++reduced_count;
    reduced.insert(square_signature(m));
    return true;
  });
  EXPECT_LT(reduced_count, brute_count);
  EXPECT_EQ(brute, reduced);
}

TEST(Suites, ReportsAreByteIdenticalUnderAFixedSeed) {
  const std::string a = to_json(run_suite("hkernel-discrete", Kind::FinPtdSet, 30, 7)).dump();
  const std::string b = to_json(run_suite("hkernel-discrete", Kind::FinPtdSet, 30, 7)).dump();
  EXPECT_EQ(a, b);
  const Json timed = to_json(run_suite("hkernel-discrete", Kind::FinPtdSet, 5, 7), true);
  EXPECT_TRUE(timed.contains("elapsed_ms"));
  EXPECT_FALSE(Json::parse(a).contains("elapsed_ms"));
}

TEST(Suites, UnknownAndInapplicable) {
  EXPECT_THROW(run_suite("no-such-suite", Kind::FinSet, 1, 1), UnknownSuiteError);
  const SuiteReport r = run_suite("prop-star-J", Kind::FinSet, 10, 1);
  EXPECT_TRUE(r.skipped);
  EXPECT_EQ(to_json(r).at("status"), "skipped");
}

TEST(Suites, RegistryNamesAreUnique) {
  std::set<std::string> names;
  for (const auto& s : suite_registry()) EXPECT_TRUE(names.insert(s.name).second) << s.name;
  for (int item = 1; item <= 10; ++item) EXPECT_TRUE(names.count("normalization-transfer-" + std::to_string(item)));
}

TEST(Corruptions, CatalogueIsRejectedWithTheExpectedAxiom) {
  const auto catalogue = corruption_catalogue();
  EXPECT_GE(catalogue.size(), 20u);
  std::set<Kind> kinds;
  for (const auto& c : catalogue) {
    kinds.insert(c.kind);
    EXPECT_TRUE(c.base_valid) << c.name;
    bool named = false;
    for (const auto& v : c.violations) named = named || v.axiom == c.expected_axiom;
    EXPECT_TRUE(named) << c.name << " expected " << c.expected_axiom;
  }
  EXPECT_EQ(kinds.size(), 3u);
}

TEST(Minimization, ShrinksANonFibrationToOneObject) {
  const Groupoid b = indiscrete_groupoid(Object::finite_set(4));
  const Functor n = discrete_embedding(b);
  auto not_fibration = [](const Functor& f) { return !is_fibration(f); };
  ASSERT_TRUE(not_fibration(n));
  const Functor small = minimize_functor(n, not_fibration);
  EXPECT_EQ(small.A.B0.size(), 1);
  EXPECT_TRUE(validate_functor(small).empty());
  EXPECT_TRUE(not_fibration(small));
}

TEST(Serialization, RoundTrips) {
  for (Kind k : {Kind::FinSet, Kind::FinPtdSet, Kind::FinAb}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(s, 65);
      const Functor f = gen_functor(k, rng).functor;
      EXPECT_EQ(functor_from_json(Json::parse(to_json(f).dump())), f);
      const Groupoid g = f.A;
      EXPECT_EQ(groupoid_from_json(to_json(g)), g);
      const NatTransformation n = identity_nat(f);
      const NatTransformation back = nat_from_json(to_json(n));
      EXPECT_EQ(back.alpha, n.alpha);
      const ArrowMorphism m = gen_arrow_morphism(k, rng, 5);
      EXPECT_EQ(arrow_morphism_from_json(to_json(m)), m);
    }
  }
}

TEST(Serialization, ObjectsKeepLabelsAndStructure) {
  const Object p = Object::pointed_set(3, 1, {"a", "*", "b"});
  const Object back = object_from_json(to_json(p));
  EXPECT_EQ(back, p);
  EXPECT_EQ(back.basepoint(), 1);
  EXPECT_EQ(back.label(2), "b");
  const Object g = abelian_group_of_type({2, 4});
  EXPECT_EQ(object_from_json(to_json(g)), g);
}

TEST(Serialization, MalformedInputIsAParseError) {
  EXPECT_THROW(object_from_json(Json::parse(R"({"instance": "FinGrp", "carrier": [0]})")), ParseError);
  EXPECT_THROW(morphism_from_json(Json::parse(R"({"dom": {"instance": "FinSet", "carrier": [0, 1]},
      "cod": {"instance": "FinSet", "carrier": [0]}, "map": [0, 3]})")),
               ParseError);
  EXPECT_THROW(document_type(Json::parse("[1, 2]")), ParseError);
  EXPECT_EQ(document_type(tagged(DocumentType::functor, identity_functor(delooping(z(2))))), DocumentType::functor);
}
