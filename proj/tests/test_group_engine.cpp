#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "galent/entangle.hpp"
#include "galent/error.hpp"
#include "galent/group_engine.hpp"
#include "galent/group_id.hpp"
#include "oracles.hpp"

namespace galent {
namespace {

std::set<oracle::Members> as_set(const std::vector<Subgroup>& subs) {
  std::set<oracle::Members> out;
  for (const auto& h : subs) out.insert(h.members());
  return out;
}

GroupPtr s4() {
  const auto g = general_linear_group(3);
  const auto w = Subgroup::whole(g);
  return quotient_group(w, center(w));
}

Subgroup by_members(const GroupPtr& g, std::vector<Elem> members) {
  return Subgroup::checked(g, std::move(members));
}

TEST(Construction, Orders) {
  EXPECT_EQ(generate_group({}, 6)->order(), 1u);
  EXPECT_EQ(general_linear_group(2)->order(), 6u);
  EXPECT_EQ(general_linear_group(3)->order(), 48u);
  EXPECT_EQ(special_linear_group(3)->order(), 24u);
  EXPECT_EQ(general_linear_group(6)->order(), 288u);
  EXPECT_EQ(cyclic_group(12)->order(), 12u);
  EXPECT_EQ(metacyclic_group(4, 2, 3)->order(), 8u);
  EXPECT_EQ(s4()->order(), 24u);
}

TEST(Construction, SigmaTauGenerateS3) {
  for (std::uint32_t q : {3u, 5u, 7u, 11u}) {
    const auto [s, t] = s3_generators(q);
    const Mat2 gens[] = {s, t};
    EXPECT_EQ(generate_group(gens, q)->order(), 6u) << q;
    const Mat2 printed[] = {s, Mat2(-1, 1, 0, 1, q)};
    EXPECT_EQ(generate_group(printed, q)->order(), 4u * q) << q;
  }
}

TEST(Construction, CapIsEnforced) {
  EXPECT_THROW(general_linear_group(5, 100), CapExceeded);
  const Mat2 gens[] = {Mat2(1, 1, 0, 1, 7), Mat2(1, 0, 1, 1, 7)};
  try {
    generate_group(gens, 7, 50);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_GT(e.order(), 50u);
  }
}

TEST(Construction, ElementsAreCanonicallyOrdered) {
  const Mat2 a[] = {Mat2(1, 1, 0, 1, 5), Mat2(2, 0, 0, 1, 5)};
  const Mat2 b[] = {Mat2(2, 0, 0, 1, 5), Mat2(1, 4, 0, 1, 5), Mat2(1, 1, 0, 1, 5)};
  const auto x = generate_group(a, 5);
  const auto y = generate_group(b, 5);
  ASSERT_EQ(x->order(), 20u);
  ASSERT_EQ(y->order(), 20u);
  for (Elem e = 0; e < x->order(); ++e) EXPECT_EQ(x->matrix(e), y->matrix(e));
  for (Elem e = 1; e < x->order(); ++e) EXPECT_LT(x->matrix(e - 1), x->matrix(e));
}

TEST(Construction, LargeGroupsMultiplyWithoutATable) {
  const auto g = general_linear_group(7);
  ASSERT_EQ(g->order(), 2016u);
  const auto h = direct_product(general_linear_group(3), general_linear_group(5)).group;
  ASSERT_EQ(h->order(), 23040u);
  EXPECT_FALSE(h->has_cayley_table());
  for (Elem x = 0; x < h->order(); x += 997) {
    for (Elem y = 0; y < h->order(); y += 1009) {
      const auto [xl, xr] = h->components(x);
      const auto [yl, yr] = h->components(y);
      const auto [zl, zr] = h->components(h->mul(x, y));
      ASSERT_EQ(zl, h->left_factor()->mul(xl, yl));
      ASSERT_EQ(zr, h->right_factor()->mul(xr, yr));
    }
  }
}

TEST(Closure, Examples) {
  const auto s3 = general_linear_group(2);
  const Elem id[] = {s3->identity()};
  EXPECT_EQ(subgroup_closure(s3, id).size(), 1u);

  std::vector<Elem> involutions;
  for (Elem x = 0; x < s3->order(); ++x)
    if (s3->element_order(x) == 2) involutions.push_back(x);
  ASSERT_EQ(involutions.size(), 3u);
  const Elem two[] = {involutions[0], involutions[1]};
  EXPECT_EQ(subgroup_closure(s3, two).members(), oracle::closure(*s3, {two[0], two[1]}));
  EXPECT_EQ(subgroup_closure(s3, two).size(), 6u);

  const auto prod = direct_product(general_linear_group(2), general_linear_group(3));
  EXPECT_EQ(prod.group->order(), 288u);
  EXPECT_EQ(join(prod.left_factor, prod.right_factor), Subgroup::whole(prod.group));
}

TEST(Closure, MatchesOracleOnRandomSeeds) {
  const auto g = general_linear_group(3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Elem> pick(0, 47);
  for (int i = 0; i < 200; ++i) {
    std::vector<Elem> seed = {pick(rng), pick(rng)};
    EXPECT_EQ(subgroup_closure(g, seed).members(), oracle::closure(*g, seed));
  }
}

struct CountCase {
  const char* name;
  GroupPtr group;
  std::size_t expected;
};

TEST(Enumeration, CountsAgreeWithSubsetOracle) {
  const std::vector<CountCase> cases = {
      {"S3", general_linear_group(2), 6},        {"Z/12", cyclic_group(12), 6},
      {"Q8", metacyclic_group(4, 2, 3), 6},      {"D4", metacyclic_group(4, 0, 3), 10},
      {"S4", s4(), 30},                          {"Z/2xZ/2", direct_product(cyclic_group(2), cyclic_group(2)).group, 5},
  };
  for (const auto& c : cases) {
    const auto brute = oracle::subgroups_by_subsets(*c.group);
    const auto found = enumerate_subgroups(c.group, Conjugacy::kAll);
    EXPECT_EQ(brute.size(), c.expected) << c.name;
    EXPECT_EQ(as_set(found), brute) << c.name;
    EXPECT_EQ(found.size(), brute.size()) << c.name;
  }
}

TEST(Enumeration, CyclicJoinOracleAgreesWithSubsets) {
  for (const auto& g : {general_linear_group(2), metacyclic_group(4, 0, 3), s4()}) {
    EXPECT_EQ(oracle::subgroups_by_cyclic_joins(*g), oracle::subgroups_by_subsets(*g));
  }
}

TEST(Enumeration, Order48AgreesWithJoinOracleAndShuffles) {
  for (const auto& [name, g, all, classes] :
       {std::tuple{"SL2(3)", special_linear_group(3), 15u, 7u},
        std::tuple{"GL2(3)", general_linear_group(3), 55u, 16u}}) {
    const auto brute = oracle::subgroups_by_cyclic_joins(*g);
    EXPECT_EQ(brute.size(), all) << name;
    const auto base = enumerate_subgroups(g, Conjugacy::kAll);
    EXPECT_EQ(as_set(base), brute) << name;
    const auto reps = enumerate_subgroups(g, Conjugacy::kUpToConjugacy);
    EXPECT_EQ(reps.size(), classes) << name;
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      EnumerationOptions o;
      o.shuffle_seed = seed;
      EXPECT_EQ(enumerate_subgroups(g, Conjugacy::kAll, o), base) << name << " seed " << seed;
      EXPECT_EQ(enumerate_subgroups(g, Conjugacy::kUpToConjugacy, o), reps)
          << name << " seed " << seed;
    }
  }
}

TEST(Enumeration, Examples) {
  EXPECT_EQ(enumerate_subgroups(generate_group({}, 6), Conjugacy::kAll).size(), 1u);
  const auto s3 = general_linear_group(2);
  EXPECT_EQ(enumerate_subgroups(s3, Conjugacy::kAll).size(), 6u);
  EXPECT_EQ(enumerate_subgroups(s3, Conjugacy::kUpToConjugacy).size(), 4u);
}

TEST(Enumeration, ConjugacyExpansionReproducesFullList) {
  for (const auto& g : {general_linear_group(2), metacyclic_group(4, 0, 3), s4(),
                        general_linear_group(3), metacyclic_group(8, 0, 3)}) {
    const auto all = enumerate_subgroups(g, Conjugacy::kAll);
    const auto reps = enumerate_subgroups(g, Conjugacy::kUpToConjugacy);
    std::set<oracle::Members> expanded;
    for (const auto& r : reps) {
      EXPECT_EQ(canonical_conjugate(r), r);
      for (const auto& c : conjugacy_class(r)) {
        EXPECT_TRUE(expanded.insert(c.members()).second) << "classes overlap";
        EXPECT_EQ(canonical_conjugate(c), r);
      }
    }
    EXPECT_EQ(expanded, as_set(all));
  }
}

TEST(Enumeration, CapsAreEnforced) {
  EnumerationOptions o;
  o.cap_all = 40;
  EXPECT_THROW(enumerate_subgroups(general_linear_group(3), Conjugacy::kAll, o), CapExceeded);
  o.cap_classes = 40;
  EXPECT_THROW(enumerate_subgroups(general_linear_group(3), Conjugacy::kUpToConjugacy, o),
               CapExceeded);
}

TEST(Normal, AbelianGroup) {
  const auto g = direct_product(cyclic_group(2), cyclic_group(4)).group;
  const auto w = Subgroup::whole(g);
  const auto ns = normal_structure(w);
  EXPECT_EQ(ns.normal_subgroups.size(), enumerate_subgroups(g, Conjugacy::kAll).size());
  EXPECT_EQ(ns.center, w);
  EXPECT_EQ(ns.derived.size(), 1u);
  EXPECT_EQ(ns.abelian_invariants, (std::vector<std::uint64_t>{2, 4}));
  EXPECT_TRUE(is_abelian(w));
}

TEST(Normal, S3) {
  const auto g = general_linear_group(2);
  const auto ns = normal_structure(Subgroup::whole(g));
  std::vector<std::size_t> sizes;
  for (const auto& n : ns.normal_subgroups) sizes.push_back(n.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3, 6}));
  EXPECT_EQ(ns.derived.size(), 3u);
  EXPECT_EQ(ns.center.size(), 1u);
  EXPECT_EQ(ns.abelian_invariants, (std::vector<std::uint64_t>{2}));

  std::set<oracle::Members> brute;
  for (const auto& h : oracle::subgroups_by_subsets(*g))
    if (oracle::is_normal(*g, h, Subgroup::whole(g).members())) brute.insert(h);
  EXPECT_EQ(as_set(ns.normal_subgroups), brute);
}

TEST(Normal, NormalSubgroupsMatchConjugationScan) {
  for (const auto& g : {general_linear_group(3), s4(), metacyclic_group(8, 0, 3)}) {
    const auto w = Subgroup::whole(g);
    std::set<oracle::Members> brute;
    for (const auto& h : oracle::subgroups_by_cyclic_joins(*g))
      if (oracle::is_normal(*g, h, w.members())) brute.insert(h);
    EXPECT_EQ(as_set(normal_subgroups(w)), brute);
    EXPECT_EQ(center(w).members(), oracle::center(*g, w.members()));
  }
}

TEST(Normal, QuaternionInsideGl2Mod3) {
  const auto g = general_linear_group(3);
  const auto q8 = catalog_model("Q8");
  int seen = 0;
  for (const auto& h : enumerate_subgroups(g, Conjugacy::kAll)) {
    if (h.size() != 8 || !are_isomorphic(*subgroup_as_group(h), *q8)) continue;
    ++seen;
    EXPECT_EQ(center(h).size(), 2u);
    EXPECT_EQ(center(h).members(), oracle::center(*g, h.members()));
    EXPECT_EQ(derived_subgroup(h).size(), 2u);
  }
  EXPECT_EQ(seen, 1);
}

TEST(Normal, NormalizerAndClosure) {
  const auto g = s4();
  for (const auto& h : enumerate_subgroups(g, Conjugacy::kAll)) {
    const auto n = normalizer(h);
    oracle::Members brute;
    for (Elem x = 0; x < g->order(); ++x)
      if (oracle::conjugate(*g, h.members(), x) == h.members()) brute.push_back(x);
    EXPECT_EQ(n.members(), brute);
    EXPECT_EQ(is_normal_in(h, Subgroup::whole(g)), brute.size() == g->order());
  }
}

TEST(Quotient, Examples) {
  const auto g = general_linear_group(3);
  const auto w = Subgroup::whole(g);
  EXPECT_EQ(quotient_group(w, w)->order(), 1u);
  const auto same = quotient_group(w, Subgroup::trivial(g));
  EXPECT_EQ(same->order(), 48u);
  EXPECT_TRUE(are_isomorphic(*same, *g));

  std::vector<Elem> sl;
  for (Elem x = 0; x < g->order(); ++x)
    if (g->matrix(x).det() == 1) sl.push_back(x);
  const auto sl2 = by_members(g, sl);
  const auto q = quotient_group(w, sl2);
  EXPECT_EQ(q->order(), 2u);
  EXPECT_TRUE(are_isomorphic(*q, *cyclic_group(2)));
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = 0; y < g->order(); ++y)
      ASSERT_EQ(q->coset_of(g->mul(x, y)), q->mul(q->coset_of(x), q->coset_of(y)));
}

TEST(Quotient, RejectsNonNormal) {
  const auto g = general_linear_group(2);
  for (const auto& h : enumerate_subgroups(g, Conjugacy::kAll)) {
    if (h.size() == 2) {
      EXPECT_THROW(quotient_group(Subgroup::whole(g), h), PreconditionError);
      break;
    }
  }
}

TEST(Product, Examples) {
  const auto a = general_linear_group(2);
  const auto p = direct_product(a, generate_group({}, 5));
  EXPECT_TRUE(are_isomorphic(*p.group, *a));
  const auto crt = crt_product(general_linear_group(2), general_linear_group(3));
  EXPECT_EQ(crt.group->order(), 288u);
  EXPECT_TRUE(crt.group->is_matrix_group());
  EXPECT_EQ(crt.group->modulus(), 6u);
  EXPECT_EQ(intersection(crt.left_factor, crt.right_factor).size(), 1u);
  for (Elem x = 0; x < crt.group->order(); ++x) {
    const auto [l, r] = product_components(crt, x);
    ASSERT_EQ(product_element(crt, l, r), x);
  }
}

TEST(Isomorphisms, QuotientIsomorphismCounts) {
  const auto one = generate_group({}, 2);
  EXPECT_EQ(find_isomorphisms(*one, *one).size(), 1u);
  const auto z2 = cyclic_group(2);
  EXPECT_EQ(find_isomorphisms(*z2, *z2).size(), 1u);
  const auto s3 = general_linear_group(2);
  const auto s3b = metacyclic_group(3, 0, 2);
  const auto isos = find_isomorphisms(*s3, *s3b);
  EXPECT_EQ(isos.size(), 6u);
  EXPECT_EQ(oracle::count_isomorphisms(*s3, *s3b), 6u);
  for (const auto& phi : isos) EXPECT_TRUE(is_isomorphism(*s3, *s3b, phi));
  EXPECT_EQ(find_isomorphisms(*metacyclic_group(4, 0, 3), *metacyclic_group(4, 0, 3)).size(),
            oracle::count_isomorphisms(*metacyclic_group(4, 0, 3), *metacyclic_group(4, 0, 3)));
  EXPECT_FALSE(find_isomorphism(*cyclic_group(6), *s3).has_value());
}

Subgroup index_two(const GroupPtr& g) {
  for (const auto& n : normal_subgroups(Subgroup::whole(g)))
    if (n.size() * 2 == g->order()) return n;
  throw std::runtime_error("no index-2 subgroup");
}

TEST(Fiber, TrivialQuotientGivesFullProduct) {
  const auto a = general_linear_group(2);
  const auto b = cyclic_group(4);
  const auto qa = quotient_group(Subgroup::whole(a), Subgroup::whole(a));
  const auto qb = quotient_group(Subgroup::whole(b), Subgroup::whole(b));
  const auto phi = find_isomorphism(*qa, *qb);
  ASSERT_TRUE(phi);
  EXPECT_EQ(fiber_product(Subgroup::whole(a), Subgroup::whole(b), *phi)->order(), 24u);
}

TEST(Fiber, DiagonalOfZ2) {
  const auto z2 = cyclic_group(2);
  const auto n = Subgroup::trivial(z2);
  const auto q = quotient_group(Subgroup::whole(z2), n);
  const auto phi = find_isomorphism(*q, *q);
  ASSERT_TRUE(phi);
  const auto f = fiber_product(n, n, *phi);
  EXPECT_EQ(f->order(), 2u);
}

TEST(Fiber, S3OverZ2) {
  const auto a = general_linear_group(2);
  const auto b = metacyclic_group(3, 0, 2);
  const auto na = index_two(a), nb = index_two(b);
  const auto qa = quotient_group(Subgroup::whole(a), na);
  const auto qb = quotient_group(Subgroup::whole(b), nb);
  const auto phi = find_isomorphism(*qa, *qb);
  ASSERT_TRUE(phi);
  const auto f = fiber_product(na, nb, *phi);
  EXPECT_EQ(f->order(), 18u);

  // Brute force: pairs with equal sign.
  std::size_t pairs = 0;
  for (Elem x = 0; x < a->order(); ++x)
    for (Elem y = 0; y < b->order(); ++y)
      pairs += na.contains(x) == nb.contains(y);
  EXPECT_EQ(pairs, 18u);

  // Both projections are onto and the kernels are the normal subgroups.
  std::set<Elem> left, right;
  std::size_t ker_left = 0;
  for (Elem z = 0; z < f->order(); ++z) {
    const auto [l, r] = f->components(z);
    left.insert(l);
    right.insert(r);
    ASSERT_EQ(na.contains(l), nb.contains(r));
    ker_left += l == a->identity();
  }
  EXPECT_EQ(left.size(), 6u);
  EXPECT_EQ(right.size(), 6u);
  EXPECT_EQ(ker_left, nb.size());
}

TEST(Fiber, RejectsNonIsomorphism) {
  const auto a = general_linear_group(2);
  const auto na = index_two(a);
  const ElementMap constant = {0, 0};
  EXPECT_THROW(fiber_product(na, na, constant), PreconditionError);
}

TEST(Subgroup, CheckedValidatesInput) {
  const auto g = general_linear_group(2);
  EXPECT_THROW(Subgroup::checked(g, {0, 1, 2, 3}), PreconditionError);
  EXPECT_THROW(Subgroup::checked(g, {0, 99}), PreconditionError);
  const auto t = Subgroup::trivial(g);
  EXPECT_EQ(Subgroup::checked(g, t.members()), t);
}

}  // namespace
}  // namespace galent
