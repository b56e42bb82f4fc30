#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

#include "galent/entangle.hpp"
#include "galent/error.hpp"
#include "galent/group_engine.hpp"
#include "galent/group_id.hpp"
#include "oracles.hpp"

namespace galent {
namespace {

GroupPtr product(GroupPtr a, GroupPtr b) { return direct_product(std::move(a), std::move(b)).group; }

// The same group with its elements renamed by a random permutation.
GroupPtr relabel(const FiniteGroup& g, std::uint64_t seed) {
  const std::size_t n = g.order();
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Elem> table(n * n);
  std::vector<ElementKey> keys(n);
  for (Elem a = 0; a < n; ++a) {
    keys[perm[a]] = {static_cast<std::int32_t>(perm[a])};
    for (Elem b = 0; b < n; ++b) table[perm[a] * n + perm[b]] = perm[g.mul(a, b)];
  }
  return FiniteGroup::from_table(std::move(table), std::move(keys));
}

TEST(Identify, Examples) {
  EXPECT_EQ(identify(*generate_group({}, 3)).label, "1");
  const auto [s, t] = s3_generators(5);
  const Mat2 gens[] = {s, t};
  EXPECT_EQ(identify(*generate_group(gens, 5)).label, "S3");
  EXPECT_EQ(identify(*general_linear_group(2)).label, "S3");
  EXPECT_EQ(identify(*general_linear_group(3)).label, "GL2(3)");
  EXPECT_EQ(identify(*special_linear_group(3)).label, "SL2(3)");
}

// Permutations of {0,1,2,3}, optionally only the even ones, composed as maps.
GroupPtr permutation_group(bool even_only) {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p = {0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    if (!even_only || inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<Elem> table(n * n);
  std::vector<ElementKey> keys;
  for (const auto& x : perms) keys.push_back({x[0], x[1], x[2], x[3]});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 4> c;
      for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];
      table[a * n + b] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup::from_table(std::move(table), std::move(keys));
}

TEST(Identify, PermutationGroups) {
  const auto s4 = permutation_group(false);
  const auto a4 = permutation_group(true);
  ASSERT_EQ(s4->order(), 24u);
  ASSERT_EQ(a4->order(), 12u);
  EXPECT_EQ(identify(*s4).label, "S4");
  EXPECT_EQ(identify(*a4).label, "A4");
  EXPECT_NE(identify(*s4).label, identify(*special_linear_group(3)).label);
}

TEST(Identify, CatalogIdentifiesItself) {
  for (const auto& e : catalog()) {
    EXPECT_EQ(identify(*e.model).label, e.name);
    EXPECT_EQ(catalog_model(e.name), e.model);
  }
}

TEST(Identify, AbelianLabels) {
  EXPECT_EQ(identify(*cyclic_group(6)).label, "Z/6");
  EXPECT_EQ(identify(*product(cyclic_group(2), cyclic_group(4))).label, "Z/2xZ/4");
  EXPECT_EQ(identify(*product(cyclic_group(4), cyclic_group(2))).label, "Z/2xZ/4");
  EXPECT_EQ(identify(*product(cyclic_group(2), cyclic_group(3))).label, "Z/6");
  EXPECT_EQ(abelian_label({}), "1");
  EXPECT_EQ(abelian_label({2, 2, 4}), "Z/2xZ/2xZ/4");
}

TEST(Identify, OrderEightGroupsAreDistinguished) {
  const std::vector<std::pair<std::string, GroupPtr>> groups = {
      {"Z/8", cyclic_group(8)},
      {"Z/2xZ/4", product(cyclic_group(2), cyclic_group(4))},
      {"Z/2xZ/2xZ/2", product(cyclic_group(2), product(cyclic_group(2), cyclic_group(2)))},
      {"D4", metacyclic_group(4, 0, 3)},
      {"Q8", metacyclic_group(4, 2, 3)},
  };
  std::set<std::string> fps;
  for (const auto& [name, g] : groups) {
    EXPECT_EQ(identify(*g).label, name);
    fps.insert(fingerprint(*g).to_string());
  }
  EXPECT_EQ(fps.size(), groups.size());
}

TEST(Identify, InvariantUnderRelabeling) {
  std::vector<GroupPtr> groups = {cyclic_group(12), product(cyclic_group(2), cyclic_group(6))};
  for (const auto& e : catalog()) groups.push_back(e.model);
  groups.push_back(product(general_linear_group(2), general_linear_group(2)));
  for (const auto& g : groups) {
    const std::string label = identify(*g).label;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto h = relabel(*g, seed);
      EXPECT_EQ(identify(*h).label, label);
      EXPECT_EQ(fingerprint(*h), fingerprint(*g));
      EXPECT_TRUE(are_isomorphic(*g, *h));
    }
  }
}

TEST(Identify, FingerprintLabelsOutsideTheCatalog) {
  const auto g = product(general_linear_group(2), general_linear_group(2));
  const IsoClass c = identify(*g);
  EXPECT_EQ(c.order, 36u);
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.label.rfind("fp:o36-", 0), 0u) << c.label;
  EXPECT_EQ(c.label, fingerprint(*g).to_string());
}

TEST(Identify, ClassifierIsStable) {
  IsoClassifier cls;
  const auto a = product(general_linear_group(2), general_linear_group(2));
  const auto b = relabel(*a, 5);
  const auto c = product(cyclic_group(3), metacyclic_group(6, 0, 5));
  const auto la = cls.identify(*a);
  EXPECT_EQ(cls.identify(*b), la);
  const auto lc = cls.identify(*c);
  EXPECT_NE(lc, la);
  EXPECT_EQ(cls.identify(*a), la);
}

TEST(Isomorphic, Examples) {
  const auto g = general_linear_group(3);
  EXPECT_TRUE(are_isomorphic(*g, *g));
  EXPECT_TRUE(are_isomorphic(*cyclic_group(6), *product(cyclic_group(2), cyclic_group(3))));
  EXPECT_FALSE(are_isomorphic(*metacyclic_group(4, 0, 3), *metacyclic_group(4, 2, 3)));
  EXPECT_FALSE(are_isomorphic(*cyclic_group(6), *general_linear_group(2)));
}

TEST(Isomorphic, D4AndQ8ByExhaustiveSearch) {
  const auto d4 = metacyclic_group(4, 0, 3);
  const auto q8 = metacyclic_group(4, 2, 3);
  EXPECT_EQ(oracle::count_isomorphisms(*d4, *q8), 0u);
  EXPECT_EQ(oracle::count_isomorphisms(*d4, *d4), 8u);
  EXPECT_EQ(oracle::count_isomorphisms(*q8, *q8), 24u);
  EXPECT_EQ(find_isomorphisms(*d4, *d4).size(), 8u);
  EXPECT_EQ(find_isomorphisms(*q8, *q8).size(), 24u);
}

TEST(Isomorphic, CapIsEnforced) {
  const auto big = general_linear_group(7);
  EXPECT_THROW(are_isomorphic(*big, *big), CapExceeded);
}

TEST(Fingerprint, Contents) {
  const Fingerprint f = fingerprint(*general_linear_group(3));
  EXPECT_EQ(f.order, 48u);
  EXPECT_EQ(f.center, 2u);
  EXPECT_EQ(f.derived, 24u);
  EXPECT_EQ(f.abelianization, (std::vector<std::uint64_t>{2}));
  EXPECT_FALSE(f.nilpotent);
  EXPECT_TRUE(f.solvable);
  std::size_t total = 0;
  for (const auto& [o, c] : f.order_counts) total += c;
  EXPECT_EQ(total, 48u);
}

TEST(IsoClass, OrderingAndEquality) {
  const IsoClass a{"Z/3", 3}, b{"S3", 6}, c{"Z/6", 6};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(a, (IsoClass{"Z/3", 3}));
}

}  // namespace
}  // namespace galent
