#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "autocomm/automorphism.hpp"
#include "autocomm/named.hpp"

using namespace autocomm;

namespace {

// All bijections fixing e that respect the table. Oracle for |K| <= 8.
std::set<std::vector<Element>> bijection_scan(const Group& k) {
  std::set<std::vector<Element>> out;
  std::vector<Element> rest(k.order() - 1);
  std::iota(rest.begin(), rest.end(), 1);
  do {
    std::vector<Element> map{0};
    map.insert(map.end(), rest.begin(), rest.end());
    bool hom = true;
    for (Element a = 0; a < k.order() && hom; ++a)
      for (Element b = 0; b < k.order() && hom; ++b) hom = map[k.mul(a, b)] == k.mul(map[a], map[b]);
    if (hom) out.insert(map);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

std::size_t phi(std::size_t n) {
  std::size_t c = 0;
  for (std::size_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

}  // namespace

TEST(Automorphisms, BacktrackingMatchesBijectionScan) {
  for (const char* spec : {"C1", "C2", "C5", "C6", "C8", "C2xC2", "S3", "D4", "Q8", "C2xC4", "C2xC2xC2"}) {
    auto k = parse_group_spec(spec);
    auto aut = automorphism_group(k);
    std::set<std::vector<Element>> found;
    for (const auto& a : aut.elements()) found.insert(a.images);
    EXPECT_EQ(found, bijection_scan(*k)) << spec;
  }
}

TEST(Automorphisms, KnownOrders) {
  for (std::size_t n = 1; n <= 16; ++n) EXPECT_EQ(automorphism_group(cyclic_group(n)).order(), phi(n)) << n;
  EXPECT_EQ(automorphism_group(parse_group_spec("C2xC2")).order(), 6u);
  EXPECT_EQ(automorphism_group(make_named("D4")).order(), 8u);
  EXPECT_EQ(automorphism_group(make_named("Q8")).order(), 24u);
  EXPECT_EQ(automorphism_group(make_named("S3")).order(), 6u);
  EXPECT_EQ(automorphism_group(make_named("S4")).order(), 24u);
  EXPECT_EQ(automorphism_group(parse_group_spec("C3xC3")).order(), 48u);
  EXPECT_THROW(automorphism_group(cyclic_group(49)), Error);
}

TEST(Automorphisms, GroupStructure) {
  auto k = make_named("D4");
  auto aut = automorphism_group(k);
  EXPECT_TRUE(aut.is_closed());
  EXPECT_EQ(aut[0], identity_automorphism(k->order()));
  for (std::size_t i = 0; i < aut.order(); ++i) {
    EXPECT_TRUE(aut.contains(inverse(aut[i])));
    for (std::size_t j = 0; j < aut.order(); ++j)
      EXPECT_EQ(aut[aut.compose_index(i, j)], compose(aut[i], aut[j]));
  }
  auto inn = inner_automorphism_group(k);
  EXPECT_EQ(inn.order(), 4u);
  EXPECT_TRUE(is_subgroup_of(inn, aut));
}

TEST(Action, OrbitsAndStabilizers) {
  auto k = make_named("D4");
  auto aut = automorphism_group(k);
  const Element r = *k->find("r"), r2 = *k->find("r^2"), s = *k->find("s");
  EXPECT_EQ(aut.orbit(r), (std::vector<Element>{r, *k->find("r^3")}));
  EXPECT_EQ(aut.orbit(r2), std::vector<Element>{r2});
  EXPECT_EQ(aut.orbit_size(s), 4u);
  for (Element x = 0; x < k->order(); ++x) EXPECT_EQ(aut.orbit_size(x) * aut.stabilizer_order(x), aut.order());
  EXPECT_EQ(stabilizer(aut, s).order(), 2u);
  // cl_K(x) ⊆ orb(x)
  for (Element x = 0; x < k->order(); ++x) {
    auto cl = conjugacy_class(*k, x);
    for (Element y : cl) EXPECT_TRUE(aut.in_orbit(y, x));
  }
}

TEST(Action, CentralizerAndAutocommutators) {
  auto k = make_named("D4");
  auto aut = automorphism_group(k);
  auto h = subgroup_generated(k, {*k->find("r")});
  EXPECT_EQ(absolute_centralizer(h, aut).describe(), "{e,r^2}");
  EXPECT_EQ(autocommutator_set(h, aut), (std::vector<Element>{0, *k->find("r^2")}));
  EXPECT_EQ(autocommutator_subgroup(h, aut).order(), 2u);
  auto c3 = cyclic_group(3);
  EXPECT_EQ(absolute_centralizer(Subgroup::whole(c3), automorphism_group(c3)).order(), 1u);
  // L ⊆ Z(K) and L = ∩ C_H(α)
  for (const char* spec : {"Q8", "S3", "C2xC4", "A4"}) {
    auto g = parse_group_spec(spec);
    auto a = automorphism_group(g);
    auto l = absolute_centralizer(Subgroup::whole(g), a);
    EXPECT_TRUE(l.is_subset_of(center(g))) << spec;
    for (const auto& alpha : a.elements()) EXPECT_TRUE(l.is_subset_of(fixed_points(Subgroup::whole(g), alpha)));
  }
}

TEST(Action, TSetIsEmptyOrAStabilizerCoset) {
  auto k = make_named("Q8");
  auto aut = automorphism_group(k);
  for (Element x = 0; x < k->order(); ++x)
    for (Element g = 0; g < k->order(); ++g) {
      auto t = t_set(aut, x, g);
      if (aut.in_orbit(k->mul(x, g), x))
        EXPECT_EQ(t.size(), aut.stabilizer_order(x));
      else
        EXPECT_TRUE(t.empty());
    }
}

TEST(Action, MismatchedGroupsAreRejected) {
  auto k = make_named("C4");
  auto other = automorphism_group(make_named("C4"));
  try {
    absolute_centralizer(Subgroup::whole(k), other);
    FAIL() << "expected NotContained";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotContained);
  }
}
