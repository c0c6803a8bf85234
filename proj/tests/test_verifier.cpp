#include <gtest/gtest.h>

#include "autocomm/named.hpp"
#include "autocomm/verifier.hpp"

using namespace autocomm;

namespace {

struct Fixture {
  GroupPtr k;
  AutomorphismGroup aut;
  explicit Fixture(const char* spec) : k(parse_group_spec(spec)), aut(automorphism_group(k)) {}
  PairAnalysis whole() const { return PairAnalysis(Subgroup::whole(k), aut); }
  PairAnalysis generated(std::initializer_list<const char*> labels) const {
    std::vector<Element> gens;
    for (const char* l : labels) gens.push_back(*k->find(l));
    return PairAnalysis(subgroup_generated(k, std::span<const Element>(gens)), aut);
  }
  Element at(const char* label) const { return *k->find(label); }
};

const BoundCheck& named(const std::vector<BoundCheck>& checks, std::string_view name) {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + std::string(name));
}

}  // namespace

TEST(Verifier, BasicLowerBoundsOnC3) {
  Fixture c3("C3");
  auto a = c3.whole();
  auto at_e = check_lower_bounds_basic(a, 0);
  EXPECT_EQ(at_e[0].rhs, Rational(2, 3));
  EXPECT_TRUE(at_e[0].equality);
  EXPECT_EQ(at_e[1].status, Status::NotApplicable);
  auto at_a = check_lower_bounds_basic(a, c3.at("a"));
  EXPECT_EQ(at_a[1].lhs, Rational(1, 6));
  EXPECT_EQ(at_a[1].rhs, Rational(1, 6));
  EXPECT_TRUE(at_a[1].passed());
}

TEST(Verifier, NonSupportElementIsDegenerate) {
  Fixture d4("D4");
  auto a = d4.generated({"r"});
  auto c = check_lower_bounds_basic(a, d4.at("s"));
  EXPECT_EQ(c[1].status, Status::Degenerate);
}

TEST(Verifier, PrGBelowPrWithBiconditional) {
  Fixture d4("D4");
  auto a = d4.generated({"r"});
  auto strict = check_pr_g_le_pr(a, d4.at("r^2"));
  EXPECT_EQ(strict.lhs, Rational(1, 4));
  EXPECT_FALSE(strict.equality);
  EXPECT_TRUE(strict.passed());
  EXPECT_TRUE(check_pr_g_le_pr(a, 0).equality);
}

TEST(Verifier, SmallestPrimeBound) {
  Fixture c3("C3"), d4("D4"), c5("C5"), c2("C2");
  auto c = check_smallest_prime_bound(c3.whole(), c3.at("a"));
  EXPECT_EQ(c[0].rhs, Rational(1, 3));
  EXPECT_EQ(c[1].rhs, Rational(1, 2));
  EXPECT_TRUE(c[0].passed() && c[1].passed());
  auto eq = check_smallest_prime_bound(d4.generated({"r"}), d4.at("r^2"));
  EXPECT_TRUE(eq[0].equality);
  auto five = check_smallest_prime_bound(c5.whole(), c5.at("a"));
  EXPECT_EQ(five[0].rhs, Rational(2, 5));
  EXPECT_TRUE(five[0].passed());
  try {
    check_smallest_prime_bound(c2.whole(), c2.at("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TrivialAutGroup);
  }
}

TEST(Verifier, SubgroupMonotonicity) {
  Fixture d4("D4"), c3("C3");
  auto small = d4.generated({"r^2"});
  auto large = d4.generated({"r"});
  auto c = check_subgroup_monotonicity(small, large, 0);
  EXPECT_EQ(c.lhs, Rational(1));
  EXPECT_EQ(c.rhs, Rational(3, 2));
  EXPECT_TRUE(c.passed());
  auto trivial = PairAnalysis(Subgroup::trivial(c3.k), c3.aut);
  auto t = check_subgroup_monotonicity(trivial, c3.whole(), c3.at("a"));
  EXPECT_EQ(t.rhs, Rational(1, 2));
  EXPECT_FALSE(t.equality);
  EXPECT_FALSE(*t.equality_condition_holds);
  EXPECT_TRUE(check_subgroup_monotonicity(large, large, 0).equality);
  try {
    check_subgroup_monotonicity(large, small, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAChain);
  }
}

TEST(Verifier, IndexAndInnerBounds) {
  Fixture d4("D4"), s3("S3");
  auto r = d4.generated({"r"});
  auto c = check_index_bound(r, 0);
  EXPECT_EQ(c.lhs, Rational(3, 4));
  EXPECT_TRUE(c.passed());
  EXPECT_FALSE(c.equality);
  EXPECT_TRUE(check_index_bound(d4.whole(), 0).equality);
  EXPECT_TRUE(check_inn_bound(d4.whole()).passed());
  EXPECT_TRUE(check_inn_bound(s3.whole()).equality);
}

TEST(Verifier, StructuralBounds) {
  Fixture c3("C3"), v("C2xC2"), q8("Q8");
  auto c = check_structural_bounds(c3.whole());
  EXPECT_EQ(named(c, "xh_lower_bound").rhs, Rational(2, 3));
  EXPECT_EQ(named(c, "xh_upper_bound").rhs, Rational(2, 3));
  EXPECT_EQ(named(check_structural_bounds(v.whole()), "cap_smallest_primes").rhs, Rational(3, 4));
  auto q = check_structural_bounds(q8.whole());
  EXPECT_EQ(named(q, "cap_nonabelian").rhs, Rational(5, 8));
  for (const auto& b : q) EXPECT_TRUE(b.passed()) << b.name;
  Fixture c2("C2");
  EXPECT_THROW(check_structural_bounds(c2.whole()), Error);
}

TEST(Verifier, SLowerBounds) {
  Fixture c3("C3"), d4("D4");
  auto c = check_s_lower_bound(c3.whole());
  EXPECT_EQ(named(c, "s_lower_bound").rhs, Rational(5, 9));
  EXPECT_TRUE(named(c, "s_lower_bound").passed());
  auto r = check_s_lower_bound(d4.generated({"r"}));
  const auto& s = named(r, "s_lower_bound");
  EXPECT_EQ(s.rhs, Rational(3, 4));
  EXPECT_TRUE(s.equality);
  EXPECT_TRUE(*s.equality_condition_holds);
}

TEST(Verifier, DominanceOfCommutatorBoundFailsOnC3) {
  // (1/3)(1 + 2/3) = 5/9 against the X_H lower bound 2/3.
  Fixture c3("C3");
  const auto& c = named(check_s_lower_bound(c3.whole()), "commutator_bound_dominates_xh_lower");
  EXPECT_EQ(c.lhs, Rational(5, 9));
  EXPECT_EQ(c.rhs, Rational(2, 3));
  EXPECT_FALSE(c.passed());
}

TEST(Verifier, QuotientCharacterizations) {
  Fixture d4("D4"), c3("C3"), c2("C2");
  auto r = characterize_quotients(d4.generated({"r"}));
  EXPECT_EQ(r[0].status, Status::Checked);
  EXPECT_TRUE(r[0].passed());
  EXPECT_EQ(r[0].lhs, Rational(3, 4));
  auto c = characterize_quotients(c3.whole());
  EXPECT_EQ(c[0].status, Status::Checked);
  EXPECT_EQ(c[0].lhs, Rational(2, 3));
  EXPECT_TRUE(*c[0].equality_condition_holds);
  for (const auto& x : characterize_quotients(c2.whole())) EXPECT_EQ(x.status, Status::NotApplicable);
}

TEST(Verifier, CatalogRuns) {
  auto empty = run_catalog({{}, 24});
  EXPECT_TRUE(empty.checks.empty());
  auto d4 = run_catalog({{"D4"}, 24});
  bool flagged = false;
  for (const auto& c : d4.checks)
    flagged = flagged || (c.name == "orbit_count_form" && c.instance.subgroup == "{e,s}" && c.status == Status::Flagged);
  EXPECT_TRUE(flagged);
  EXPECT_THROW(run_catalog({{"C5xC5"}, 24}), Error);
  EXPECT_THROW(default_catalog(49), Error);
  EXPECT_GE(default_catalog().groups.size(), 12u);
}

TEST(Verifier, ThreadedRunIsIdentical) {
  CatalogSpec spec{{"C6", "S3", "Q8", "C2xC4"}, 24};
  auto one = run_catalog(spec, 1);
  auto four = run_catalog(spec, 4);
  ASSERT_EQ(one.checks.size(), four.checks.size());
  for (std::size_t i = 0; i < one.checks.size(); ++i) {
    EXPECT_EQ(one.checks[i].name, four.checks[i].name);
    EXPECT_EQ(one.checks[i].lhs, four.checks[i].lhs);
    EXPECT_EQ(one.checks[i].instance.subgroup, four.checks[i].instance.subgroup);
  }
}
