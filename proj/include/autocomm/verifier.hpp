#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "autocomm/automorphism.hpp"
#include "autocomm/group.hpp"
#include "autocomm/isomorphism.hpp"
#include "autocomm/named.hpp"
#include "autocomm/probability.hpp"
#include "autocomm/rational.hpp"

namespace autocomm {

inline constexpr const char* kReportVersion = "autocomm-report/1";

enum class Relation { LessEqual, GreaterEqual, Less, Equal };

/// How the observed equality relates to the recorded condition.
enum class Link {
  None,
  Biconditional,             // equality ⇔ condition
  EqualityImpliesCondition,  // equality ⇒ condition
  ConditionImpliesEquality,  // condition ⇒ equality
};

enum class Status {
  Checked,
  NotApplicable,  // hypotheses of the statement are not met
  Degenerate,     // excluded by the standing assumptions H ≠ L, g ∈ S
  Flagged,        // known discrepancy surfaced for review, not a failure
};

inline std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Less: return "<";
    case Relation::Equal: return "==";
  }
  return "?";
}

inline std::string_view link_name(Link l) {
  switch (l) {
    case Link::None: return "none";
    case Link::Biconditional: return "iff";
    case Link::EqualityImpliesCondition: return "equality_implies_condition";
    case Link::ConditionImpliesEquality: return "condition_implies_equality";
  }
  return "?";
}

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::Checked: return "checked";
    case Status::NotApplicable: return "not_applicable";
    case Status::Degenerate: return "degenerate";
    case Status::Flagged: return "flagged";
  }
  return "?";
}

struct Instance {
  std::string group;
  std::string subgroup;
  std::string element;  // label of g, empty when g plays no role
};

struct BoundCheck {
  std::string name;
  Instance instance;
  Relation relation = Relation::LessEqual;
  Rational lhs;
  Rational rhs;
  bool holds = true;
  bool equality = false;
  std::optional<bool> equality_condition_holds;
  Link link = Link::None;
  Status status = Status::Checked;
  std::string note;

  bool link_holds() const {
    if (!equality_condition_holds || link == Link::None) return true;
    const bool c = *equality_condition_holds;
    switch (link) {
      case Link::Biconditional: return equality == c;
      case Link::EqualityImpliesCondition: return !equality || c;
      case Link::ConditionImpliesEquality: return !c || equality;
      case Link::None: break;
    }
    return true;
  }

  /// Only checked entries can fail.
  bool passed() const { return status != Status::Checked || (holds && link_holds()); }
};

inline bool evaluate(Relation r, const Rational& lhs, const Rational& rhs) {
  switch (r) {
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Less: return lhs < rhs;
    case Relation::Equal: return lhs == rhs;
  }
  return false;
}

inline BoundCheck make_check(std::string name, Instance instance, Relation relation, Rational lhs, Rational rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.instance = std::move(instance);
  c.relation = relation;
  c.holds = evaluate(relation, lhs, rhs);
  c.equality = lhs == rhs;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

inline BoundCheck with_condition(BoundCheck c, Link link, bool condition) {
  c.link = link;
  c.equality_condition_holds = condition;
  return c;
}

inline BoundCheck marked(BoundCheck c, Status status, std::string note) {
  c.status = status;
  c.note = std::move(note);
  return c;
}

inline std::size_t smallest_prime_factor(std::size_t n) {
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

/// Everything the bound checks need about one (H, K) pair, computed once.
class PairAnalysis {
 public:
  PairAnalysis(const Subgroup& h, const AutomorphismGroup& aut)
      : h_(h),
        aut_(&aut),
        l_(absolute_centralizer(h, aut)),
        aut_centralizer_order_(aut_centralizer_of_subgroup(aut, h).order()),
        profile_(distribution(h, aut)),
        commutator_subgroup_(autocommutator_subgroup(h, aut)) {
    for (Element x : h.members())
      if (aut.stabilizer_order(x) == 1) ++x_h_;
    // X_H ∩ L is empty unless Aut(K) is trivial.
    if (aut.order() > 1) ensure(std::none_of(h.members().begin(), h.members().end(),
                                             [&](Element x) { return aut.stabilizer_order(x) == 1 && l_.contains(x); }),
                                "X_H ∩ L(H,Aut(K)) = ∅");
  }

  const Subgroup& h() const { return h_; }
  const AutomorphismGroup& aut() const { return *aut_; }
  const Group& k() const { return h_.parent(); }
  const Subgroup& l() const { return l_; }
  const std::vector<Element>& s() const { return profile_.support; }
  const Subgroup& commutator_subgroup() const { return commutator_subgroup_; }
  const ProbabilityProfile& profile() const { return profile_; }
  const Rational& pr(Element g) const { return profile_.values[g]; }
  const Rational& pr() const { return profile_.values[0]; }
  std::size_t aut_centralizer_order() const { return aut_centralizer_order_; }
  std::size_t x_h_size() const { return x_h_; }

  bool degenerate() const { return l_.order() == h_.order(); }
  bool in_support(Element g) const { return std::binary_search(s().begin(), s().end(), g); }

  std::int64_t h_order() const { return static_cast<std::int64_t>(h_.order()); }
  std::int64_t l_order() const { return static_cast<std::int64_t>(l_.order()); }
  std::int64_t aut_order() const { return static_cast<std::int64_t>(aut_->order()); }
  std::int64_t index_h_over_l() const { return h_order() / l_order(); }
  /// Smallest prime dividing |Aut(K)|; 0 when Aut(K) is trivial.
  std::int64_t p() const { return aut_order() > 1 ? static_cast<std::int64_t>(smallest_prime_factor(aut_->order())) : 0; }
  /// Smallest prime dividing |H|; 0 when H is trivial.
  std::int64_t q() const { return h_order() > 1 ? static_cast<std::int64_t>(smallest_prime_factor(h_.order())) : 0; }

  Instance instance(std::optional<Element> g = std::nullopt) const {
    return {k().name(), h_.describe(), g ? k().label(*g) : std::string()};
  }

  /// orb(x) = x·T as sets, for a sorted subset T of K.
  bool orbit_is_translate(Element x, const std::vector<Element>& t) const {
    std::vector<Element> translate;
    for (Element s : t) translate.push_back(k().mul(x, s));
    std::sort(translate.begin(), translate.end());
    return translate == aut_->orbit(x);
  }

 private:
  Subgroup h_;
  const AutomorphismGroup* aut_;
  Subgroup l_;
  std::size_t aut_centralizer_order_;
  ProbabilityProfile profile_;
  Subgroup commutator_subgroup_;
  std::size_t x_h_ = 0;
};

/// (1/n)(1 + (n - 1)/|H:L|)
inline Rational s_type_bound(std::int64_t n, std::int64_t index) {
  return Rational(1, n) * (Rational(1) + Rational(n - 1, index));
}

/// Lower bound in terms of X_H and the smallest prime p dividing |Aut(K)|.
inline Rational xh_lower_bound(const PairAnalysis& a) {
  const std::int64_t h = a.h_order(), l = a.l_order(), x = static_cast<std::int64_t>(a.x_h_size());
  return Rational(l, h) + Rational(a.p() * (h - x - l) + x, h * a.aut_order());
}

/// Lower bounds at g = e and at g ≠ e. Exactly one of the pair applies to a
/// given g; the other is returned as not applicable. At g ≠ e the bound needs
/// g ∈ S(H, Aut(K)).
inline std::vector<BoundCheck> check_lower_bounds_basic(const PairAnalysis& a, Element g) {
  const std::int64_t h = a.h_order(), l = a.l_order(), aut = a.aut_order();
  const auto c = static_cast<std::int64_t>(a.aut_centralizer_order());
  BoundCheck at_identity = make_check("basic_lower_bound_identity", a.instance(g), Relation::GreaterEqual, a.pr(g),
                                      Rational(l, h) + Rational(c * (h - l), h * aut));
  BoundCheck off_identity = make_check("basic_lower_bound_nonidentity", a.instance(g), Relation::GreaterEqual,
                                       a.pr(g), Rational(l * c, h * aut));
  if (g == 0) {
    off_identity = marked(off_identity, Status::NotApplicable, "g = e");
  } else {
    at_identity = marked(at_identity, Status::NotApplicable, "g != e");
    if (!a.in_support(g)) off_identity = marked(off_identity, Status::Degenerate, "g not in S(H,Aut(K))");
  }
  return {at_identity, off_identity};
}

/// Pr_g ≤ Pr_e with equality iff g = e.
inline BoundCheck check_pr_g_le_pr(const PairAnalysis& a, Element g) {
  return with_condition(make_check("pr_g_le_pr", a.instance(g), Relation::LessEqual, a.pr(g), a.pr()),
                        Link::Biconditional, g == 0);
}

/// For g ≠ e: Pr_g ≤ (|H| - |L|)/(p|H|) < 1/p.
inline std::vector<BoundCheck> check_smallest_prime_bound(const PairAnalysis& a, Element g) {
  if (g == 0) throw Error(Errc::DegenerateInstance, "smallest-prime bound needs g != e");
  if (a.aut_order() == 1) throw Error(Errc::TrivialAutGroup, "no prime divides |Aut(K)| = 1");
  const std::int64_t h = a.h_order(), l = a.l_order(), p = a.p();
  const Rational middle(h - l, p * h);
  return {make_check("smallest_prime_bound", a.instance(g), Relation::LessEqual, a.pr(g), middle),
          make_check("smallest_prime_strict", a.instance(g), Relation::Less, middle, Rational(1, p))};
}

/// Pr_g(H1) ≤ |H2:H1| Pr_g(H2), equality iff xg ∉ orb(x) for all x ∈ H2 \ H1.
inline BoundCheck check_subgroup_monotonicity(const PairAnalysis& small, const PairAnalysis& large, Element g) {
  if (&small.aut() != &large.aut() || !small.h().is_subset_of(large.h()))
    throw Error(Errc::NotAChain, small.h().describe() + " is not contained in " + large.h().describe());
  const std::int64_t index = large.h_order() / small.h_order();
  bool condition = true;
  for (Element x : large.h().members())
    if (!small.h().contains(x) && large.aut().in_orbit(large.k().mul(x, g), x)) condition = false;
  Instance inst = small.instance(g);
  inst.subgroup += " <= " + large.h().describe();
  return with_condition(make_check("subgroup_monotonicity", inst, Relation::LessEqual, small.pr(g),
                                   Rational(index) * large.pr(g)),
                        Link::Biconditional, condition);
}

/// Pr(K, Aut(K)) from the stabilizer sum.
inline Rational pr_whole(const AutomorphismGroup& aut) {
  std::uint64_t sum = 0;
  for (Element x = 0; x < aut.group().order(); ++x) sum += aut.stabilizer_order(x);
  return Rational(BigInt(sum), BigInt(std::uint64_t{aut.group().order()} * aut.order()));
}

/// Pr_g(H) ≤ |K:H| Pr(K), equality iff g = e and H = K.
inline BoundCheck check_index_bound(const PairAnalysis& a, Element g) {
  const auto index = static_cast<std::int64_t>(a.k().order() / a.h().order());
  return with_condition(make_check("index_bound", a.instance(g), Relation::LessEqual, a.pr(g),
                                   Rational(index) * pr_whole(a.aut())),
                        Link::Biconditional, g == 0 && a.h().is_whole());
}

/// Pr_e(H, Aut(K)) ≤ Pr_e(H, K).
inline BoundCheck check_inn_bound(const PairAnalysis& a) {
  return make_check("inner_bound", a.instance(0), Relation::LessEqual, a.pr(), pr_g_inner(a.h(), 0));
}

/// Two-sided X_H bounds and the smallest-prime caps. Requires H ≠ L.
inline std::vector<BoundCheck> check_structural_bounds(const PairAnalysis& a) {
  if (a.degenerate()) throw Error(Errc::DegenerateInstance, "H = L(H,Aut(K))");
  const std::int64_t h = a.h_order(), l = a.l_order(), aut = a.aut_order(), p = a.p(), q = a.q();
  const auto x = static_cast<std::int64_t>(a.x_h_size());
  const Instance inst = a.instance(0);
  std::vector<BoundCheck> out;
  out.push_back(make_check("xh_lower_bound", inst, Relation::GreaterEqual, a.pr(), xh_lower_bound(a)));
  out.push_back(make_check("xh_upper_bound", inst, Relation::LessEqual, a.pr(),
                           Rational((p - 1) * l + h, p * h) - Rational(x * (aut - p), p * h * aut)));
  out.push_back(make_check("cap_smallest_primes", inst, Relation::LessEqual, a.pr(), Rational(p + q - 1, p * q)));
  if (p == q) {
    const Rational cap(2 * p - 1, p * p);
    out.push_back(make_check("cap_smallest_primes_equal", inst, Relation::LessEqual, a.pr(), cap));
    out.push_back(make_check("cap_three_quarters", inst, Relation::LessEqual, cap, Rational(3, 4)));
  }
  if (!a.h().is_abelian()) {
    out.push_back(
        make_check("cap_nonabelian", inst, Relation::LessEqual, a.pr(), Rational(q * q + p - 1, p * q * q)));
    if (p == q) {
      const Rational cap(p * p + p - 1, p * p * p);
      out.push_back(make_check("cap_nonabelian_equal", inst, Relation::LessEqual, a.pr(), cap));
      out.push_back(make_check("cap_five_eighths", inst, Relation::LessEqual, cap, Rational(5, 8)));
    }
  }
  return out;
}

/// Lower bounds through |S(H,Aut(K))| and |[H,Aut(K)]|, their ordering, and
/// the dominance of the [H,Aut(K)] bound over the p-based lower bounds.
inline std::vector<BoundCheck> check_s_lower_bound(const PairAnalysis& a) {
  const std::int64_t index = a.index_h_over_l();
  const auto s = static_cast<std::int64_t>(a.s().size());
  const auto c = static_cast<std::int64_t>(a.commutator_subgroup().order());
  const Rational s_bound = s_type_bound(s, index);
  const Rational c_bound = s_type_bound(c, index);
  const Instance inst = a.instance(0);

  bool orbits_match_s = true, orbits_match_c = true;
  for (Element x : a.h().members()) {
    if (a.l().contains(x)) continue;
    orbits_match_s = orbits_match_s && a.orbit_is_translate(x, a.s());
    orbits_match_c = orbits_match_c && a.orbit_is_translate(x, a.commutator_subgroup().members());
  }

  std::vector<BoundCheck> out;
  out.push_back(with_condition(make_check("s_lower_bound", inst, Relation::GreaterEqual, a.pr(), s_bound),
                               Link::Biconditional, orbits_match_s));
  BoundCheck commutator = make_check("commutator_lower_bound", inst, Relation::GreaterEqual, a.pr(), c_bound);
  BoundCheck ordering = make_check("s_bound_dominates_commutator_bound", inst, Relation::GreaterEqual, s_bound, c_bound);
  if (!a.degenerate()) {
    commutator = with_condition(commutator, Link::Biconditional, s == c && orbits_match_c);
    ordering = with_condition(ordering, Link::Biconditional, s == c);
  }
  out.push_back(commutator);
  out.push_back(ordering);

  if (!a.degenerate() && a.aut_order() > 1) {
    out.push_back(make_check("commutator_bound_dominates_xh_lower", inst, Relation::GreaterEqual, c_bound,
                             xh_lower_bound(a)));
    const std::int64_t h = a.h_order(), l = a.l_order();
    out.push_back(make_check("commutator_bound_dominates_p_lower", inst, Relation::GreaterEqual, c_bound,
                             Rational(l, h) + Rational(a.p() * (h - l), h * a.aut_order())));
  }
  return out;
}

/// Quotient characterizations at the two caps and their partial converses.
/// Statements whose hypotheses fail are returned as not applicable.
inline std::vector<BoundCheck> characterize_quotients(const PairAnalysis& a) {
  const Instance inst = a.instance(0);
  const std::int64_t p = a.p(), q = a.q();
  const std::vector<std::string> names = {"quotient_cyclic_forward",     "quotient_cyclic_forward_3_4",
                                          "quotient_elementary_forward", "quotient_elementary_forward_5_8",
                                          "quotient_cyclic_converse",    "quotient_elementary_converse"};
  if (p == 0 || q == 0) {
    std::vector<BoundCheck> out;
    for (const auto& n : names)
      out.push_back(marked(make_check(n, inst, Relation::Equal, a.pr(), a.pr()), Status::NotApplicable,
                           p == 0 ? "Aut(K) is trivial" : "H is trivial"));
    return out;
  }

  const Quotient quotient = quotient_group(a.h(), a.l());
  const StructureDescriptor shape = classify(*quotient.group);
  const auto uq = static_cast<std::size_t>(q);
  const bool cyclic_q = shape.is_cyclic_of_order(uq) && find_isomorphism(quotient.group, cyclic_group(uq)).has_value();
  const bool square_q = shape.is_elementary_square(uq) &&
                        find_isomorphism(quotient.group, elementary_abelian_group(uq, 2)).has_value();
  const bool divides = (static_cast<std::int64_t>(a.h().order()) * a.aut_order()) % (p * q) == 0;
  const bool even = a.h_order() % 2 == 0 && a.aut_order() % 2 == 0;
  const bool nonabelian = !a.h().is_abelian();
  const Rational cyclic_value(p + q - 1, p * q);
  const Rational square_value(q * q + p - 1, p * q * q);

  auto forward = [&](const std::string& name, bool applies, const Rational& target, bool consequence,
                     const std::string& why_not) {
    BoundCheck c = make_check(name, inst, Relation::Equal, a.pr(), target);
    if (!applies || !c.equality) return marked(c, Status::NotApplicable, applies ? "Pr differs from the cap" : why_not);
    c = with_condition(c, Link::EqualityImpliesCondition, consequence);
    c.note = "H/L = " + (shape.shape.empty() ? std::string("order ") + std::to_string(shape.order) : shape.shape);
    return c;
  };

  bool index_p = !a.degenerate();
  for (Element x : a.h().members())
    if (!a.l().contains(x) && a.aut().order() / a.aut().stabilizer_order(x) != static_cast<std::size_t>(p))
      index_p = false;
  auto converse = [&](const std::string& name, bool shape_holds, const Rational& target) {
    BoundCheck c = make_check(name, inst, Relation::Equal, a.pr(), target);
    if (!index_p) return marked(c, Status::NotApplicable, "some x outside L has |Aut : C_Aut(x)| != p");
    if (!shape_holds) return marked(c, Status::NotApplicable, "quotient shape does not match");
    return with_condition(c, Link::ConditionImpliesEquality, true);
  };

  return {
      forward(names[0], true, cyclic_value, divides && cyclic_q, ""),
      forward(names[1], even, Rational(3, 4), cyclic_q && q == 2, "|H| or |Aut(K)| is odd"),
      forward(names[2], nonabelian, square_value, divides && square_q, "H is abelian"),
      forward(names[3], nonabelian && even, Rational(5, 8), square_q && q == 2, "H is abelian or an order is odd"),
      converse(names[4], cyclic_q, cyclic_value),
      converse(names[5], square_q, square_value),
  };
}

// ---------------------------------------------------------------------------
// Catalog runs

struct CatalogSpec {
  std::vector<std::string> groups;
  std::size_t max_order = 24;
};

inline constexpr std::size_t kDefaultMaxOrder = 24;
inline constexpr std::size_t kHardMaxOrder = 48;

/// Default catalog; entries beyond order 24 join only when `max_order`
/// is raised (hard cap 48).
inline CatalogSpec default_catalog(std::size_t max_order = kDefaultMaxOrder) {
  if (max_order > kHardMaxOrder)
    throw Error(Errc::SizeLimitExceeded, "--max-order is capped at " + std::to_string(kHardMaxOrder));
  std::vector<std::string> base;
  for (int n = 1; n <= 16; ++n) base.push_back("C" + std::to_string(n));
  for (const char* s : {"D4", "D6", "Q8", "S3", "S4", "A4", "C2xC2", "C2xC4", "C3xC3", "C2xC2xC2", "C3xC4"})
    base.emplace_back(s);
  const std::vector<std::string> extended = {"D8", "Q8xC2", "C2xD4", "C4xC4", "S3xC3", "D12", "A4xC2",
                                             "Q8xC3", "C5xC5", "S3xC5", "S4xC2"};
  CatalogSpec spec;
  spec.max_order = max_order;
  auto order_of = [](const std::string& s) { return parse_group_spec(s)->order(); };
  for (const auto& s : base)
    if (order_of(s) <= max_order) spec.groups.push_back(s);
  if (max_order > kDefaultMaxOrder)
    for (const auto& s : extended)
      if (order_of(s) <= max_order) spec.groups.push_back(s);
  return spec;
}

struct ReportSummary {
  std::size_t total = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t counterexamples = 0;
  std::size_t not_applicable = 0;
  std::size_t degenerate = 0;
  std::size_t flagged = 0;
};

struct VerificationReport {
  std::string version = kReportVersion;
  CatalogSpec catalog;
  std::vector<BoundCheck> checks;
  std::vector<BoundCheck> counterexamples;
  ReportSummary summary;

  bool ok() const { return counterexamples.empty(); }
};

inline void summarize(VerificationReport& report) {
  report.summary = {};
  report.counterexamples.clear();
  for (const auto& c : report.checks) {
    ++report.summary.total;
    switch (c.status) {
      case Status::Checked: ++report.summary.checked; break;
      case Status::NotApplicable: ++report.summary.not_applicable; break;
      case Status::Degenerate: ++report.summary.degenerate; break;
      case Status::Flagged: ++report.summary.flagged; break;
    }
    if (c.status == Status::Checked) {
      if (c.passed()) {
        ++report.summary.passed;
      } else {
        ++report.summary.counterexamples;
        report.counterexamples.push_back(c);
      }
    }
  }
}

/// Identities that hold for every pair, degenerate or not.
inline void append_formula_checks(const PairAnalysis& a, std::vector<BoundCheck>& out) {
  const Group& k = a.k();
  Rational total;
  for (Element g = 0; g < k.order(); ++g) {
    out.push_back(make_check("formula_equivalence", a.instance(g), Relation::Equal,
                             pr_g_bruteforce(a.h(), a.aut(), g), pr_g_formula(a.h(), a.aut(), g)));
    out.push_back(make_check("inverse_symmetry", a.instance(g), Relation::Equal, a.pr(g), a.pr(k.inv(g))));
    total += a.pr(g);
  }
  out.push_back(make_check("normalization", a.instance(), Relation::Equal, total, Rational(1)));

  const AutocommutingForms forms = pr_autocommuting(a.h(), a.aut());
  out.push_back(make_check("fixed_point_form", a.instance(0), Relation::Equal, forms.value, forms.fixed_point_form));
  BoundCheck orbit_count =
      make_check("orbit_count_form", a.instance(0), Relation::Equal, forms.value, forms.orbit_count_form);
  if (!forms.orbit_count_valid)
    orbit_count = marked(orbit_count, Status::Flagged,
                         forms.orbit_count_agrees ? "an orbit of an H-element leaves H (values coincide)"
                                                  : "an orbit of an H-element leaves H");
  out.push_back(orbit_count);
  out.push_back(with_condition(make_check("identity_certainty", a.instance(0), Relation::LessEqual, a.pr(),
                                          Rational(1)),
                               Link::Biconditional, a.degenerate()));
}

/// Bound and characterization checks for one non-degenerate pair.
inline void append_bound_checks(const PairAnalysis& a, std::vector<BoundCheck>& out) {
  for (Element g : a.s()) {
    for (auto& c : check_lower_bounds_basic(a, g))
      if (c.status != Status::NotApplicable) out.push_back(std::move(c));
    out.push_back(check_pr_g_le_pr(a, g));
    if (g != 0)
      for (auto& c : check_smallest_prime_bound(a, g)) out.push_back(std::move(c));
    out.push_back(check_index_bound(a, g));
  }
  out.push_back(check_inn_bound(a));
  for (auto& c : check_structural_bounds(a)) out.push_back(std::move(c));
  for (auto& c : check_s_lower_bound(a)) out.push_back(std::move(c));
  for (auto& c : characterize_quotients(a)) out.push_back(std::move(c));
}

/// Pr_{(g1,g2)}(H1 × H2) = Pr_{g1}(H1) Pr_{g2}(H2) for coprime |K1|, |K2|,
/// with Aut(K1 × K2) computed directly.
inline std::vector<BoundCheck> check_coprime_product(const GroupPtr& k1, const GroupPtr& k2) {
  std::vector<BoundCheck> out;
  if (std::gcd(k1->order(), k2->order()) != 1) return out;
  const ProductResult product = direct_product(k1, k2);
  const GroupPtr& k = product.group;
  const AutomorphismGroup aut = automorphism_group(k);
  const AutomorphismGroup aut1 = automorphism_group(k1);
  const AutomorphismGroup aut2 = automorphism_group(k2);
  const Instance order_inst{k->name(), "", ""};
  out.push_back(make_check("coprime_product_aut_order", order_inst, Relation::Equal,
                           Rational(static_cast<std::int64_t>(aut.order())),
                           Rational(static_cast<std::int64_t>(aut1.order() * aut2.order()))));
  const std::size_t n2 = k2->order();
  for (const Subgroup& h1 : all_subgroups(k1))
    for (const Subgroup& h2 : all_subgroups(k2)) {
      std::vector<Element> members;
      for (Element x : h1.members())
        for (Element y : h2.members()) members.push_back(static_cast<Element>(x * n2 + y));
      const Subgroup h(k, members);
      const ProbabilityProfile whole = distribution(h, aut);
      const ProbabilityProfile left = distribution(h1, aut1);
      const ProbabilityProfile right = distribution(h2, aut2);
      for (Element g = 0; g < k->order(); ++g)
        out.push_back(make_check("coprime_product", {k->name(), h.describe(), k->label(g)}, Relation::Equal,
                                 whole[g], left[g / n2] * right[g % n2]));
    }
  return out;
}

/// Every check on one catalog group, in deterministic order.
inline std::vector<BoundCheck> verify_group(const std::string& spec) {
  const GroupPtr k = parse_group_spec(spec);
  const AutomorphismGroup aut = automorphism_group(k);
  const std::vector<Subgroup> subgroups = all_subgroups(k);
  std::vector<PairAnalysis> analyses;
  analyses.reserve(subgroups.size());
  for (const auto& h : subgroups) analyses.emplace_back(h, aut);

  std::vector<BoundCheck> out;
  for (const auto& a : analyses) {
    append_formula_checks(a, out);
    if (a.degenerate()) {
      out.push_back(marked(make_check("standing_assumption", a.instance(), Relation::Equal, a.pr(), Rational(1)),
                           Status::Degenerate, "H = L(H,Aut(K))"));
      continue;
    }
    append_bound_checks(a, out);
  }
  for (const auto& small : analyses)
    for (const auto& large : analyses) {
      if (large.degenerate() || !small.h().is_subset_of(large.h())) continue;
      for (Element g : large.s()) out.push_back(check_subgroup_monotonicity(small, large, g));
    }

  std::vector<std::string> factors;
  for (std::size_t start = 0, i = 0; i <= spec.size(); ++i)
    if (i == spec.size() || spec[i] == 'x') {
      factors.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  if (factors.size() == 2)
    for (auto& c : check_coprime_product(make_named(factors[0]), make_named(factors[1]))) out.push_back(std::move(c));
  return out;
}

/// Runs every check over the catalog. Groups are processed by up to
/// `threads` workers; the report order is the catalog order regardless.
inline VerificationReport run_catalog(const CatalogSpec& catalog, unsigned threads = 1) {
  if (catalog.max_order > kHardMaxOrder)
    throw Error(Errc::SizeLimitExceeded, "catalog order cap is " + std::to_string(kHardMaxOrder));
  for (const auto& spec : catalog.groups)
    if (parse_group_spec(spec)->order() > catalog.max_order)
      throw Error(Errc::SizeLimitExceeded, spec + " exceeds the catalog order cap " + std::to_string(catalog.max_order));

  std::vector<std::vector<BoundCheck>> per_group(catalog.groups.size());
  std::vector<std::exception_ptr> errors(catalog.groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < catalog.groups.size(); i = next++) {
      try {
        per_group[i] = verify_group(catalog.groups[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(catalog.groups.size())));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  VerificationReport report;
  report.catalog = catalog;
  for (auto& group_checks : per_group)
    for (auto& c : group_checks) report.checks.push_back(std::move(c));
  summarize(report);
  return report;
}

}  // namespace autocomm
