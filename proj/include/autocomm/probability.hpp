#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autocomm/automorphism.hpp"
#include "autocomm/group.hpp"
#include "autocomm/rational.hpp"

namespace autocomm {

namespace detail {

inline Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline void require_element(const Group& k, Element g) {
  if (g >= k.order()) throw Error(Errc::NotContained, "element index " + std::to_string(g) + " is not in K");
}

}  // namespace detail

/// Number of pairs (x, α) ∈ H × Aut(K) with [x, α] = g, for every g ∈ K.
inline std::vector<std::uint64_t> autocommutator_counts(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  std::vector<std::uint64_t> counts(k.order(), 0);
  for (Element x : h.members())
    for (const auto& a : aut.elements()) ++counts[autocommutator(k, x, a)];
  return counts;
}

/// Pr_g(H, Aut(K)) by counting the full H × Aut(K) grid.
inline Rational pr_g_bruteforce(const Subgroup& h, const AutomorphismGroup& aut, Element g) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  detail::require_element(k, g);
  std::uint64_t hits = 0;
  for (Element x : h.members())
    for (const auto& a : aut.elements())
      if (autocommutator(k, x, a) == g) ++hits;
  return detail::ratio(hits, std::uint64_t{h.order()} * aut.order());
}

/// Pr_g(H, Aut(K)) through the orbit/stabilizer sums
///   (1/|H||Aut|) Σ_{x ∈ H, xg ∈ orb(x)} |C_Aut(x)|  =  (1/|H|) Σ_{x ∈ H, xg ∈ orb(x)} 1/|orb(x)|.
/// Both forms are evaluated and must agree.
inline Rational pr_g_formula(const Subgroup& h, const AutomorphismGroup& aut, Element g) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  detail::require_element(k, g);
  std::uint64_t stabilizer_sum = 0;
  Rational orbit_sum;
  for (Element x : h.members()) {
    if (!aut.in_orbit(k.mul(x, g), x)) continue;
    stabilizer_sum += aut.stabilizer_order(x);
    orbit_sum += Rational(1, static_cast<std::int64_t>(aut.orbit_size(x)));
  }
  const Rational by_stabilizer = detail::ratio(stabilizer_sum, std::uint64_t{h.order()} * aut.order());
  const Rational by_orbit = orbit_sum / Rational(static_cast<std::int64_t>(h.order()));
  ensure(by_stabilizer == by_orbit, "stabilizer-sum and orbit-sum forms of Pr_g agree");
  return by_stabilizer;
}

/// Pr(H, Aut(K)) = Pr_e in every closed form the theory offers.
struct AutocommutingForms {
  Rational value;                // Σ_x |C_Aut(x)| / (|H||Aut|)
  Rational fixed_point_form;     // Σ_α |C_H(α)| / (|H||Aut|)
  Rational orbit_count_form;     // |orb_K(H)| / |H|
  std::size_t orbit_count = 0;   // |orb_K(H)|
  bool orbit_count_valid = false;  // every orbit meeting H lies inside H
  bool orbit_count_agrees = false;
};

inline AutocommutingForms pr_autocommuting(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  AutocommutingForms f;
  std::uint64_t stabilizer_sum = 0;
  for (Element x : h.members()) stabilizer_sum += aut.stabilizer_order(x);
  const std::uint64_t grid = std::uint64_t{h.order()} * aut.order();
  f.value = detail::ratio(stabilizer_sum, grid);

  std::uint64_t fixed_sum = 0;
  for (const auto& a : aut.elements())
    for (Element x : h.members())
      if (autocommutator(k, x, a) == 0) ++fixed_sum;
  f.fixed_point_form = detail::ratio(fixed_sum, grid);
  ensure(f.value == f.fixed_point_form, "Σ_x |C_Aut(x)| and Σ_α |C_H(α)| forms agree");
  ensure(f.value == pr_g_formula(h, aut, 0), "Pr(H,Aut(K)) equals Pr_e");

  const auto orbits = orbit_partition(aut, h);
  f.orbit_count = orbits.size();
  f.orbit_count_form = detail::ratio(orbits.size(), h.order());
  f.orbit_count_valid = true;
  for (const auto& orb : orbits)
    for (Element y : orb)
      if (!h.contains(y)) f.orbit_count_valid = false;
  f.orbit_count_agrees = f.orbit_count_form == f.value;
  return f;
}

/// 1/|H| + 1/|Aut| - 1/(|H||Aut|), valid when every non-identity x ∈ H has a
/// trivial stabilizer.
inline Rational pr_special_trivial_stabilizers(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  for (Element x : h.members())
    if (x != 0 && aut.stabilizer_order(x) != 1)
      throw Error(Errc::HypothesisViolated,
                  "C_Aut(K)(" + h.parent().label(x) + ") has order " + std::to_string(aut.stabilizer_order(x)));
  const Rational hh(static_cast<std::int64_t>(h.order()));
  const Rational aa(static_cast<std::int64_t>(aut.order()));
  const Rational value = Rational(1) / hh + Rational(1) / aa - Rational(1) / (hh * aa);
  ensure(value == pr_autocommuting(h, aut).value, "trivial-stabilizer closed form matches Pr(H,Aut(K))");
  return value;
}

/// Pr_g(H, K): probability that x⁻¹y⁻¹xy = g for (x, y) ∈ H × K. At g = e it
/// is also evaluated as (1/|H|) Σ_x 1/|cl_K(x)|.
inline Rational pr_g_inner(const Subgroup& h, Element g) {
  const Group& k = h.parent();
  detail::require_element(k, g);
  std::uint64_t hits = 0;
  for (Element x : h.members())
    for (Element y = 0; y < k.order(); ++y)
      if (k.mul(k.mul(k.inv(x), k.inv(y)), k.mul(x, y)) == g) ++hits;
  const Rational value = detail::ratio(hits, std::uint64_t{h.order()} * k.order());
  if (g == 0) {
    Rational sum;
    for (Element x : h.members()) sum += Rational(1, static_cast<std::int64_t>(conjugacy_class(k, x).size()));
    ensure(sum / Rational(static_cast<std::int64_t>(h.order())) == value, "class-size form of Pr(H,K) agrees");
  }
  return value;
}

/// Pr_g(H, Aut(K)) for every g ∈ K in index order.
struct ProbabilityProfile {
  GroupPtr group;
  std::string subgroup;
  std::size_t aut_order = 0;
  std::vector<Rational> values;
  std::vector<Element> support;  // S(H, Aut(K))

  const Rational& operator[](Element g) const { return values[g]; }
};

inline ProbabilityProfile distribution(const Subgroup& h, const AutomorphismGroup& aut) {
  const auto counts = autocommutator_counts(h, aut);
  const std::uint64_t grid = std::uint64_t{h.order()} * aut.order();
  ProbabilityProfile p{h.parent_ptr(), h.describe(), aut.order(), {}, autocommutator_set(h, aut)};
  Rational total;
  for (Element g = 0; g < counts.size(); ++g) {
    p.values.push_back(detail::ratio(counts[g], grid));
    total += p.values.back();
    const bool in_support = std::binary_search(p.support.begin(), p.support.end(), g);
    ensure(in_support == !p.values.back().is_zero(), "Pr_g > 0 exactly on S(H,Aut(K))");
    ensure(p.values.back() <= Rational(1), "Pr_g <= 1");
  }
  ensure(total == Rational(1), "Σ_g Pr_g = 1");
  return p;
}

}  // namespace autocomm
