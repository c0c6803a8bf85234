#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "autocomm/automorphism.hpp"
#include "autocomm/group.hpp"
#include "autocomm/isomorphism.hpp"
#include "autocomm/probability.hpp"
#include "autocomm/verifier.hpp"

namespace autocomm {

/// Label of an automorphism: its images on the minimal generating set of K.
inline std::string automorphism_label(const Group& k, const std::vector<Element>& gens, const Automorphism& a) {
  bool identity = true;
  for (Element x : gens) identity = identity && a(x) == x;
  if (identity) return "e";
  std::string out = "[";
  for (std::size_t i = 0; i < gens.size(); ++i)
    out += (i ? "," : "") + k.label(gens[i]) + "->" + k.label(a(gens[i]));
  return out + "]";
}

/// Aut(K) as a group in its own right; index i is aut[i].
inline GroupPtr aut_group_as_abstract_group(const AutomorphismGroup& aut) {
  const Group& k = aut.group();
  const std::vector<Element> gens = minimal_generating_set(k);
  const std::size_t m = aut.order();
  std::vector<Element> flat(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(automorphism_label(k, gens, aut[i]));
    for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = static_cast<Element>(aut.compose_index(i, j));
  }
  return from_flat_table(m, std::move(flat), std::move(labels), "Aut(" + k.name() + ")");
}

/// a(xL, α) = [x, α] on H/L(H,Aut(K)) × Aut(K).
struct CosetAutocommutatorMap {
  Quotient quotient;
  std::size_t aut_order = 0;
  std::vector<Element> values;  // coset * aut_order + α

  Element operator()(Element coset, std::size_t alpha) const { return values[coset * aut_order + alpha]; }
};

inline CosetAutocommutatorMap coset_autocommutator_map(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  CosetAutocommutatorMap a;
  a.quotient = quotient_group(h, absolute_centralizer(h, aut));
  a.aut_order = aut.order();
  constexpr Element kUnset = std::numeric_limits<Element>::max();
  a.values.assign(a.quotient.group->order() * a.aut_order, kUnset);
  for (Element x : h.members()) {
    const Element coset = a.quotient.project(x);
    for (std::size_t i = 0; i < aut.order(); ++i) {
      const Element value = autocommutator(k, x, aut[i]);
      Element& slot = a.values[coset * a.aut_order + i];
      if (slot != kUnset && slot != value)
        throw Error(Errc::IllDefinedMap, "[" + k.label(x) + ", α" + std::to_string(i) + "] depends on the coset representative");
      slot = value;
    }
  }
  return a;
}

/// Everything about one pair (H, K) that the search touches.
class PairSide {
 public:
  PairSide(const Subgroup& h, const AutomorphismGroup& aut)
      : h_(h),
        aut_(&aut),
        map_(coset_autocommutator_map(h, aut)),
        aut_abstract_(aut_group_as_abstract_group(aut)),
        commutator_(subgroup_as_group(autocommutator_subgroup(h, aut))),
        s_(autocommutator_set(h, aut)),
        l_order_(absolute_centralizer(h, aut).order()) {}

  const Subgroup& h() const { return h_; }
  const AutomorphismGroup& aut() const { return *aut_; }
  const CosetAutocommutatorMap& map() const { return map_; }
  const GroupPtr& quotient() const { return map_.quotient.group; }
  const GroupPtr& aut_abstract() const { return aut_abstract_; }
  const EmbeddedGroup& commutator() const { return commutator_; }
  const std::vector<Element>& s() const { return s_; }
  std::size_t l_order() const { return l_order_; }

  std::string describe() const { return "(" + h_.describe() + ", " + h_.parent().name() + ")"; }

 private:
  Subgroup h_;
  const AutomorphismGroup* aut_;
  CosetAutocommutatorMap map_;
  GroupPtr aut_abstract_;
  EmbeddedGroup commutator_;
  std::vector<Element> s_;
  std::size_t l_order_;
};

struct AutoisoclinismWitness {
  Isomorphism psi;    // H1/L1 -> H2/L2
  Isomorphism gamma;  // Aut(K1) -> Aut(K2), abstract
  Isomorphism beta;   // [H1,Aut(K1)] -> [H2,Aut(K2)], as embedded groups
  EmbeddedGroup domain;
  EmbeddedGroup codomain;

  /// β on elements of K1 lying in [H1,Aut(K1)].
  Element beta_of(Element g) const { return codomain.to_parent(beta(domain.from_parent(g))); }
};

/// Diagram check over every coset and every automorphism, plus bijectivity
/// and the homomorphism equation of all three maps.
inline bool verify_witness(const AutoisoclinismWitness& w, const PairSide& one, const PairSide& two) {
  if (!w.psi.verify() || !w.gamma.verify() || !w.beta.verify()) return false;
  const std::size_t cosets = one.quotient()->order();
  for (Element c = 0; c < cosets; ++c)
    for (std::size_t a = 0; a < one.aut().order(); ++a)
      if (w.beta_of(one.map()(c, a)) != two.map()(w.psi(c), w.gamma(static_cast<Element>(a)))) return false;
  return true;
}

inline AutoisoclinismWitness invert(const AutoisoclinismWitness& w) {
  return {w.psi.inverse(), w.gamma.inverse(), w.beta.inverse(), w.codomain, w.domain};
}

struct SearchBudget {
  std::size_t max_quotient_order = 16;
  std::size_t max_aut_order = 48;
};

enum class SearchStatus { Found, None, BudgetExceeded };

inline std::string_view search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

struct AutoisoclinismResult {
  SearchStatus status = SearchStatus::None;
  std::optional<AutoisoclinismWitness> witness;
  std::string note;
};

namespace detail {

/// β forced by the diagram on S(H1,Aut(K1)) and closed multiplicatively.
/// Returns the image of every element of [H1,Aut(K1)] or nothing.
inline std::optional<std::vector<Element>> force_beta(const PairSide& one, const PairSide& two, const Isomorphism& psi,
                                                      const Isomorphism& gamma) {
  const Group& k1 = one.h().parent();
  const Group& k2 = two.h().parent();
  constexpr Element kUnset = std::numeric_limits<Element>::max();
  std::vector<Element> beta(k1.order(), kUnset);
  std::vector<char> used(k2.order(), 0);
  std::vector<Element> queue;
  auto assign = [&](Element x, Element y) {
    if (beta[x] == kUnset) {
      if (used[y]) return false;
      beta[x] = y;
      used[y] = 1;
      queue.push_back(x);
      return true;
    }
    return beta[x] == y;
  };
  for (Element c = 0; c < one.quotient()->order(); ++c)
    for (std::size_t a = 0; a < one.aut().order(); ++a)
      if (!assign(one.map()(c, a), two.map()(psi(c), gamma(static_cast<Element>(a))))) return std::nullopt;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element s : one.s())
      if (!assign(k1.mul(x, s), k2.mul(beta[x], beta[s]))) return std::nullopt;
  }
  if (queue.size() != one.commutator().embedding.size()) return std::nullopt;
  return beta;
}

}  // namespace detail

/// Searches ψ then γ in lexicographic order; the first (ψ, γ) admitting a
/// consistent β is returned.
inline AutoisoclinismResult find_autoisoclinism(const PairSide& one, const PairSide& two, SearchBudget budget = {}) {
  AutoisoclinismResult result;
  const std::size_t q1 = one.quotient()->order(), q2 = two.quotient()->order();
  const std::size_t a1 = one.aut().order(), a2 = two.aut().order();
  if (q1 != q2 || a1 != a2 || one.commutator().embedding.size() != two.commutator().embedding.size() ||
      one.s().size() != two.s().size()) {
    result.note = "invariant orders differ";
    return result;
  }
  if (q1 > budget.max_quotient_order || a1 > budget.max_aut_order) {
    result.status = SearchStatus::BudgetExceeded;
    result.note = "quotient order " + std::to_string(q1) + ", |Aut| " + std::to_string(a1);
    return result;
  }
  const auto psis = all_isomorphisms(one.quotient(), two.quotient());
  if (psis.empty()) {
    result.note = "quotients are not isomorphic";
    return result;
  }
  const auto gammas = all_isomorphisms(one.aut_abstract(), two.aut_abstract());
  if (gammas.empty()) {
    result.note = "automorphism groups are not isomorphic";
    return result;
  }
  for (const auto& psi : psis)
    for (const auto& gamma : gammas) {
      const auto forced = detail::force_beta(one, two, psi, gamma);
      if (!forced) continue;
      const EmbeddedGroup& dom = one.commutator();
      const EmbeddedGroup& cod = two.commutator();
      std::vector<Element> map(dom.embedding.size());
      for (Element i = 0; i < map.size(); ++i) map[i] = cod.from_parent((*forced)[dom.to_parent(i)]);
      AutoisoclinismWitness w{psi, gamma, Isomorphism{dom.group, cod.group, std::move(map)}, dom, cod};
      if (!verify_witness(w, one, two)) continue;
      ensure(q1 == q2 && a1 == a2 && dom.embedding.size() == cod.embedding.size(),
             "autoisoclinic pairs share quotient, Aut and [H,Aut] orders");
      result.status = SearchStatus::Found;
      result.witness = std::move(w);
      return result;
    }
  result.note = "no (psi, gamma) admits a consistent beta";
  return result;
}

namespace detail {

/// |{(x, α) : [x, α] = g}| = |L| |S_g| with S_g counted over cosets.
inline BoundCheck counting_identity(const PairSide& side, Element g) {
  const auto counts = autocommutator_counts(side.h(), side.aut());
  std::int64_t coset_pairs = 0;
  for (Element c = 0; c < side.quotient()->order(); ++c)
    for (std::size_t a = 0; a < side.aut().order(); ++a)
      if (side.map()(c, a) == g) ++coset_pairs;
  const Group& k = side.h().parent();
  return make_check("autoisoclinism_counting_identity", {k.name(), side.h().describe(), k.label(g)}, Relation::Equal,
                    Rational(static_cast<std::int64_t>(counts[g])),
                    Rational(static_cast<std::int64_t>(side.l_order()) * coset_pairs));
}

}  // namespace detail

/// Pr_g(H1,Aut(K1)) = Pr_β(g)(H2,Aut(K2)) on [H1,Aut(K1)], equal support
/// sizes, and the counting identity on both sides.
inline std::vector<BoundCheck> verify_invariance(const AutoisoclinismWitness& w, const PairSide& one,
                                                 const PairSide& two) {
  const ProbabilityProfile p1 = distribution(one.h(), one.aut());
  const ProbabilityProfile p2 = distribution(two.h(), two.aut());
  const Group& k1 = one.h().parent();
  const Group& k2 = two.h().parent();
  std::vector<BoundCheck> out;
  BoundCheck diagram = make_check("autoisoclinism_diagram", {k1.name() + " ~ " + k2.name(), one.h().describe(), ""},
                                  Relation::Equal, Rational(verify_witness(w, one, two) ? 1 : 0), Rational(1));
  out.push_back(diagram);
  for (Element g : w.domain.embedding) {
    const Element image = w.beta_of(g);
    Instance inst{k1.name() + " ~ " + k2.name(), one.h().describe() + " ~ " + two.h().describe(),
                  k1.label(g) + " -> " + k2.label(image)};
    out.push_back(make_check("autoisoclinism_invariance", std::move(inst), Relation::Equal, p1[g], p2[image]));
  }
  out.push_back(make_check("autoisoclinism_support_size",
                           {k1.name() + " ~ " + k2.name(), one.h().describe() + " ~ " + two.h().describe(), ""},
                           Relation::Equal, Rational(static_cast<std::int64_t>(p1.support.size())),
                           Rational(static_cast<std::int64_t>(p2.support.size()))));
  for (Element g : one.s()) out.push_back(detail::counting_identity(one, g));
  for (Element g : two.s()) out.push_back(detail::counting_identity(two, g));
  return out;
}

}  // namespace autocomm
