#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autocomm/group.hpp"
#include "autocomm/isomorphism.hpp"

namespace autocomm {

/// Automorphism stored as its full image vector.
struct Automorphism {
  std::vector<Element> images;

  Element operator()(Element x) const { return images[x]; }
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

/// (a ∘ b)(x) = a(b(x)).
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism out{std::vector<Element>(b.images.size())};
  for (std::size_t x = 0; x < b.images.size(); ++x) out.images[x] = a.images[b.images[x]];
  return out;
}

inline Automorphism inverse(const Automorphism& a) {
  Automorphism out{std::vector<Element>(a.images.size())};
  for (Element x = 0; x < a.images.size(); ++x) out.images[a.images[x]] = x;
  return out;
}

inline Automorphism identity_automorphism(std::size_t n) {
  Automorphism id{std::vector<Element>(n)};
  for (Element x = 0; x < n; ++x) id.images[x] = x;
  return id;
}

inline bool is_automorphism(const Group& k, const std::vector<Element>& images) {
  if (images.size() != k.order()) return false;
  std::vector<char> hit(k.order(), 0);
  for (Element y : images) {
    if (y >= k.order() || hit[y]) return false;
    hit[y] = 1;
  }
  for (Element a = 0; a < k.order(); ++a)
    for (Element b = 0; b < k.order(); ++b)
      if (images[k.mul(a, b)] != k.mul(images[a], images[b])) return false;
  return true;
}

/// [x, α] = x⁻¹ α(x).
inline Element autocommutator(const Group& k, Element x, const Automorphism& alpha) {
  return k.mul(k.inv(x), alpha(x));
}

/// A set of automorphisms of K, sorted by image vector (so the identity, when
/// present, comes first). Used both for Aut(K) itself and for its subgroups
/// (Inn(K), stabilizers). Orbits and stabilizer orders of the induced action
/// on K are computed at construction.
class AutomorphismGroup {
 public:
  AutomorphismGroup(GroupPtr k, std::vector<Automorphism> elements)
      : group_(std::move(k)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    const std::size_t n = group_->order();
    ensure(!elements_.empty() && elements_.front() == identity_automorphism(n),
           "automorphism group contains the identity at position 0");

    orbit_id_.assign(n, 0);
    std::vector<char> assigned(n, 0);
    for (Element x = 0; x < n; ++x) {
      if (assigned[x]) continue;
      std::set<Element> orb;
      for (const auto& a : elements_) orb.insert(a(x));
      for (Element y : orb) {
        orbit_id_[y] = orbits_.size();
        assigned[y] = 1;
      }
      orbits_.emplace_back(orb.begin(), orb.end());
    }
    stabilizer_order_.assign(n, 0);
    for (const auto& a : elements_)
      for (Element x = 0; x < n; ++x)
        if (a(x) == x) ++stabilizer_order_[x];
  }

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Automorphism>& elements() const { return elements_; }
  const Automorphism& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> position(const Automorphism& a) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
    if (it == elements_.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }
  bool contains(const Automorphism& a) const { return position(a).has_value(); }

  /// Index of compose(elements[i], elements[j]); requires closure.
  std::size_t compose_index(std::size_t i, std::size_t j) const {
    auto p = position(compose(elements_[i], elements_[j]));
    ensure(p.has_value(), "automorphism set is closed under composition");
    return *p;
  }

  const std::vector<std::vector<Element>>& orbits() const { return orbits_; }
  std::size_t orbit_id(Element x) const { return orbit_id_[x]; }
  const std::vector<Element>& orbit(Element x) const { return orbits_[orbit_id_[x]]; }
  std::size_t orbit_size(Element x) const { return orbit(x).size(); }
  bool in_orbit(Element y, Element x) const { return orbit_id_[y] == orbit_id_[x]; }
  std::size_t stabilizer_order(Element x) const { return stabilizer_order_[x]; }

  /// Full closure check when cheap; otherwise closure under right
  /// multiplication by a generating subset.
  bool is_closed() const {
    const std::size_t m = elements_.size();
    std::vector<std::size_t> right;
    if (m * m * group_->order() <= 50'000'000) {
      right.resize(m);
      std::iota(right.begin(), right.end(), std::size_t{0});
    } else {
      std::set<Automorphism> reached{elements_.front()};
      for (std::size_t i = 1; i < m && reached.size() < m; ++i) {
        if (reached.count(elements_[i])) continue;
        right.push_back(i);
        std::vector<Automorphism> queue(reached.begin(), reached.end());
        for (std::size_t h = 0; h < queue.size(); ++h)
          for (std::size_t r : right) {
            auto c = compose(queue[h], elements_[r]);
            if (reached.insert(c).second) queue.push_back(std::move(c));
          }
      }
    }
    for (const auto& a : elements_) {
      if (!contains(inverse(a))) return false;
      for (std::size_t r : right)
        if (!contains(compose(a, elements_[r]))) return false;
    }
    return true;
  }

 private:
  GroupPtr group_;
  std::vector<Automorphism> elements_;
  std::vector<std::vector<Element>> orbits_;
  std::vector<std::size_t> orbit_id_;
  std::vector<std::size_t> stabilizer_order_;
};

/// Aut(K) by backtracking over images of a minimal generating set of K.
inline AutomorphismGroup automorphism_group(const GroupPtr& k, std::size_t max_order = 48) {
  if (k->order() > max_order)
    throw Error(Errc::SizeLimitExceeded, "automorphism enumeration supports order <= " + std::to_string(max_order) +
                                             ", got " + std::to_string(k->order()));
  std::vector<Automorphism> autos;
  for_each_isomorphism(*k, *k, [&](const std::vector<Element>& map) {
    autos.push_back(Automorphism{map});
    return true;
  });
  AutomorphismGroup aut(k, std::move(autos));
  ensure(aut.is_closed(), "Aut(K) is closed under composition and inversion");
  return aut;
}

/// Inn(K) = {x ↦ y⁻¹xy : y ∈ K}.
inline AutomorphismGroup inner_automorphism_group(const GroupPtr& k) {
  const Group& g = *k;
  std::vector<Automorphism> autos;
  for (Element y = 0; y < g.order(); ++y) {
    Automorphism a{std::vector<Element>(g.order())};
    for (Element x = 0; x < g.order(); ++x) a.images[x] = g.mul(g.mul(g.inv(y), x), y);
    autos.push_back(std::move(a));
  }
  AutomorphismGroup inn(k, std::move(autos));
  ensure(inn.order() * center(k).order() == g.order(), "|Inn(K)| = |K| / |Z(K)|");
  return inn;
}

inline bool is_subgroup_of(const AutomorphismGroup& sub, const AutomorphismGroup& super) {
  return std::all_of(sub.elements().begin(), sub.elements().end(),
                     [&](const Automorphism& a) { return super.contains(a); });
}

inline void require_same_group(const Subgroup& h, const AutomorphismGroup& aut) {
  if (h.parent_ptr().get() != aut.group_ptr().get())
    throw Error(Errc::NotContained, "subgroup " + h.describe() + " does not live in the group acted on");
}

/// orb_K(x), sorted.
inline std::vector<Element> orbit(const AutomorphismGroup& aut, Element x) { return aut.orbit(x); }

/// Distinct orbits of the elements of H, ordered by smallest member. Orbits
/// are not intersected with H.
inline std::vector<std::vector<Element>> orbit_partition(const AutomorphismGroup& aut, const Subgroup& h) {
  require_same_group(h, aut);
  std::set<std::size_t> ids;
  for (Element x : h.members()) ids.insert(aut.orbit_id(x));
  std::vector<std::vector<Element>> out;
  for (std::size_t id : ids) out.push_back(aut.orbits()[id]);
  std::sort(out.begin(), out.end());
  return out;
}

/// C_Aut(K)(x).
inline AutomorphismGroup stabilizer(const AutomorphismGroup& aut, Element x) {
  std::vector<Automorphism> fixing;
  for (const auto& a : aut.elements())
    if (a(x) == x) fixing.push_back(a);
  AutomorphismGroup stab(aut.group_ptr(), std::move(fixing));
  ensure(aut.orbit_size(x) * stab.order() == aut.order(), "|orb(x)| * |C_Aut(x)| = |Aut|");
  return stab;
}

/// C_Aut(K)(H): automorphisms fixing H pointwise.
inline AutomorphismGroup aut_centralizer_of_subgroup(const AutomorphismGroup& aut, const Subgroup& h) {
  require_same_group(h, aut);
  std::vector<Automorphism> fixing;
  for (const auto& a : aut.elements())
    if (std::all_of(h.members().begin(), h.members().end(), [&](Element x) { return a(x) == x; }))
      fixing.push_back(a);
  return AutomorphismGroup(aut.group_ptr(), std::move(fixing));
}

/// C_H(α) = {x ∈ H : [x, α] = e}.
inline Subgroup fixed_points(const Subgroup& h, const Automorphism& alpha) {
  std::vector<Element> fixed;
  for (Element x : h.members())
    if (alpha(x) == x) fixed.push_back(x);
  return Subgroup(h.parent_ptr(), std::move(fixed));
}

/// L(H, Aut(K)) = ∩_α C_H(α): the elements of H fixed by every automorphism.
inline Subgroup absolute_centralizer(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  std::vector<Element> members;
  for (Element x : h.members())
    if (aut.orbit_size(x) == 1) members.push_back(x);
  Subgroup l(h.parent_ptr(), std::move(members));
  std::vector<char> in_all(h.parent().order(), 0);
  for (Element x : h.members()) in_all[x] = 1;
  for (const auto& a : aut.elements())
    for (Element x : h.members())
      if (a(x) != x) in_all[x] = 0;
  for (Element x : h.members()) ensure((in_all[x] != 0) == l.contains(x), "L equals the intersection of C_H(α)");
  ensure(is_normal_in(l, h), "L(H,Aut(K)) is normal in H");
  const Subgroup z = center(h.parent_ptr());
  ensure(l.is_subset_of(z), "L(H,Aut(K)) lies in H ∩ Z(K)");
  return l;
}

/// S(H, Aut(K)) = {[x, α]}, sorted.
inline std::vector<Element> autocommutator_set(const Subgroup& h, const AutomorphismGroup& aut) {
  require_same_group(h, aut);
  const Group& k = h.parent();
  std::vector<char> hit(k.order(), 0);
  for (Element x : h.members())
    for (const auto& a : aut.elements()) hit[autocommutator(k, x, a)] = 1;
  std::vector<Element> s;
  for (Element g = 0; g < k.order(); ++g)
    if (hit[g]) s.push_back(g);
  return s;
}

/// [H, Aut(K)] = ⟨S(H, Aut(K))⟩.
inline Subgroup autocommutator_subgroup(const Subgroup& h, const AutomorphismGroup& aut) {
  const auto s = autocommutator_set(h, aut);
  Subgroup sub = subgroup_generated(h.parent_ptr(), s);
  ensure(std::all_of(s.begin(), s.end(), [&](Element g) { return sub.contains(g); }), "S ⊆ [H,Aut(K)]");
  return sub;
}

/// T_{x,g} = {α : [x, α] = g} as positions into `aut`. Empty exactly when
/// xg ∉ orb(x); otherwise the left coset σ·C_Aut(x) of its first member σ.
inline std::vector<std::size_t> t_set(const AutomorphismGroup& aut, Element x, Element g) {
  const Group& k = aut.group();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < aut.order(); ++i)
    if (autocommutator(k, x, aut[i]) == g) out.push_back(i);
  const Element xg = k.mul(x, g);
  ensure(out.empty() != aut.in_orbit(xg, x), "T_{x,g} is nonempty iff xg ∈ orb(x)");
  if (!out.empty()) {
    const Automorphism& sigma = aut[out.front()];
    std::vector<std::size_t> coset;
    const AutomorphismGroup stab = stabilizer(aut, x);
    for (const auto& beta : stab.elements()) coset.push_back(*aut.position(compose(sigma, beta)));
    std::sort(coset.begin(), coset.end());
    ensure(coset == out, "T_{x,g} = σ·C_Aut(x)");
  }
  return out;
}

/// cl_K(x), sorted.
inline std::vector<Element> conjugacy_class(const Group& k, Element x) {
  std::set<Element> cls;
  for (Element y = 0; y < k.order(); ++y) cls.insert(k.mul(k.mul(k.inv(y), x), y));
  return {cls.begin(), cls.end()};
}

/// cl_K(x), additionally asserting cl_K(x) ⊆ orb_K(x).
inline std::vector<Element> conjugacy_class(const AutomorphismGroup& aut, Element x) {
  auto cls = conjugacy_class(aut.group(), x);
  for (Element y : cls) ensure(aut.in_orbit(y, x), "cl_K(x) ⊆ orb_K(x)");
  return cls;
}

}  // namespace autocomm
