#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "autocomm/group.hpp"

namespace autocomm {

/// Bijection source -> target that respects the operation; map[0] == 0.
struct Isomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> map;

  Element operator()(Element x) const { return map[x]; }

  /// Exhaustive check of the homomorphism equation and bijectivity.
  bool verify() const {
    const std::size_t n = source->order();
    if (target->order() != n || map.size() != n || map[0] != 0) return false;
    std::vector<char> hit(n, 0);
    for (Element x : map) {
      if (x >= n || hit[x]) return false;
      hit[x] = 1;
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (map[source->mul(a, b)] != target->mul(map[a], map[b])) return false;
    return true;
  }

  Isomorphism inverse() const {
    std::vector<Element> back(map.size());
    for (Element x = 0; x < map.size(); ++x) back[map[x]] = x;
    return {target, source, std::move(back)};
  }
};

namespace detail {

inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace detail

/// Smallest generating set, ties broken lexicographically by element index.
/// Falls back to a greedy irredundant set when exhaustive search would try
/// more than `budget` subsets.
inline std::vector<Element> minimal_generating_set(const Group& g, std::size_t budget = 200000) {
  const std::size_t n = g.order();
  if (n == 1) return {};
  for (std::size_t k = 1; k < n; ++k) {
    if (detail::binomial_capped(n - 1, k, budget) > budget) break;
    std::vector<Element> pick(k);
    std::iota(pick.begin(), pick.end(), Element{1});
    while (true) {
      if (closure(g, pick).size() == n) return pick;
      // next k-combination of 1..n-1
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::vector<Element> gens;
  std::vector<Element> reached{0};
  while (reached.size() < n) {
    Element best = 0;
    for (Element x = 1; x < n; ++x) {
      if (std::binary_search(reached.begin(), reached.end(), x)) continue;
      if (best == 0 || g.element_order(x) > g.element_order(best)) best = x;
    }
    gens.push_back(best);
    reached = closure(g, gens);
  }
  return gens;
}

inline std::map<std::size_t, std::size_t> order_histogram(const Group& g) {
  std::map<std::size_t, std::size_t> h;
  for (Element x = 0; x < g.order(); ++x) ++h[g.element_order(x)];
  return h;
}

/// Calls `visit(const std::vector<Element>& map)` for every isomorphism
/// source -> target until it returns false. Backtracks over images of a
/// minimal generating set; candidate images are order-preserving and tried in
/// ascending index, and each partial assignment is propagated over the
/// subgroup it generates so homomorphism or injectivity conflicts prune early.
template <class Visit>
void for_each_isomorphism(const Group& source, const Group& target, Visit&& visit) {
  const std::size_t n = source.order();
  if (target.order() != n || order_histogram(source) != order_histogram(target)) return;

  const std::vector<Element> gens = minimal_generating_set(source);
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element y = 1; y < n; ++y)
      if (target.element_order(y) == source.element_order(gens[i])) candidates[i].push_back(y);

  constexpr Element kUnset = std::numeric_limits<Element>::max();
  std::vector<Element> images(gens.size(), 0);

  // Propagates the assignment of the first `depth` generators; returns the
  // partial map or nothing on conflict.
  auto propagate = [&](std::size_t depth) -> std::optional<std::vector<Element>> {
    std::vector<Element> map(n, kUnset);
    std::vector<char> used(n, 0);
    map[0] = 0;
    used[0] = 1;
    std::vector<Element> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Element x = queue[head];
      for (std::size_t j = 0; j < depth; ++j) {
        const Element y = source.mul(x, gens[j]);
        const Element img = target.mul(map[x], images[j]);
        if (map[y] == kUnset) {
          if (used[img]) return std::nullopt;
          map[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (map[y] != img) {
          return std::nullopt;
        }
      }
    }
    return map;
  };

  if (gens.empty()) {
    visit(std::vector<Element>{0});
    return;
  }

  bool stop = false;
  auto search = [&](auto&& self, std::size_t depth) -> void {
    for (Element candidate : candidates[depth]) {
      if (stop) return;
      images[depth] = candidate;
      auto partial = propagate(depth + 1);
      if (!partial) continue;
      if (depth + 1 == gens.size()) {
        if (!visit(static_cast<const std::vector<Element>&>(*partial))) stop = true;
      } else {
        self(self, depth + 1);
      }
    }
  };
  search(search, 0);
}

inline std::optional<Isomorphism> find_isomorphism(const GroupPtr& source, const GroupPtr& target) {
  std::optional<Isomorphism> found;
  for_each_isomorphism(*source, *target, [&](const std::vector<Element>& map) {
    found = Isomorphism{source, target, map};
    return false;
  });
  if (found) ensure(found->verify(), "isomorphism witness satisfies the homomorphism equation");
  return found;
}

/// Every isomorphism source -> target, sorted lexicographically by image vector.
inline std::vector<Isomorphism> all_isomorphisms(const GroupPtr& source, const GroupPtr& target) {
  std::vector<std::vector<Element>> maps;
  for_each_isomorphism(*source, *target, [&](const std::vector<Element>& map) {
    maps.push_back(map);
    return true;
  });
  std::sort(maps.begin(), maps.end());
  std::vector<Isomorphism> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.push_back({source, target, std::move(m)});
  return out;
}

struct StructureDescriptor {
  std::size_t order = 1;
  bool abelian = true;
  bool cyclic = true;
  std::size_t exponent = 1;
  std::map<std::size_t, std::size_t> order_histogram;
  std::string shape;  // "Z_n", "Z_q x Z_q", or empty

  bool is_cyclic_of_order(std::size_t q) const { return cyclic && order == q; }
  bool is_elementary_square(std::size_t q) const {
    return abelian && order == q * q && exponent == q && q > 1;
  }
};

inline StructureDescriptor classify(const Group& g) {
  StructureDescriptor d;
  d.order = g.order();
  d.abelian = g.is_abelian();
  d.order_histogram = order_histogram(g);
  for (const auto& [ord, count] : d.order_histogram) d.exponent = std::lcm(d.exponent, ord);
  d.cyclic = d.order_histogram.count(d.order) > 0;
  if (d.cyclic) {
    d.shape = "Z_" + std::to_string(d.order);
  } else if (d.abelian) {
    const std::size_t q = d.exponent;
    bool prime = q >= 2;
    for (std::size_t f = 2; f * f <= q && prime; ++f) prime = q % f != 0;
    if (prime && d.order == q * q) d.shape = "Z_" + std::to_string(q) + " x Z_" + std::to_string(q);
  }
  return d;
}

}  // namespace autocomm
