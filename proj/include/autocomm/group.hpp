#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autocomm/error.hpp"

namespace autocomm {

/// Index of a group element. Index 0 is always the identity.
using Element = std::uint32_t;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Canonical spelling of an element label for lookups: whitespace removed,
/// `r2` becomes `r^2`, and an explicit `^1` exponent is dropped.
inline std::string normalize_label(std::string_view raw) {
  std::string compact;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::string out;
  for (std::size_t i = 0; i < compact.size(); ++i) {
    const char c = compact[i];
    out.push_back(c);
    const bool letter = std::isalpha(static_cast<unsigned char>(c)) != 0;
    if (letter && i + 1 < compact.size() &&
        std::isdigit(static_cast<unsigned char>(compact[i + 1])) != 0) {
      out.push_back('^');
    }
  }
  std::string result;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '^' && i + 1 < out.size() && out[i + 1] == '1' &&
        (i + 2 == out.size() || std::isdigit(static_cast<unsigned char>(out[i + 2])) == 0)) {
      ++i;
      continue;
    }
    result.push_back(out[i]);
  }
  return result;
}

/// A finite group stored as a validated Cayley table. Immutable; shared
/// through GroupPtr by subgroups, automorphism groups and quotients.
class Group {
 public:
  static constexpr std::size_t kMaxOrder = 10080;

  std::size_t order() const { return n_; }
  Element mul(Element a, Element b) const { return table_[std::size_t{a} * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  std::size_t element_order(Element a) const { return orders_[a]; }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

  /// Resolves a label: exact match, then identity aliases, then the
  /// normalized spelling.
  std::optional<Element> find(std::string_view label) const {
    if (auto it = exact_.find(std::string(label)); it != exact_.end()) return it->second;
    const std::string norm = normalize_label(label);
    if (auto it = normalized_.find(norm); it != normalized_.end()) return it->second;
    return std::nullopt;
  }

  bool is_abelian() const {
    for (Element a = 0; a < n_; ++a)
      for (Element b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<std::vector<Element>> rows() const {
    std::vector<std::vector<Element>> out(n_);
    for (Element a = 0; a < n_; ++a) out[a].assign(table_.begin() + a * n_, table_.begin() + (a + 1) * n_);
    return out;
  }

  friend GroupPtr from_flat_table(std::size_t n, std::vector<Element> flat, std::vector<std::string> labels,
                                  std::string name);

 private:
  Group() = default;

  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> orders_;
  std::vector<std::string> labels_;
  std::string name_;
  std::map<std::string, Element> exact_;
  std::map<std::string, Element> normalized_;
};

namespace detail {

// Elements reachable from the identity by right multiplication with `gens`,
// seeded with `start` (which must already be closed under the gens reached so
// far or be just {0}).
inline std::vector<char> right_closure(std::size_t n, const std::vector<Element>& flat, std::vector<char> seen,
                                       std::span<const Element> gens) {
  std::vector<Element> queue;
  for (Element x = 0; x < n; ++x)
    if (seen[x]) queue.push_back(x);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element g : gens) {
      const Element y = flat[std::size_t{x} * n + g];
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Builds and validates a group from a row-major n*n table. The identity is
/// moved to index 0 if necessary. `labels` may be empty for default labels.
inline GroupPtr from_flat_table(std::size_t n, std::vector<Element> flat, std::vector<std::string> labels,
                                std::string name) {
  if (n == 0 || flat.size() != n * n) throw Error(Errc::InvalidTable, "table must be a non-empty square matrix");
  if (n > Group::kMaxOrder)
    throw Error(Errc::SizeLimitExceeded, "order " + std::to_string(n) + " exceeds " + std::to_string(Group::kMaxOrder));
  if (!labels.empty() && labels.size() != n)
    throw Error(Errc::InvalidLabels, "expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (flat[i * n + j] >= n)
        throw Error(Errc::NotClosed, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") = " + std::to_string(flat[i * n + j]) + " is outside 0.." +
                                         std::to_string(n - 1));

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = flat[std::size_t{e} * n + x] == x && flat[std::size_t{x} * n + e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(Errc::NoIdentity, "no element acts as a two-sided identity");

  if (*identity != 0) {
    const Element e = *identity;
    auto relabel = [e](Element x) -> Element { return x == e ? 0 : (x == 0 ? e : x); };
    std::vector<Element> moved(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        moved[std::size_t{relabel(a)} * n + relabel(b)] = relabel(flat[std::size_t{a} * n + b]);
    flat = std::move(moved);
    if (!labels.empty()) std::swap(labels[0], labels[e]);
  }

  std::vector<std::string> final_labels(n);
  std::string identity_alias;
  if (labels.empty()) {
    final_labels[0] = "e";
    for (std::size_t i = 1; i < n; ++i) final_labels[i] = "g" + std::to_string(i);
  } else {
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != n) throw Error(Errc::InvalidLabels, "labels are not distinct");
    for (std::size_t i = 1; i < n; ++i)
      if (labels[i] == "e") throw Error(Errc::InvalidLabels, "label 'e' is reserved for the identity");
    if (labels[0] != "e") identity_alias = labels[0];
    final_labels = std::move(labels);
    final_labels[0] = "e";
  }

  auto text = [&](Element x) { return final_labels[x]; };

  std::vector<Element> inverse(n);
  for (Element a = 0; a < n; ++a) {
    std::optional<Element> found;
    for (Element b = 0; b < n && !found; ++b)
      if (flat[std::size_t{a} * n + b] == 0 && flat[std::size_t{b} * n + a] == 0) found = b;
    if (!found) throw Error(Errc::NoInverse, "element " + text(a) + " has no two-sided inverse");
    inverse[a] = *found;
  }

  // Light's test: associativity only has to hold for a monoid generating set.
  std::vector<Element> gens;
  std::vector<char> reached(n, 0);
  reached[0] = 1;
  for (Element x = 1; x < n; ++x) {
    if (reached[x]) continue;
    gens.push_back(x);
    reached = detail::right_closure(n, flat, std::move(reached), gens);
  }
  for (Element c : gens)
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = flat[std::size_t{a} * n + b];
        const Element bc = flat[std::size_t{b} * n + c];
        if (flat[std::size_t{ab} * n + c] != flat[std::size_t{a} * n + bc])
          throw Error(Errc::NotAssociative,
                      "(" + text(a) + "*" + text(b) + ")*" + text(c) + " != " + text(a) + "*(" + text(b) + "*" +
                          text(c) + ")");
      }

  auto group = std::shared_ptr<Group>(new Group());
  group->n_ = n;
  group->table_ = std::move(flat);
  group->inverse_ = std::move(inverse);
  group->orders_.assign(n, 1);
  for (Element a = 1; a < n; ++a) {
    std::size_t k = 1;
    for (Element p = a; p != 0; p = group->mul(p, a)) ++k;
    group->orders_[a] = k;
  }
  group->labels_ = std::move(final_labels);
  group->name_ = std::move(name);
  std::map<std::string, int> norm_count;
  for (Element x = 0; x < n; ++x) {
    group->exact_.emplace(group->labels_[x], x);
    ++norm_count[normalize_label(group->labels_[x])];
  }
  if (!identity_alias.empty()) group->exact_.emplace(identity_alias, 0);
  for (Element x = 0; x < n; ++x) {
    const std::string norm = normalize_label(group->labels_[x]);
    if (norm_count[norm] == 1) group->normalized_.emplace(norm, x);
  }
  if (!identity_alias.empty()) group->normalized_.emplace(normalize_label(identity_alias), 0);
  return group;
}

/// Builds a group from a square table of element indices and optional labels.
inline GroupPtr from_cayley_table(const std::vector<std::vector<Element>>& table,
                                  std::vector<std::string> labels = {}, std::string name = "") {
  const std::size_t n = table.size();
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw Error(Errc::InvalidTable, "table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_flat_table(n, std::move(flat), std::move(labels), std::move(name));
}

/// Sorted closure of `gens` (plus the identity) under the group operation.
inline std::vector<Element> closure(const Group& g, std::span<const Element> gens) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::vector<Element> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element x = queue[head];
    for (Element s : gens) {
      const Element y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

/// Element subset of a parent group that is closed under its operation.
class Subgroup {
 public:
  /// Validates identity, closure, inverses and Lagrange; throws NotASubgroup.
  Subgroup(GroupPtr parent, std::vector<Element> members) : parent_(std::move(parent)) {
    const Group& g = *parent_;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != 0) throw Error(Errc::NotASubgroup, "subset does not contain e");
    if (members.back() >= g.order()) throw Error(Errc::NotASubgroup, "element index out of range");
    init(std::move(members));
    for (Element a : members_) {
      if (!contains(g.inv(a))) throw Error(Errc::NotASubgroup, "not closed under inverse at " + g.label(a));
      for (Element b : members_)
        if (!contains(g.mul(a, b)))
          throw Error(Errc::NotASubgroup, "not closed: " + g.label(a) + "*" + g.label(b));
    }
    ensure(g.order() % members_.size() == 0, "subgroup order divides group order");
  }

  static Subgroup whole(GroupPtr parent) {
    std::vector<Element> all(parent->order());
    for (Element i = 0; i < all.size(); ++i) all[i] = i;
    return Subgroup(Trusted{}, std::move(parent), std::move(all));
  }
  static Subgroup trivial(GroupPtr parent) { return Subgroup(Trusted{}, std::move(parent), {0}); }

  /// For sets already known to be closed (e.g. produced by `closure`).
  static Subgroup from_closed(GroupPtr parent, std::vector<Element> sorted_members) {
    return Subgroup(Trusted{}, std::move(parent), std::move(sorted_members));
  }

  const Group& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  const std::vector<Element>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(Element x) const { return x < mask_.size() && mask_[x] != 0; }

  bool is_subset_of(const Subgroup& other) const {
    if (parent_.get() != other.parent_.get()) return false;
    return std::all_of(members_.begin(), members_.end(), [&](Element x) { return other.contains(x); });
  }
  bool is_whole() const { return members_.size() == parent_->order(); }

  bool is_abelian() const {
    for (Element a : members_)
      for (Element b : members_)
        if (parent_->mul(a, b) != parent_->mul(b, a)) return false;
    return true;
  }

  /// Member labels in index order, e.g. "{e,r,r^2,r^3}".
  std::string describe() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) out += ",";
      out += parent_->label(members_[i]);
    }
    return out + "}";
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.get() == b.parent_.get() && a.members_ == b.members_;
  }

 private:
  struct Trusted {};
  Subgroup(Trusted, GroupPtr parent, std::vector<Element> sorted_members) : parent_(std::move(parent)) {
    init(std::move(sorted_members));
  }
  void init(std::vector<Element> sorted_members) {
    members_ = std::move(sorted_members);
    mask_.assign(parent_->order(), 0);
    for (Element x : members_) mask_[x] = 1;
  }

  GroupPtr parent_;
  std::vector<Element> members_;
  std::vector<char> mask_;
};

inline Subgroup subgroup_generated(const GroupPtr& g, std::span<const Element> gens) {
  for (Element x : gens)
    if (x >= g->order()) throw Error(Errc::NotContained, "generator index " + std::to_string(x) + " out of range");
  return Subgroup::from_closed(g, closure(*g, gens));
}

inline Subgroup subgroup_generated(const GroupPtr& g, std::initializer_list<Element> gens) {
  return subgroup_generated(g, std::span<const Element>(gens.begin(), gens.size()));
}

/// Every subgroup of `k` exactly once, sorted by (order, members). Built by
/// joining cyclic subgroups until no new subgroup appears, so there is no cap
/// on the number of generators a subgroup needs.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& k, std::size_t max_order = 48) {
  const Group& g = *k;
  if (g.order() > max_order)
    throw Error(Errc::SizeLimitExceeded,
                "subgroup enumeration supports order <= " + std::to_string(max_order) + ", got " +
                    std::to_string(g.order()));

  std::set<std::vector<Element>> seen;
  std::vector<std::pair<std::vector<Element>, std::vector<Element>>> found;  // (members, generators)
  std::vector<std::vector<Element>> cyclic;
  for (Element x = 0; x < g.order(); ++x) {
    const Element gens[] = {x};
    auto members = closure(g, gens);
    if (seen.insert(members).second) {
      found.push_back({members, x == 0 ? std::vector<Element>{} : std::vector<Element>{x}});
      cyclic.push_back(members);
    }
  }
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (Element x = 1; x < g.order(); ++x) {
      if (std::binary_search(found[head].first.begin(), found[head].first.end(), x)) continue;
      auto gens = found[head].second;
      gens.push_back(x);
      auto members = closure(g, gens);
      if (seen.insert(members).second) found.push_back({std::move(members), std::move(gens)});
    }
  }
  std::vector<std::vector<Element>> sets;
  sets.reserve(found.size());
  for (auto& f : found) sets.push_back(std::move(f.first));
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::from_closed(k, std::move(s)));
  return out;
}

inline Subgroup center(const GroupPtr& k) {
  const Group& g = *k;
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup::from_closed(k, std::move(z));
}

inline bool is_normal_in(const Subgroup& n, const Subgroup& h) {
  const Group& g = h.parent();
  for (Element x : h.members())
    for (Element m : n.members())
      if (!n.contains(g.mul(g.mul(g.inv(x), m), x))) return false;
  return true;
}

/// A subgroup rebuilt as a standalone group, keeping the parent's labels.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<Element> embedding;                // group index -> parent element
  std::vector<std::optional<Element>> index_of;  // parent element -> group index

  Element to_parent(Element x) const { return embedding[x]; }
  Element from_parent(Element y) const { return index_of.at(y).value(); }
};

inline EmbeddedGroup subgroup_as_group(const Subgroup& s) {
  const Group& g = s.parent();
  EmbeddedGroup out;
  out.embedding = s.members();
  out.index_of.assign(g.order(), std::nullopt);
  for (Element i = 0; i < out.embedding.size(); ++i) out.index_of[out.embedding[i]] = i;
  const std::size_t n = out.embedding.size();
  std::vector<Element> flat(n * n);
  std::vector<std::string> labels;
  for (Element i = 0; i < n; ++i) {
    labels.push_back(g.label(out.embedding[i]));
    for (Element j = 0; j < n; ++j) flat[std::size_t{i} * n + j] = *out.index_of[g.mul(out.embedding[i], out.embedding[j])];
  }
  const std::string base = g.name().empty() ? std::string("G") : g.name();
  out.group = from_flat_table(n, std::move(flat), std::move(labels), base + ":" + s.describe());
  return out;
}

/// H/N together with the projection H -> H/N.
struct Quotient {
  GroupPtr group;
  std::vector<Element> representatives;  // smallest parent index in each coset
  std::vector<std::optional<Element>> coset_of;  // indexed by parent element; empty outside H

  Element project(Element x) const { return coset_of.at(x).value(); }
};

inline Quotient quotient_group(const Subgroup& h, const Subgroup& n) {
  if (!n.is_subset_of(h)) throw Error(Errc::NotContained, n.describe() + " is not contained in " + h.describe());
  if (!is_normal_in(n, h)) throw Error(Errc::NotNormal, n.describe() + " is not normal in " + h.describe());
  const Group& g = h.parent();

  Quotient q;
  q.coset_of.assign(g.order(), std::nullopt);
  for (Element x : h.members()) {
    if (q.coset_of[x]) continue;
    const auto index = static_cast<Element>(q.representatives.size());
    q.representatives.push_back(x);
    for (Element m : n.members()) q.coset_of[g.mul(x, m)] = index;
  }
  const std::size_t order = q.representatives.size();
  std::vector<Element> flat(order * order);
  std::vector<std::string> labels(order);
  for (Element i = 0; i < order; ++i) {
    labels[i] = g.label(q.representatives[i]);
    for (Element j = 0; j < order; ++j)
      flat[std::size_t{i} * order + j] = *q.coset_of[g.mul(q.representatives[i], q.representatives[j])];
  }
  const std::string base = g.name().empty() ? std::string("G") : g.name();
  q.group = from_flat_table(order, std::move(flat), std::move(labels), base + "/" + n.describe());
  return q;
}

/// Componentwise product of any number of factors with tuple labels "(x,y,...)".
inline GroupPtr direct_product(std::span<const GroupPtr> factors) {
  if (factors.empty()) throw Error(Errc::InvalidTable, "direct product of zero factors");
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f->order();
    if (n > Group::kMaxOrder)
      throw Error(Errc::SizeLimitExceeded, "product order exceeds " + std::to_string(Group::kMaxOrder));
  }
  // Mixed radix, first factor most significant.
  auto split = [&](std::size_t index) {
    std::vector<Element> parts(factors.size());
    for (std::size_t f = factors.size(); f-- > 0;) {
      parts[f] = static_cast<Element>(index % factors[f]->order());
      index /= factors[f]->order();
    }
    return parts;
  };
  auto join = [&](const std::vector<Element>& parts) {
    std::size_t index = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) index = index * factors[f]->order() + parts[f];
    return static_cast<Element>(index);
  };
  std::vector<std::vector<Element>> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = split(i);
  std::vector<Element> flat(n * n);
  std::vector<Element> parts(factors.size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t f = 0; f < factors.size(); ++f) parts[f] = factors[f]->mul(coords[a][f], coords[b][f]);
      flat[a * n + b] = join(parts);
    }
  std::vector<std::string> labels(n);
  std::string name;
  for (std::size_t f = 0; f < factors.size(); ++f) name += (f ? "x" : "") + factors[f]->name();
  for (std::size_t i = 0; i < n; ++i) {
    std::string l = "(";
    for (std::size_t f = 0; f < factors.size(); ++f) l += (f ? "," : "") + factors[f]->label(coords[i][f]);
    labels[i] = l + ")";
  }
  return from_flat_table(n, std::move(flat), std::move(labels), name);
}

struct ProductResult {
  GroupPtr group;
  Subgroup first;   // G1 x {e}
  Subgroup second;  // {e} x G2
};

inline ProductResult direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  const GroupPtr factors[] = {g1, g2};
  GroupPtr p = direct_product(std::span<const GroupPtr>(factors));
  std::vector<Element> first, second;
  for (Element a = 0; a < g1->order(); ++a) first.push_back(static_cast<Element>(a * g2->order()));
  for (Element b = 0; b < g2->order(); ++b) second.push_back(b);
  return {p, Subgroup::from_closed(p, std::move(first)), Subgroup::from_closed(p, std::move(second))};
}

}  // namespace autocomm
