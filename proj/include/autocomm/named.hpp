#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "autocomm/group.hpp"

namespace autocomm {

namespace detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

template <class Mul>
GroupPtr build_group(std::size_t n, Mul&& mul, std::vector<std::string> labels, std::string name) {
  std::vector<Element> flat(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) flat[std::size_t{a} * n + b] = static_cast<Element>(mul(a, b));
  return from_flat_table(n, std::move(flat), std::move(labels), std::move(name));
}

inline std::string power_label(std::string_view base, std::size_t k) {
  if (k == 0) return "e";
  if (k == 1) return std::string(base);
  return std::string(base) + "^" + std::to_string(k);
}

inline void require_order(std::size_t order, std::string_view spec) {
  if (order > Group::kMaxOrder)
    throw Error(Errc::SizeLimitExceeded,
                std::string(spec) + " has order " + std::to_string(order) + " > " + std::to_string(Group::kMaxOrder));
}

// Cycle notation on points 1..n, e.g. "(12)(34)".
inline std::string cycle_label(const std::vector<int>& perm) {
  std::string out;
  std::vector<char> done(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i] || perm[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !done[j]; j = static_cast<std::size_t>(perm[j])) {
      done[j] = 1;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

// Permutations compose left to right: (x*y)(i) = y(x(i)).
inline GroupPtr permutation_group(int degree, bool even_only, std::string name) {
  std::vector<int> perm(static_cast<std::size_t>(degree));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> elements;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < degree; ++i)
        for (int j = i + 1; j < degree; ++j)
          if (perm[i] > perm[j]) ++inversions;
      if (inversions % 2) continue;
    }
    elements.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, Element> index;
  for (Element i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<std::string> labels;
  for (const auto& p : elements) labels.push_back(cycle_label(p));
  std::vector<int> product(static_cast<std::size_t>(degree));
  return build_group(
      elements.size(),
      [&](Element a, Element b) {
        for (int i = 0; i < degree; ++i) product[i] = elements[b][elements[a][i]];
        return index.at(product);
      },
      std::move(labels), std::move(name));
}

}  // namespace detail

inline GroupPtr cyclic_group(std::size_t n) {
  if (n == 0) throw Error(Errc::UnknownSpec, "C0 is not a group");
  detail::require_order(n, "C" + std::to_string(n));
  std::vector<std::string> labels(n);
  for (std::size_t k = 0; k < n; ++k) labels[k] = detail::power_label("a", k);
  return detail::build_group(n, [n](Element a, Element b) { return (a + b) % n; }, std::move(labels),
                             "C" + std::to_string(n));
}

/// Dihedral group of order 2n: index k is r^k, index n+k is r^k s.
inline GroupPtr dihedral_group(std::size_t n) {
  if (n == 0) throw Error(Errc::UnknownSpec, "D0 is not a group");
  detail::require_order(2 * n, "D" + std::to_string(n));
  std::vector<std::string> labels(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    labels[k] = detail::power_label("r", k);
    labels[n + k] = (k == 0 ? std::string() : detail::power_label("r", k)) + "s";
  }
  // r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)
  auto mul = [n](Element x, Element y) {
    const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
    const std::size_t rot = b ? (a + n - c) % n : (a + c) % n;
    return rot + ((b + d) % 2) * n;
  };
  return detail::build_group(2 * n, mul, std::move(labels), "D" + std::to_string(n));
}

/// Quaternion group with elements e,-e,i,-i,j,-j,k,-k at indices 0..7.
inline GroupPtr quaternion_group() {
  // unit products: sign and unit for (1,i,j,k) x (1,i,j,k)
  static constexpr std::array<std::array<int, 4>, 4> unit = {{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  static constexpr std::array<std::array<int, 4>, 4> sign = {{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}}};
  auto mul = [](Element x, Element y) {
    const int ux = static_cast<int>(x / 2), uy = static_cast<int>(y / 2);
    const int sx = x % 2 ? -1 : 1, sy = y % 2 ? -1 : 1;
    const int s = sx * sy * sign[ux][uy];
    return static_cast<Element>(unit[ux][uy] * 2 + (s < 0 ? 1 : 0));
  };
  return detail::build_group(8, mul, {"e", "-e", "i", "-i", "j", "-j", "k", "-k"}, "Q8");
}

inline GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 5) throw Error(Errc::UnknownSpec, "S" + std::to_string(n) + " is outside S1..S5");
  return detail::permutation_group(n, false, "S" + std::to_string(n));
}

inline GroupPtr alternating_group(int n) {
  if (n < 1 || n > 5) throw Error(Errc::UnknownSpec, "A" + std::to_string(n) + " is outside A1..A5");
  return detail::permutation_group(n, true, "A" + std::to_string(n));
}

/// Elementary abelian group (Z_p)^k with coordinate-tuple labels.
inline GroupPtr elementary_abelian_group(std::size_t p, std::size_t k) {
  const std::string name = "E" + std::to_string(p) + "^" + std::to_string(k);
  if (!detail::is_prime(p) || k == 0) throw Error(Errc::UnknownSpec, name + " needs a prime p and k >= 1");
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    n *= p;
    detail::require_order(n, name);
  }
  auto digits = [p, k](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = x % p;
      x /= p;
    }
    return d;
  };
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto d = digits(x);
    std::string l = "(";
    for (std::size_t i = 0; i < k; ++i) l += (i ? "," : "") + std::to_string(d[i]);
    labels[x] = x == 0 ? "e" : l + ")";
  }
  auto mul = [&](Element a, Element b) {
    auto da = digits(a), db = digits(b);
    std::size_t out = 0;
    for (std::size_t i = 0; i < k; ++i) out = out * p + (da[i] + db[i]) % p;
    return out;
  };
  return detail::build_group(n, mul, std::move(labels), name);
}

namespace detail {

inline bool parse_number(std::string_view s, std::size_t& out) {
  if (s.empty() || s.size() > 9) return false;
  out = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = out * 10 + static_cast<std::size_t>(c - '0');
  }
  return true;
}

}  // namespace detail

/// One factor name: C<n>, D<n> (order 2n), Q8, S<n>/A<n> (n <= 5), E<p>^<k>.
inline GroupPtr make_named(std::string_view spec) {
  const std::string text(spec);
  auto unknown = [&]() { return Error(Errc::UnknownSpec, "unknown group name '" + text + "'"); };
  if (text.empty()) throw unknown();
  if (text == "Q8") return quaternion_group();
  const char kind = text[0];
  const std::string_view rest = std::string_view(text).substr(1);
  std::size_t n = 0;
  if (kind == 'E') {
    const auto sep = rest.find_first_of("^,_");
    std::size_t p = 0, k = 0;
    if (sep == std::string_view::npos || !detail::parse_number(rest.substr(0, sep), p) ||
        !detail::parse_number(rest.substr(sep + 1), k))
      throw unknown();
    return elementary_abelian_group(p, k);
  }
  if (!detail::parse_number(rest, n)) throw unknown();
  switch (kind) {
    case 'C': return cyclic_group(n);
    case 'D': return dihedral_group(n);
    case 'S': return symmetric_group(static_cast<int>(n));
    case 'A': return alternating_group(static_cast<int>(n));
    default: throw unknown();
  }
}

/// Grammar: name ("x" name)*, e.g. "C3xC4", "D4", "S3xC5".
inline GroupPtr parse_group_spec(std::string_view spec) {
  std::vector<std::string> names;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == 'x') {
      if (i == start)
        throw Error(Errc::ParseError, "position " + std::to_string(i) + ": expected a group name in '" +
                                          std::string(spec) + "'");
      names.emplace_back(spec.substr(start, i - start));
      start = i + 1;
    } else if (std::isspace(static_cast<unsigned char>(spec[i]))) {
      throw Error(Errc::ParseError, "position " + std::to_string(i) + ": unexpected whitespace in '" +
                                        std::string(spec) + "'");
    }
  }
  if (names.size() == 1) return make_named(names.front());
  std::vector<GroupPtr> factors;
  for (const auto& n : names) factors.push_back(make_named(n));
  return direct_product(std::span<const GroupPtr>(factors));
}

}  // namespace autocomm
