#pragma once

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autocomm/autoisoclinism.hpp"
#include "autocomm/automorphism.hpp"
#include "autocomm/group.hpp"
#include "autocomm/probability.hpp"
#include "autocomm/rational.hpp"
#include "autocomm/verifier.hpp"

namespace autocomm {

using Json = nlohmann::ordered_json;

/// Splits on commas that are not inside parentheses or brackets.
inline std::vector<std::string> split_top_level(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

// ---------------------------------------------------------------------------
// Cayley table files: n, then n rows of n indices, then optional labels.

inline GroupPtr read_cayley_table(std::istream& in, std::string name = "") {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) { return Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what); };

  if (!next_line()) throw fail("missing order line");
  std::size_t n = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n) || (ls >> extra) || n == 0) throw fail("expected a positive order");
  }
  if (n > Group::kMaxOrder) throw Error(Errc::SizeLimitExceeded, "order " + std::to_string(n) + " exceeds " + std::to_string(Group::kMaxOrder));
  std::vector<std::vector<Element>> rows;
  for (std::size_t r = 0; r < n; ++r) {
    if (!next_line()) throw fail("expected " + std::to_string(n) + " table rows, got " + std::to_string(r));
    std::istringstream ls(line);
    std::vector<Element> row;
    long long v = 0;
    while (ls >> v) {
      if (v < 0 || v > std::numeric_limits<Element>::max()) throw fail("entry out of range");
      row.push_back(static_cast<Element>(v));
    }
    if (!ls.eof()) throw fail("non-numeric table entry");
    if (row.size() != n) throw fail("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (next_line()) {
    for (auto& l : split_top_level(line)) {
      const auto b = l.find_first_not_of(" \t\r"), e = l.find_last_not_of(" \t\r");
      labels.push_back(b == std::string::npos ? std::string() : l.substr(b, e - b + 1));
    }
    if (labels.size() != n) throw fail("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    if (next_line()) throw fail("unexpected trailing content");
  }
  return from_cayley_table(rows, std::move(labels), std::move(name));
}

inline GroupPtr read_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return read_cayley_table(in, name);
}

inline void write_cayley_table(std::ostream& out, const Group& g) {
  out << g.order() << "\n";
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << "\n";
  }
  for (Element a = 0; a < g.order(); ++a) out << (a ? "," : "") << g.label(a);
  out << "\n";
}

// ---------------------------------------------------------------------------
// JSON

/// Numbers that fit in int64 stay numbers; larger ones become strings.
inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline Json rational_to_json(const Rational& r) {
  return Json{{"num", big_to_json(r.numerator())}, {"den", big_to_json(r.denominator())}};
}

inline Json automorphism_to_json(const Automorphism& a) { return Json(a.images); }

inline Json aut_group_to_json(const AutomorphismGroup& aut) {
  Json elements = Json::array();
  for (const auto& a : aut.elements()) elements.push_back(automorphism_to_json(a));
  return Json{{"group", aut.group().name()},
              {"group_order", aut.group().order()},
              {"order", aut.order()},
              {"automorphisms", std::move(elements)}};
}

inline Json profile_to_json(const ProbabilityProfile& p) {
  Json values = Json::array();
  for (Element g = 0; g < p.values.size(); ++g) {
    Json row{{"g_label", p.group->label(g)}};
    row.update(rational_to_json(p.values[g]));
    values.push_back(std::move(row));
  }
  Json support = Json::array();
  for (Element g : p.support) support.push_back(p.group->label(g));
  return Json{{"group", p.group->name()},
              {"subgroup", p.subgroup},
              {"aut_order", p.aut_order},
              {"values", std::move(values)},
              {"support", std::move(support)}};
}

inline Json check_to_json(const BoundCheck& c) {
  Json j{{"name", c.name},
         {"group", c.instance.group},
         {"subgroup", c.instance.subgroup},
         {"g", c.instance.element},
         {"relation", relation_symbol(c.relation)},
         {"lhs", rational_to_json(c.lhs)},
         {"rhs", rational_to_json(c.rhs)},
         {"holds", c.holds},
         {"equality", c.equality},
         {"equality_condition_holds", nullptr},
         {"link", link_name(c.link)},
         {"status", status_name(c.status)},
         {"passed", c.passed()},
         {"note", c.note}};
  if (c.equality_condition_holds) j["equality_condition_holds"] = *c.equality_condition_holds;
  return j;
}

inline Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array(), counterexamples = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  for (const auto& c : r.counterexamples) counterexamples.push_back(check_to_json(c));
  return Json{{"version", r.version},
              {"catalog", {{"groups", r.catalog.groups}, {"max_order", r.catalog.max_order}}},
              {"summary",
               {{"total", r.summary.total},
                {"checked", r.summary.checked},
                {"passed", r.summary.passed},
                {"counterexamples", r.summary.counterexamples},
                {"not_applicable", r.summary.not_applicable},
                {"degenerate", r.summary.degenerate},
                {"flagged", r.summary.flagged}}},
              {"counterexamples", std::move(counterexamples)},
              {"checks", std::move(checks)}};
}

inline Json isomorphism_to_json(const Isomorphism& f) {
  Json map = Json::object();
  for (Element x = 0; x < f.map.size(); ++x) map[f.source->label(x)] = f.target->label(f.map[x]);
  return map;
}

inline Json witness_to_json(const AutoisoclinismWitness& w, const PairSide& one, const PairSide& two) {
  Json beta = Json::object();
  for (Element g : w.domain.embedding) beta[one.h().parent().label(g)] = two.h().parent().label(w.beta_of(g));
  const ProbabilityProfile p1 = distribution(one.h(), one.aut());
  const ProbabilityProfile p2 = distribution(two.h(), two.aut());
  Json profile = Json::array();
  for (Element g : w.domain.embedding) {
    const Element image = w.beta_of(g);
    profile.push_back({{"g", one.h().parent().label(g)},
                       {"beta_g", two.h().parent().label(image)},
                       {"pr_g", rational_to_json(p1[g])},
                       {"pr_beta_g", rational_to_json(p2[image])}});
  }
  return Json{{"pair1", one.describe()},
              {"pair2", two.describe()},
              {"psi", isomorphism_to_json(w.psi)},
              {"gamma", isomorphism_to_json(w.gamma)},
              {"beta", std::move(beta)},
              {"profile", std::move(profile)}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << "\n";
}

inline void profile_to_csv(std::ostream& out, const ProbabilityProfile& p) {
  write_csv_row(out, {"group", "subgroup", "aut_order", "g_label", "num", "den", "in_support"});
  for (Element g = 0; g < p.values.size(); ++g)
    write_csv_row(out, {p.group->name(), p.subgroup, std::to_string(p.aut_order), p.group->label(g),
                        p.values[g].numerator().str(), p.values[g].denominator().str(),
                        p.values[g].is_zero() ? "false" : "true"});
}

inline void report_to_csv(std::ostream& out, const VerificationReport& r) {
  write_csv_row(out, {"name", "group", "subgroup", "g", "relation", "lhs_num", "lhs_den", "rhs_num", "rhs_den",
                      "holds", "equality", "equality_condition_holds", "link", "status", "passed", "note"});
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  for (const auto& c : r.checks)
    write_csv_row(out, {c.name, c.instance.group, c.instance.subgroup, c.instance.element,
                        std::string(relation_symbol(c.relation)), c.lhs.numerator().str(), c.lhs.denominator().str(),
                        c.rhs.numerator().str(), c.rhs.denominator().str(), flag(c.holds), flag(c.equality),
                        c.equality_condition_holds ? flag(*c.equality_condition_holds) : std::string(),
                        std::string(link_name(c.link)), std::string(status_name(c.status)), flag(c.passed()), c.note});
}

}  // namespace autocomm
