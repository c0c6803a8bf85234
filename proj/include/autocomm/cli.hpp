#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "autocomm/autoisoclinism.hpp"
#include "autocomm/automorphism.hpp"
#include "autocomm/group.hpp"
#include "autocomm/io.hpp"
#include "autocomm/named.hpp"
#include "autocomm/probability.hpp"
#include "autocomm/verifier.hpp"

namespace autocomm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandRequest {
  std::string command;  // compute | distribution | verify | autoiso | catalog | aut
  std::string group;
  std::string subgroup;
  std::string g;
  std::string format = "text";
  std::string out;
  std::size_t max_order = kDefaultMaxOrder;
  std::string pair2_group;
  std::string pair2_subgroup;
  bool generators = false;
  unsigned threads = 1;
};

struct ParsedSpecs {
  GroupPtr k;
  Subgroup h;
  Element g = 0;
};

/// A named spec, or a path to a Cayley table file.
inline GroupPtr resolve_group(const std::string& spec) {
  if (spec.empty()) throw Error(Errc::ParseError, "position 0: empty group spec");
  std::error_code ec;
  if (spec.find_first_of("/.") != std::string::npos || std::filesystem::is_regular_file(spec, ec))
    return read_cayley_file(spec);
  return parse_group_spec(spec);
}

inline Element resolve_label(const Group& k, const std::string& label) {
  if (auto x = k.find(label)) return *x;
  throw Error(Errc::UnknownLabel, "'" + label + "' is not an element of " + k.name());
}

/// Generator labels separated by top-level commas; empty means H = K.
inline Subgroup resolve_subgroup(const GroupPtr& k, const std::string& spec) {
  if (spec.empty()) return Subgroup::whole(k);
  std::vector<Element> gens;
  std::size_t position = 0;
  for (const auto& raw : split_top_level(spec)) {
    const auto b = raw.find_first_not_of(" \t"), e = raw.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw Error(Errc::NotASubgroupSpec, "position " + std::to_string(position) + ": empty generator in '" + spec + "'");
    gens.push_back(resolve_label(*k, raw.substr(b, e - b + 1)));
    position += raw.size() + 1;
  }
  return subgroup_generated(k, std::span<const Element>(gens));
}

inline ParsedSpecs parse_specs(const std::string& group, const std::string& subgroup, const std::string& g) {
  GroupPtr k = resolve_group(group);
  Subgroup h = resolve_subgroup(k, subgroup);
  const Element element = g.empty() ? Element{0} : resolve_label(*k, g);
  return {std::move(k), std::move(h), element};
}

inline ParsedSpecs parse_specs(const CommandRequest& r) { return parse_specs(r.group, r.subgroup, r.g); }

inline std::string decimal(const Rational& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << r.to_double();
  return os.str();
}

inline std::string display(const Rational& r) { return r.str() + " (~" + decimal(r) + ")"; }

namespace detail {

inline void require_format(const std::string& format) {
  if (format != "text" && format != "json" && format != "csv")
    throw Error(Errc::ParseError, "unknown format '" + format + "' (text, json, csv)");
}

inline void emit(const CommandRequest& r, std::ostream& out, const std::string& body) {
  if (r.out.empty()) {
    out << body;
    return;
  }
  std::ofstream file(r.out, std::ios::binary);
  if (!file) throw Error(Errc::ParseError, "cannot write " + r.out);
  file << body;
}

inline int compute(const CommandRequest& r, std::ostream& out) {
  const ParsedSpecs s = parse_specs(r);
  const AutomorphismGroup aut = automorphism_group(s.k);
  const Rational value = pr_g_formula(s.h, aut, s.g);
  ensure(value == pr_g_bruteforce(s.h, aut, s.g), "formula and brute force agree");
  std::ostringstream body;
  if (r.format == "json") {
    Json j{{"group", s.k->name()}, {"subgroup", s.h.describe()}, {"g", s.k->label(s.g)}};
    j.update(rational_to_json(value));
    body << j.dump(2) << "\n";
  } else if (r.format == "csv") {
    write_csv_row(body, {"group", "subgroup", "g_label", "num", "den"});
    write_csv_row(body, {s.k->name(), s.h.describe(), s.k->label(s.g), value.numerator().str(), value.denominator().str()});
  } else {
    body << display(value) << "\n";
  }
  emit(r, out, body.str());
  return kExitOk;
}

inline int distribution_table(const CommandRequest& r, std::ostream& out) {
  const ParsedSpecs s = parse_specs(r);
  const AutomorphismGroup aut = automorphism_group(s.k);
  const ProbabilityProfile p = distribution(s.h, aut);
  std::ostringstream body;
  if (r.format == "json") {
    body << profile_to_json(p).dump(2) << "\n";
  } else if (r.format == "csv") {
    profile_to_csv(body, p);
  } else {
    body << "K = " << s.k->name() << ", H = " << s.h.describe() << ", |Aut(K)| = " << aut.order() << "\n";
    std::size_t width = 1;
    for (const auto& l : s.k->labels()) width = std::max(width, l.size());
    for (Element g = 0; g < p.values.size(); ++g)
      body << std::left << std::setw(static_cast<int>(width) + 2) << s.k->label(g) << display(p[g]) << "\n";
  }
  emit(r, out, body.str());
  return kExitOk;
}

inline int verify(const CommandRequest& r, std::ostream& out) {
  const VerificationReport report = run_catalog(default_catalog(r.max_order), r.threads);
  std::ostringstream body;
  if (r.format == "csv") {
    report_to_csv(body, report);
  } else if (r.format == "json" || !r.out.empty()) {
    body << report_to_json(report).dump(2) << "\n";
  }
  std::ostringstream summary;
  summary << "groups " << report.catalog.groups.size() << ", checks " << report.summary.total << ", passed "
          << report.summary.passed << ", counterexamples " << report.summary.counterexamples << ", not applicable "
          << report.summary.not_applicable << ", degenerate " << report.summary.degenerate << ", flagged "
          << report.summary.flagged << "\n";
  for (const auto& c : report.counterexamples)
    summary << "counterexample " << c.name << " K=" << c.instance.group << " H=" << c.instance.subgroup
            << (c.instance.element.empty() ? "" : " g=" + c.instance.element) << ": " << c.lhs << " "
            << relation_symbol(c.relation) << " " << c.rhs << (c.holds ? " (equality condition mismatch)" : "") << "\n";
  if (!r.out.empty()) {
    emit(r, out, body.str());
    out << summary.str();
  } else {
    out << (body.str().empty() ? summary.str() : body.str());
  }
  return report.ok() ? kExitOk : kExitFailure;
}

inline int catalog(const CommandRequest& r, std::ostream& out) {
  const CatalogSpec spec = default_catalog(r.max_order);
  std::ostringstream body;
  Json rows = Json::array();
  if (r.format == "csv") write_csv_row(body, {"group", "order", "aut_order", "subgroups"});
  for (const auto& name : spec.groups) {
    const GroupPtr k = parse_group_spec(name);
    const std::size_t aut = automorphism_group(k).order();
    const std::size_t subs = all_subgroups(k).size();
    if (r.format == "json")
      rows.push_back({{"group", name}, {"order", k->order()}, {"aut_order", aut}, {"subgroups", subs}});
    else if (r.format == "csv")
      write_csv_row(body, {name, std::to_string(k->order()), std::to_string(aut), std::to_string(subs)});
    else
      body << std::left << std::setw(10) << name << " |K| = " << std::setw(3) << k->order() << " |Aut| = "
           << std::setw(4) << aut << " subgroups " << subs << "\n";
  }
  if (r.format == "json") body << Json{{"max_order", spec.max_order}, {"groups", rows}}.dump(2) << "\n";
  emit(r, out, body.str());
  return kExitOk;
}

inline int aut(const CommandRequest& r, std::ostream& out) {
  const GroupPtr k = resolve_group(r.group);
  const AutomorphismGroup a = automorphism_group(k);
  const GroupPtr abstract = aut_group_as_abstract_group(a);
  const std::vector<Element> gens = minimal_generating_set(*abstract);
  std::ostringstream body;
  if (r.format == "json") {
    Json j = aut_group_to_json(a);
    if (r.generators) {
      Json g = Json::array();
      for (Element x : gens) g.push_back({{"label", abstract->label(x)}, {"images", a[x].images}});
      j["generators"] = std::move(g);
    }
    body << j.dump(2) << "\n";
  } else if (r.format == "csv") {
    write_csv_row(body, {"group", "aut_order", "generator"});
    if (r.generators)
      for (Element x : gens) write_csv_row(body, {k->name(), std::to_string(a.order()), abstract->label(x)});
    else
      write_csv_row(body, {k->name(), std::to_string(a.order()), ""});
  } else {
    body << "|Aut(" << k->name() << ")| = " << a.order() << "\n";
    if (r.generators)
      for (Element x : gens) body << "  " << abstract->label(x) << "\n";
  }
  emit(r, out, body.str());
  return kExitOk;
}

inline int autoiso(const CommandRequest& r, std::ostream& out) {
  if (r.pair2_group.empty()) throw Error(Errc::ParseError, "autoiso needs --pair2-group");
  const ParsedSpecs one = parse_specs(r.group, r.subgroup, "");
  const ParsedSpecs two = parse_specs(r.pair2_group, r.pair2_subgroup, "");
  const AutomorphismGroup aut1 = automorphism_group(one.k);
  const AutomorphismGroup aut2 = automorphism_group(two.k);
  const PairSide side1(one.h, aut1), side2(two.h, aut2);
  const AutoisoclinismResult result = find_autoisoclinism(side1, side2);
  std::vector<BoundCheck> checks;
  if (result.witness) checks = verify_invariance(*result.witness, side1, side2);
  const bool invariance_ok = std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed(); });

  std::ostringstream body;
  if (r.format == "json") {
    Json j{{"status", search_status_name(result.status)}, {"note", result.note}, {"invariance_holds", invariance_ok}};
    if (result.witness) j["witness"] = witness_to_json(*result.witness, side1, side2);
    body << j.dump(2) << "\n";
  } else if (r.format == "csv") {
    write_csv_row(body, {"map", "from", "to"});
    if (result.witness) {
      const auto& w = *result.witness;
      for (const auto& [name, f] : {std::pair<std::string, const Isomorphism*>{"psi", &w.psi}, {"gamma", &w.gamma}})
        for (Element x = 0; x < f->map.size(); ++x)
          write_csv_row(body, {name, f->source->label(x), f->target->label(f->map[x])});
      for (Element g : w.domain.embedding)
        write_csv_row(body, {"beta", one.k->label(g), two.k->label(w.beta_of(g))});
    }
  } else if (result.witness) {
    const auto& w = *result.witness;
    body << "autoisoclinic: " << side1.describe() << " ~ " << side2.describe() << "\n";
    body << "psi:";
    for (Element x = 0; x < w.psi.map.size(); ++x)
      body << " " << w.psi.source->label(x) << "->" << w.psi.target->label(w.psi(x));
    body << "\ngamma:";
    for (Element x = 0; x < w.gamma.map.size(); ++x)
      body << " " << w.gamma.source->label(x) << "->" << w.gamma.target->label(w.gamma(x));
    body << "\nbeta:";
    for (Element g : w.domain.embedding) body << " " << one.k->label(g) << "->" << two.k->label(w.beta_of(g));
    body << "\ninvariance " << (invariance_ok ? "holds" : "FAILS") << " on " << w.domain.embedding.size()
         << " elements\n";
  } else {
    body << (result.status == SearchStatus::BudgetExceeded ? "budget exceeded" : "none") << " (" << result.note
         << ")\n";
  }
  emit(r, out, body.str());
  return result.witness && invariance_ok ? kExitOk : kExitFailure;
}

}  // namespace detail

/// Runs one command. Usage and input errors give 2, counterexamples,
/// absent witnesses and internal invariant failures give 1.
inline int run(const CommandRequest& r, std::ostream& out, std::ostream& err) {
  try {
    detail::require_format(r.format);
    if (r.max_order > kHardMaxOrder)
      throw Error(Errc::SizeLimitExceeded, "--max-order is capped at " + std::to_string(kHardMaxOrder));
    const bool needs_group = r.command == "compute" || r.command == "distribution" || r.command == "aut" ||
                             r.command == "autoiso";
    if (needs_group && r.group.empty()) throw Error(Errc::ParseError, r.command + " needs --group");
    if (r.command == "compute") return detail::compute(r, out);
    if (r.command == "distribution") return detail::distribution_table(r, out);
    if (r.command == "verify") return detail::verify(r, out);
    if (r.command == "catalog") return detail::catalog(r, out);
    if (r.command == "aut") return detail::aut(r, out);
    if (r.command == "autoiso") return detail::autoiso(r, out);
    throw Error(Errc::ParseError, "unknown command '" + r.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InvariantViolation ? kExitFailure : kExitUsage;
  }
}

}  // namespace autocomm::cli
