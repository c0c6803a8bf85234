#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "autocomm/cli.hpp"

namespace {

unsigned threads_from_env() {
  const char* raw = std::getenv("AUTOCOMM_THREADS");
  if (!raw || !*raw) return 1;
  try {
    const long v = std::stol(raw);
    return v < 1 ? 1u : static_cast<unsigned>(v);
  } catch (...) {
    return 1;
  }
}

void add_common(CLI::App* sub, autocomm::cli::CommandRequest& r) {
  sub->add_option("--format", r.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", r.out, "write output to this file");
}

void add_pair(CLI::App* sub, autocomm::cli::CommandRequest& r, bool with_g) {
  sub->add_option("--group", r.group, "group spec (C4, D4, Q8, S3xC5, ...) or Cayley table file")->required();
  sub->add_option("--subgroup", r.subgroup, "comma-separated generator labels; default H = K");
  if (with_g) sub->add_option("--g", r.g, "element label; default identity");
}

}  // namespace

int main(int argc, char** argv) {
  autocomm::cli::CommandRequest r;
  r.threads = threads_from_env();

  CLI::App app{"autocommuting probability toolkit"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "Pr_g(H, Aut(K)) for one element");
  add_pair(compute, r, true);
  add_common(compute, r);

  auto* dist = app.add_subcommand("distribution", "Pr_g(H, Aut(K)) for every g in K");
  add_pair(dist, r, false);
  add_common(dist, r);

  auto* verify = app.add_subcommand("verify", "check every bound over the catalog");
  verify->add_option("--max-order", r.max_order, "catalog order cap (at most 48)");
  add_common(verify, r);

  auto* catalog = app.add_subcommand("catalog", "list the catalog groups");
  catalog->add_option("--max-order", r.max_order, "catalog order cap (at most 48)");
  add_common(catalog, r);

  auto* aut = app.add_subcommand("aut", "order of Aut(K)");
  aut->add_option("--group", r.group, "group spec or Cayley table file")->required();
  aut->add_flag("--generators", r.generators, "list a minimal generating set");
  add_common(aut, r);

  auto* autoiso = app.add_subcommand("autoiso", "search for an autoisoclinism between two pairs");
  add_pair(autoiso, r, false);
  autoiso->add_option("--pair2-group", r.pair2_group, "second group")->required();
  autoiso->add_option("--pair2-subgroup", r.pair2_subgroup, "second subgroup generators");
  add_common(autoiso, r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : autocomm::cli::kExitUsage;
  }
  r.command = app.get_subcommands().front()->get_name();
  return autocomm::cli::run(r, std::cout, std::cerr);
}
