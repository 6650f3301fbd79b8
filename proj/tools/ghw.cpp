// ghw: command-line front end for the group-homomorphism divisibility checks.
//
// Exit codes: 0 all verdicts passed, 1 some verdict failed, 2 bad input or
// engine error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ghw/construct.hpp"
#include "ghw/divisibility.hpp"
#include "ghw/harness.hpp"
#include "ghw/homs.hpp"
#include "ghw/pres_parser.hpp"
#include "ghw/selector.hpp"

namespace {

int build_group_cmd(std::string const& spec) {
  ghw::FiniteGroup G = ghw::build_group(spec);
  std::cout << "# " << G.name() << ", order " << G.order() << '\n';
  ghw::write_cayley_table(std::cout, G);
  return 0;
}

int count_cmd(std::string const& kind_name, std::string const& pres_path, std::optional<std::string> group,
              std::string const& selector) {
  ghw::FamilyKind kind = kind_name == "epi" ? ghw::FamilyKind::epi
                         : kind_name == "mono" ? ghw::FamilyKind::mono
                                               : ghw::FamilyKind::hom;
  ghw::InputBundle in = ghw::parse_inputs(pres_path);
  if (!group && !in.group)
    throw ghw::Error(ghw::ErrorKind::InvalidArgument, "no target group: pass --group or add a 'group' line");
  ghw::FiniteGroup G = group ? ghw::build_group(*group) : ghw::build_group(*in.group);
  ghw::Subgroup A = ghw::select_subgroup(G, selector);

  ghw::HomFamilySpec fs{in.pres, in.W, G, A, kind};
  ghw::Count const count = ghw::count_family(fs, ghw::budget_from_env());
  std::cout << kind_name << " count: " << count << '\n';

  // Counts of all three families so every clause gets a verdict.
  auto counted = [&](ghw::FamilyKind k) -> std::optional<ghw::Count> {
    if (k == kind) return count;
    if (k == ghw::FamilyKind::mono && !in.W.known_order) return std::nullopt;
    return ghw::count_family({in.pres, in.W, G, A, k}, ghw::budget_from_env());
  };
  ghw::DivisorReport r = ghw::predicted_divisors(in.pres, in.W, in.idx, G, A);
  r.fill_counts(*counted(ghw::FamilyKind::hom), *counted(ghw::FamilyKind::epi), counted(ghw::FamilyKind::mono));
  bool ok = true;
  for (auto const& c : r.claims) {
    if (c.kind != kind) continue;
    std::cout << "  " << c.clause << ": ";
    if (!c.applicable) {
      std::cout << "n/a (" << c.note << ")\n";
      continue;
    }
    std::cout << "divisor " << c.divisor << ", " << (c.verdict() ? "pass" : "FAIL") << '\n';
    ok = ok && c.verdict();
  }
  return ok ? 0 : 1;
}

int check_cmd(ghw::CheckSpec const& spec, ghw::ReportFormat fmt) {
  ghw::CheckOutcome o = ghw::run_check(spec);
  std::cout << ghw::format_report(o, fmt);
  std::cerr << ghw::to_string(spec.theorem) << ": " << o.total() << " checks in " << o.wall_seconds << " s\n";
  return o.failed == 0 ? 0 : 1;
}

int gcd_cmd(std::string const& group, ghw::Count n, std::string const& method) {
  ghw::GcdMethod m = method == "definition" ? ghw::GcdMethod::definition
                     : method == "both"     ? ghw::GcdMethod::both
                                            : ghw::GcdMethod::sylow;
  ghw::FiniteGroup G = ghw::build_group(group);
  std::cout << "GCD(" << G.name() << ", " << n << ") = " << ghw::gcd_group(G, n, m) << '\n';
  return 0;
}

int brauer_cmd(std::optional<std::string> group, std::size_t max_order) {
  ghw::CheckSpec spec;
  spec.theorem = ghw::Theorem::brauer;
  spec.max_order = max_order;
  if (group) spec.catalog = *group;
  return check_cmd(spec, ghw::ReportFormat::table);
}

int verify_cmd(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ghw::ParseError(path, 0, 0, "cannot open file");
  ghw::CheckOutcome o = ghw::verify_report(ghw::parse_csv_report(in, path));
  for (auto const& r : o.rows)
    if (!r.pass) std::cout << "FAIL " << r.instance << ": " << r.divisor << " does not divide " << r.count << '\n';
  std::cout << o.total() << " rows, " << o.passed << " passed, " << o.failed << " failed\n";
  return o.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting homomorphisms into finite groups and checking divisibility theorems"};
  app.require_subcommand(1);

  std::string spec_text;
  auto* build = app.add_subcommand("build-group", "Build a group and print its Cayley table");
  build->add_option("--spec", spec_text, "Group descriptor, e.g. S4, C3xS3, perm:(1 2 3);(1 2)")->required();

  std::string kind = "hom", pres, selector = "full";
  std::optional<std::string> group;
  auto* count = app.add_subcommand("count", "Count Hom/Epi/Mono(F, W; G, A) and check predicted divisors");
  count->add_option("--kind", kind)->check(CLI::IsMember({"hom", "epi", "mono"}));
  count->add_option("--pres", pres, "Presentation file")->required();
  count->add_option("--group", group, "Target group; defaults to the file's 'group' line");
  count->add_option("--A", selector, "Subgroup selector: full, trivial, gen:<labels>, order:<d>:<i>");

  ghw::CheckSpec cspec;
  std::string theorem, format = "table";
  std::optional<std::string> catalog, check_pres;
  std::optional<ghw::Count> nmax;
  std::vector<ghw::Count> ks;
  auto* check = app.add_subcommand("check", "Run a theorem-verification suite");
  check->add_option("--theorem", theorem)->required()->check([](std::string const& s) {
    return ghw::parse_theorem(s) ? std::string() : "unknown theorem '" + s + "'";
  });
  check->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  check->add_option("--catalog", catalog, "all, order<=N, or a comma-separated group list");
  check->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "jsonl"}));
  check->add_option("--pres", check_pres, "Presentation file for the fixture suites");
  check->add_option("--ks", ks, "Element-order constraints for gen-tuples")->delimiter(',');
  check->add_option("--max-order", cspec.max_order, "Largest group order for the brauer suite");

  ghw::Count n = 0;
  std::string method = "both";
  auto* gcd = app.add_subcommand("gcd", "Compute GCD(G, n)");
  gcd->add_option("--group", spec_text)->required();
  gcd->add_option("--n", n)->required();
  gcd->add_option("--method", method)->check(CLI::IsMember({"definition", "sylow", "both"}));

  std::optional<std::string> brauer_group;
  std::size_t max_order = 24;
  auto* brauer = app.add_subcommand("brauer", "Search Brauer-lemma witnesses");
  brauer->add_option("--group", brauer_group, "Group descriptor; default is the catalog");
  brauer->add_option("--max-order", max_order);

  std::string report;
  auto* verify = app.add_subcommand("verify", "Re-check a CSV report");
  verify->add_option("--report", report)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return build_group_cmd(spec_text);
    if (*count) return count_cmd(kind, pres, group, selector);
    if (*check) {
      cspec.theorem = *ghw::parse_theorem(theorem);
      cspec.catalog = catalog;
      cspec.nmax = nmax;
      if (!ks.empty()) cspec.ks = ks;
      cspec.presentation_file = check_pres;
      cspec.budget = ghw::budget_from_env();
      auto fmt = format == "csv" ? ghw::ReportFormat::csv
                 : format == "jsonl" ? ghw::ReportFormat::jsonl
                                     : ghw::ReportFormat::table;
      return check_cmd(cspec, fmt);
    }
    if (*gcd) return gcd_cmd(spec_text, n, method);
    if (*brauer) return brauer_cmd(brauer_group, max_order);
    if (*verify) return verify_cmd(report);
  } catch (ghw::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
