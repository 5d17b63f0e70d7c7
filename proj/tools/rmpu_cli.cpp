#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

void add_common(CLI::App* cmd, rmpu::cli::Options& o) {
  cmd->add_option("--k", o.k, "replica order(s)")->delimiter(',')->check(CLI::Range(1, 16));
  cmd->add_option("--d", o.d, "local dimension");
  cmd->add_option("--r", o.r, "overlap exponent, chi = d^r");
  cmd->add_option("--n", o.n, "number of staircase gates");
  cmd->add_option("--chi-list", o.chi_list, "bond dimensions (powers of d)")->delimiter(',');
  cmd->add_option("--samples", o.samples, "Monte Carlo samples");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--out", o.out, "output file (stdout if omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rmpu::cli;
  Options o;
  for (int i = 1; i < argc; ++i) o.invocation += std::string(argv[i]) + '\x1f';

  CLI::App app{"Weingarten calculus, free probability and RMPU OTOC predictions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RMPU_VERSION);

  std::map<std::string, int (*)(const Options&)> handlers;
  auto sub = [&](const std::string& name, const std::string& help, int (*fn)(const Options&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, o);
    handlers[name] = fn;
    return cmd;
  };

  CLI::App* wg = sub("wg-table", "exact Weingarten class values as a JSON cache file", wg_table);
  wg->add_option("--D", o.dim, "dimension (default d)");
  sub("nc-count", "non-crossing, 2-chain and genus-one counts up to --k", nc_count);
  CLI::App* cu = sub("cumulants", "free cumulants of a moment vector", cumulants);
  cu->add_option("--moments", o.moments_a, "comma list of rationals or @file.json")->required();
  CLI::App* oe = sub("otoc-exact", "exact Haar and RMPU OTOCs with leading and subleading predictions", otoc_exact);
  oe->add_option("--moments-a", o.moments_a, "moments of A (comma list or @file.json)");
  oe->add_option("--moments-b", o.moments_b, "moments of B (comma list or @file.json)");
  oe->add_option("--D", o.dim, "also evaluate the global Haar value at this dimension");
  CLI::App* om = sub("otoc-mc", "Monte Carlo OTOC for the staircase ensemble", otoc_mc);
  om->add_option("--observable-a", o.observable_a, "pauli string (e.g. Z), projector, shifted_projector, random_hermitian or @file.json");
  om->add_option("--observable-b", o.observable_b, "same choices as --observable-a");
  om->add_option("--variant", o.variant, "staircase or two_floor");
  om->add_option("--D", o.dim, "use the global Haar ensemble at this dimension instead");
  CLI::App* fp = sub("frame-potential", "exact, asymptotic and optional Monte Carlo frame potentials", frame_potential);
  fp->add_option("--D", o.dim, "global Haar Monte Carlo at this dimension");
  CLI::App* vi = sub("verify-identity", "exhaustive Pauli check of the frame-potential/OTOC identity", verify_identity);
  vi->add_option("--D", o.dim, "dimension (power of two)");
  CLI::App* tr = sub("table-report", "recompute a results table next to its reference formula", table_report);
  tr->add_option("table", o.table, "table1_row1, table1_row2 or table2")->required();
  CLI::App* run = sub("run", "execute an experiment manifest", run_manifest);
  run->add_option("--manifest", o.manifest, "manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()) << '\n';
    return 2;
  }
  for (const auto& [name, fn] : handlers) {
    if (!app.got_subcommand(name)) continue;
    try {
      return fn(o);
    } catch (const rmpu::ResourceError& e) {
      std::cout << error_json("resource", e.what()) << '\n';
    } catch (const rmpu::UnsupportedError& e) {
      std::cout << error_json("unsupported", e.what()) << '\n';
    } catch (const std::invalid_argument& e) {
      std::cout << error_json("invalid_argument", e.what()) << '\n';
    } catch (const std::domain_error& e) {
      std::cout << error_json("domain", e.what()) << '\n';
    } catch (const std::exception& e) {
      std::cout << error_json("internal", e.what()) << '\n';
    }
    return 2;
  }
  return 2;
}
