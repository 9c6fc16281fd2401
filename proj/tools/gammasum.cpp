// gammasum: curves of the Gamma-sum PDF/CDF, MRC outage and BER, raw
// H-family values and Monte Carlo validation tables.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gammasum/cli.hpp"

namespace gs = gammasum;
namespace cli = gammasum::cli;

namespace {

struct Flags {
  std::vector<double> m;
  std::vector<double> omega;
  std::string grid;
  std::string snr;
  std::vector<std::string> mods;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  std::optional<double> anchor, height, bend, rel_tol, abs_tol;
  std::optional<int> max_refinements;
  bool force_general = false;
  bool print_config = false;

  // hfun
  std::string kind = "g";
  int hm = 1, hn = 0, hp = 0, hq = 0;
  std::vector<double> upper, lower;
  double z = 1.0;
};

void add_branches(CLI::App* app, Flags& f) {
  app->add_option("--m", f.m, "Nakagami m per branch (comma separated)")
      ->delimiter(',')
      ->required();
  app->add_option("--omega", f.omega, "Mean SNR per branch (default 1 each)")->delimiter(',');
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output,-o", f.output, "Output file (default stdout)");
  app->add_option("--anchor", f.anchor, "Contour anchor");
  app->add_option("--height", f.height, "Contour height");
  app->add_option("--bend", f.bend, "Contour bend distance");
  app->add_option("--rel-tol", f.rel_tol, "Relative tolerance");
  app->add_option("--abs-tol", f.abs_tol, "Absolute tolerance");
  app->add_option("--max-refinements", f.max_refinements, "Contour extensions");
  app->add_flag("--force-general", f.force_general, "Skip integer-m shortcuts");
  app->add_flag("--print-config", f.print_config, "Print the job as a config file and exit");
}

std::vector<gs::HParam> triplets(const std::vector<double>& xs, const char* flag) {
  if (xs.size() % 3 != 0) {
    throw gs::ParseError(std::string(flag) + ": expected offset,scale,exponent triplets");
  }
  std::vector<gs::HParam> out;
  for (std::size_t i = 0; i < xs.size(); i += 3) out.push_back({xs[i], xs[i + 1], xs[i + 2]});
  return out;
}

cli::JobSpec build(cli::Command cmd, const Flags& f) {
  cli::JobSpec job;
  job.command = cmd;
  job.m = f.m;
  job.omega = f.omega;
  job.format = f.format == "json" ? cli::Format::Json : cli::Format::Csv;
  job.output = f.output;
  job.force_general = f.force_general;
  job.contour = {f.anchor, f.height, f.bend, f.rel_tol, f.abs_tol, f.max_refinements};
  switch (cmd) {
    case cli::Command::Ber:
      job.grid = cli::parse_grid(f.snr.empty() ? "0" : f.snr);
      job.grid_unit = cli::GridUnit::SnrDb;
      for (const auto& name : f.mods) {
        const auto mod = gs::modulation_from_name(name);
        if (!mod) {
          throw gs::ParseError("--mod: unknown modulation '" + name + "' (expected one of " +
                               cli::modulation_names() + ")");
        }
        job.modulations.push_back(*mod);
      }
      break;
    case cli::Command::Validate:
      job.seed = f.seed;
      job.samples = f.samples;
      if (!f.grid.empty()) job.grid = cli::parse_grid(f.grid);
      break;
    case cli::Command::Hfun: {
      const auto kind = gs::parse_hkind(f.kind);
      if (!kind) throw gs::ParseError("--kind: expected g, h, hbar or hhat");
      job.hfun.kind = *kind;
      job.hfun.m = f.hm;
      job.hfun.n = f.hn;
      job.hfun.upper = triplets(f.upper, "--upper");
      job.hfun.lower = triplets(f.lower, "--lower");
      job.hfun.z = f.z;
      if (static_cast<int>(job.hfun.upper.size()) != f.hp) {
        throw gs::ParseError("--p: does not match the number of --upper triplets");
      }
      if (static_cast<int>(job.hfun.lower.size()) != f.hq) {
        throw gs::ParseError("--q: does not match the number of --lower triplets");
      }
      break;
    }
    default:
      job.grid = cli::parse_grid(f.grid);
      break;
  }
  cli::validate(job);
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums of Gamma variates, MRC outage and BER via Mellin-Barnes integrals"};
  app.require_subcommand(1);
  Flags f;

  auto* pdf = app.add_subcommand("pdf", "Density of the sum");
  auto* cdf = app.add_subcommand("cdf", "Distribution function of the sum");
  auto* outage = app.add_subcommand("outage", "MRC outage probability vs threshold");
  for (auto* sub : {pdf, cdf, outage}) {
    add_branches(sub, f);
    sub->add_option("--grid", f.grid, "y grid start:stop:points")->required();
    add_common(sub, f);
  }

  auto* ber = app.add_subcommand("ber", "Average BER vs per-branch SNR (dB)");
  add_branches(ber, f);
  ber->add_option("--snr", f.snr, "SNR grid start:stop:points in dB")->required();
  ber->add_option("--mod", f.mods, "Modulations: cbfsk, cbpsk, nbfsk, dbpsk")
      ->delimiter(',')
      ->required();
  add_common(ber, f);

  auto* hfun = app.add_subcommand("hfun", "One value of a Mellin-Barnes family member");
  hfun->add_option("--kind", f.kind, "g, h, hbar or hhat");
  hfun->add_option("--m", f.hm, "m index");
  hfun->add_option("--n", f.hn, "n index");
  hfun->add_option("--p", f.hp, "Number of upper parameters");
  hfun->add_option("--q", f.hq, "Number of lower parameters");
  hfun->add_option("--upper", f.upper, "Upper triplets offset,scale,exponent,...")
      ->delimiter(',');
  hfun->add_option("--lower", f.lower, "Lower triplets offset,scale,exponent,...")
      ->delimiter(',');
  hfun->add_option("--z", f.z, "Argument (> 0)");
  add_common(hfun, f);

  auto* validate = app.add_subcommand("validate", "Empirical vs analytic CDF table");
  add_branches(validate, f);
  validate->add_option("--seed", f.seed, "RNG seed")->required();
  validate->add_option("--samples", f.samples, "Number of samples");
  validate->add_option("--grid", f.grid, "Table grid start:stop:points (default auto)");
  add_common(validate, f);

  std::string config;
  auto* run = app.add_subcommand("run", "Run a JSON job file");
  run->add_option("config", config, "Job file")->required();
  run->add_option("--output,-o", f.output, "Override the output path");
  run->add_flag("--print-config", f.print_config, "Print the parsed job and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInvalid;
  }

  cli::JobSpec job;
  try {
    if (run->parsed()) {
      job = cli::parse_config(config);
      if (!f.output.empty()) job.output = f.output;
    } else {
      const std::pair<CLI::App*, cli::Command> subs[] = {
          {pdf, cli::Command::Pdf}, {cdf, cli::Command::Cdf},
          {outage, cli::Command::Outage}, {ber, cli::Command::Ber},
          {hfun, cli::Command::Hfun}, {validate, cli::Command::Validate}};
      for (const auto& [sub, cmd] : subs) {
        if (sub->parsed()) job = build(cmd, f);
      }
    }
  } catch (const gs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvalid;
  }

  if (f.print_config) {
    std::cout << cli::serialize(job);
    return cli::kExitOk;
  }
  return cli::run(job, std::cout, std::cerr);
}
