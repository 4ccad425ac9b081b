#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "intranoise/cli.hpp"

using namespace intranoise;
using namespace intranoise::cli;

namespace {

const std::map<std::string, ChannelKind> kChannels{{"ad", ChannelKind::AmplitudeDamping},
                                                   {"pd", ChannelKind::PhaseDamping},
                                                   {"dp", ChannelKind::Depolarizing}};
const std::map<std::string, Locality> kLocalities{{"intra", Locality::Intraparticle},
                                                  {"inter", Locality::Interparticle}};
const std::map<std::string, Format> kFormats{{"csv", Format::Csv}, {"json", Format::Json}};

struct Flags {
  RunConfig cfg;
  std::string out_path;
};

void add_state(CLI::App* sub, Flags& f) {
  sub->add_option("--state", f.cfg.state,
                  "a,b,c,d | a_re,a_im,...,d_im | polar:|a|,th_a,...,|d|,th_d (degrees)")
      ->required();
  sub->add_flag("--normalize", f.cfg.normalize, "rescale the amplitudes to unit norm");
}

void add_grid(CLI::App* sub, Flags& f) {
  sub->add_option("--p-min", f.cfg.grid.p_min, "first channel parameter");
  sub->add_option("--p-max", f.cfg.grid.p_max, "last channel parameter");
  sub->add_option("--steps", f.cfg.grid.steps, "number of grid points");
}

void add_channel(CLI::App* sub, Flags& f, bool required) {
  auto* opt = sub->add_option("--channel", f.cfg.channel, "ad | pd | dp")
                  ->transform(CLI::CheckedTransformer(kChannels, CLI::ignore_case));
  if (required) opt->required();
}

void add_locality(CLI::App* sub, Flags& f, bool required) {
  auto* opt = sub->add_option("--locality", f.cfg.locality, "intra | inter")
                  ->transform(CLI::CheckedTransformer(kLocalities, CLI::ignore_case));
  if (required) opt->required();
}

void add_output(CLI::App* sub, Flags& f) {
  sub->add_option("--format", f.cfg.format, "csv | json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  sub->add_option("--out", f.out_path, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intraparticle and interparticle entanglement under noise"};
  app.require_subcommand(1);
  Flags f;

  auto* sweep = app.add_subcommand("sweep", "concurrence along a P grid");
  add_channel(sweep, f, true);
  add_locality(sweep, f, true);
  add_state(sweep, f);
  add_grid(sweep, f);
  add_output(sweep, f);

  auto* analyze = app.add_subcommand("analyze", "sudden death, revival extrema, classification");
  add_channel(analyze, f, true);
  add_locality(analyze, f, false);
  add_state(analyze, f);
  add_grid(analyze, f);
  analyze->add_option("--out", f.out_path, "write to this file instead of stdout");

  auto* compare = app.add_subcommand("compare", "intra and inter concurrence side by side");
  add_channel(compare, f, true);
  add_state(compare, f);
  add_grid(compare, f);
  add_output(compare, f);

  auto* nonmarkov = app.add_subcommand("nonmarkov", "interparticle AD along P(t)");
  add_state(nonmarkov, f);
  nonmarkov->add_option("--big-gamma", f.cfg.big_gamma, "Gamma");
  nonmarkov->add_option("--small-gamma", f.cfg.small_gamma, "gamma");
  nonmarkov->add_option("--t-max", f.cfg.t_max, "last time point");
  nonmarkov->add_option("--steps", f.cfg.grid.steps, "number of time points");
  add_output(nonmarkov, f);

  auto* verify = app.add_subcommand("verify", "closed forms against the numeric path");
  verify->add_option("--seed", f.cfg.seed, "random seed");
  verify->add_option("--trials", f.cfg.trials, "random (state, P) pairs per channel");
  add_channel(verify, f, false);
  add_locality(verify, f, false);
  verify->add_option("--out", f.out_path, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (*sweep) f.cfg.command = Command::Sweep;
  if (*analyze) f.cfg.command = Command::Analyze;
  if (*compare) f.cfg.command = Command::Compare;
  if (*nonmarkov) f.cfg.command = Command::NonMarkov;
  if (*verify) f.cfg.command = Command::Verify;

  std::ostringstream report;
  const int code = run(f.cfg, report, std::cerr);
  if (f.out_path.empty() || (code != kExitOk && report.str().empty())) {
    std::cout << report.str() << std::flush;
    return code;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) {
    std::cerr << "config error: cannot open " << f.out_path << "\n";
    return kExitConfig;
  }
  file << report.str();
  return file ? code : kExitConfig;
}
