#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sphdiff/errors.hpp"
#include "sphdiff/version.hpp"

namespace {

using sphdiff::cli::Options;
using sphdiff::cli::TimeUnit;

std::string join_invocation(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// Preset fields yield to explicitly given flags.
void apply_preset(Options& opt, const std::string& name, bool c_given, bool d_given,
                  bool k_given, bool t_given, bool l_given) {
  double k = 0.0;
  if (name == "cmb-k0.01") k = 0.01;
  else if (name == "cmb-k0.05") k = 0.05;
  else if (name == "cmb-k0.1") k = 0.1;
  else throw CLI::ValidationError("--preset", "unknown preset '" + name + "'");
  if (!c_given) opt.params.c = 1.0;
  if (!d_given) opt.params.D = 1.0;
  if (!k_given) opt.params.k = k;
  if (!t_given) {
    opt.time_unit = TimeUnit::tprime;
    opt.t_list = {0.0, 0.02, 0.04};
  }
  if (!l_given) opt.truncation = 2508;
}

std::size_t count_opt(const CLI::App* sub, const std::string& name) {
  const auto* o = sub->get_option_no_throw(name);
  return o ? o->count() : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphdiff: spectral simulation and analysis of random hyperbolic "
               "diffusion on the unit sphere"};
  app.set_version_flag("--version", sphdiff::version_string);
  app.require_subcommand(1);

  Options opt;
  opt.invocation = join_invocation(argc, argv);

  std::string preset, time_unit = "tprime", format;

  const auto add_common = [&](CLI::App* cmd, bool needs_spectrum) {
    if (needs_spectrum) {
      cmd->add_option("--spectrum", opt.spectrum_path, "spectrum CSV (header l,Cl or l,Dl)")
          ->required();
      cmd->add_option("--format", format, "expected spectrum format")
          ->check(CLI::IsMember({"cl", "dl"}));
    }
    cmd->add_option("--c", opt.params.c, "propagation speed bound (> 0)");
    cmd->add_option("--D", opt.params.D, "diffusivity (> 0)");
    cmd->add_option("--k", opt.params.k, "spatial scale constant (!= 0)");
    cmd->add_option("--preset", preset,
                    "parameter bundle cmb-k0.01|cmb-k0.05|cmb-k0.1: c=D=1, the named k, "
                    "t' in {0, 0.02, 0.04}, truncation 2508");
    cmd->add_option("--time-unit", time_unit, "unit of --t values: t | tprime")
        ->check(CLI::IsMember({"t", "tprime"}));
    cmd->add_option("--seed", opt.seed, "RNG seed (field sampling)");
    cmd->add_option("--out", opt.out, "output file or directory");
  };

  auto* evolve = app.add_subcommand(
      "evolve", "sample an initial field, evolve it, write map CSVs (and PGM heatmaps)");
  add_common(evolve, true);
  evolve->add_option("--t", opt.t_list, "times to evolve to (comma separated)")
      ->delimiter(',');
  evolve->add_option("--L", opt.truncation, "truncation degree for the synthesis");
  evolve->add_option("--grid", opt.grid_spec, "grid spec neq:NTHETAxNPHI | gl:NTHETAxNPHI");
  evolve->add_option("--threads", opt.threads, "synthesis threads (0 = all cores)");
  evolve->add_flag("--pgm", opt.pgm, "also write 8-bit PGM heatmaps with JSON sidecars");

  auto* spectrum_evolve = app.add_subcommand(
      "spectrum-evolve", "write the evolved scaled spectrum D_l(t) and the multipliers");
  add_common(spectrum_evolve, true);
  spectrum_evolve->add_option("--t", opt.t_list, "times (comma separated)")
      ->delimiter(',');
  spectrum_evolve->add_option("--L", opt.truncation, "truncate the spectrum to L entries");

  auto* cov = app.add_subcommand("cov", "covariance surface over angular distance and times");
  add_common(cov, true);
  cov->add_option("--t", opt.t_list, "time grid (comma separated)")
      ->delimiter(',');
  cov->add_option("--L", opt.truncation, "truncation degree of the covariance sum");
  cov->add_option("--theta-grid", opt.theta_count,
                  "number of angular distances spanning [0, pi]");
  cov->add_flag("--normalize", opt.normalize,
                "divide by the variance at (theta, t, t') = (0, 0, 0)");

  auto* trunc = app.add_subcommand(
      "truncation", "exact truncation errors and their upper bounds over L");
  add_common(trunc, true);
  trunc->add_option("--t", opt.t_list, "single evaluation time")->delimiter(',');
  trunc->add_option("--L", opt.l_list, "truncation degrees (comma separated)")
      ->delimiter(',')
      ->required();

  auto* incr = app.add_subcommand(
      "increment", "temporal increment norms |u(t+h) - u(t)| over a list of h");
  incr->set_help_flag("--help", "print help");  // frees -h for the option below
  add_common(incr, true);
  incr->add_option("--t", opt.t_list, "single base time")->delimiter(',');
  incr->add_option("--h", opt.h_list, "increments (comma separated)")
      ->delimiter(',')
      ->required();
  incr->add_option("--L", opt.truncation, "truncate the spectrum to L entries");

  auto* diff = app.add_subcommand("diffusion-length",
                                  "flat-space point-source diffusion length");
  diff->add_option("--Q", opt.q_mass, "total mass of the disturbance")->required();
  diff->add_option("--u", opt.u_threshold, "threshold density")->required();
  diff->add_option("--D", opt.params.D, "diffusivity");
  diff->add_option("--out", opt.out, "optional CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    if (!preset.empty())
      apply_preset(opt, preset, count_opt(active, "--c") > 0,
                   count_opt(active, "--D") > 0, count_opt(active, "--k") > 0,
                   count_opt(active, "--t") > 0, count_opt(active, "--L") > 0);
    if (time_unit == "t") opt.time_unit = TimeUnit::physical;
    if (format == "cl") opt.format = sphdiff::SpectrumFormat::Cl;
    if (format == "dl") opt.format = sphdiff::SpectrumFormat::Dl;
    opt.params.validate();

    if (evolve->parsed()) return sphdiff::cli::cmd_evolve(opt);
    if (spectrum_evolve->parsed()) return sphdiff::cli::cmd_spectrum_evolve(opt);
    if (cov->parsed()) return sphdiff::cli::cmd_cov(opt);
    if (trunc->parsed()) return sphdiff::cli::cmd_truncation(opt);
    if (incr->parsed()) return sphdiff::cli::cmd_increment(opt);
    if (diff->parsed()) return sphdiff::cli::cmd_diffusion_length(opt);
  } catch (const sphdiff::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
