#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphdiff/mode_evolution.hpp"
#include "sphdiff/spectrum.hpp"

namespace sphdiff::cli {

enum class TimeUnit { physical, tprime };

/// Options shared by the subcommands; every field has a deterministic default
/// so identical invocations always produce identical outputs.
struct Options {
  std::string invocation;  // argv joined verbatim, echoed into file headers

  std::string spectrum_path;
  std::optional<SpectrumFormat> format;
  ModelParams params{1.0, 1.0, 0.01};
  TimeUnit time_unit = TimeUnit::tprime;
  std::vector<double> t_list;
  std::vector<double> h_list;
  std::vector<int> l_list;
  int truncation = 0;  // 0: use the full spectrum
  std::uint64_t seed = 20240101;
  std::string grid_spec = "neq:180x360";
  std::string out;
  bool pgm = false;
  bool normalize = false;
  unsigned threads = 0;
  int theta_count = 64;
  double q_mass = 1.0;
  double u_threshold = 1.0;
};

int cmd_evolve(const Options& opt);
int cmd_spectrum_evolve(const Options& opt);
int cmd_cov(const Options& opt);
int cmd_truncation(const Options& opt);
int cmd_increment(const Options& opt);
int cmd_diffusion_length(const Options& opt);

}  // namespace sphdiff::cli
