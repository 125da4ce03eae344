#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "sphdiff/analysis.hpp"
#include "sphdiff/diffusion.hpp"
#include "sphdiff/errors.hpp"
#include "sphdiff/grid.hpp"
#include "sphdiff/io.hpp"
#include "sphdiff/random_field.hpp"
#include "sphdiff/version.hpp"

namespace sphdiff::cli {

namespace fs = std::filesystem;
using sphdiff::io::format_g17;

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

void write_header(std::ostream& out, const Options& opt,
                  const std::vector<std::string>& extra = {}) {
  out << "# sphdiff " << version_string << "\n";
  out << "# invocation: " << opt.invocation << "\n";
  for (const auto& line : extra) out << "# " << line << "\n";
}

double to_physical(double value, const Options& opt) {
  return opt.time_unit == TimeUnit::tprime ? physical_time(value, opt.params) : value;
}

AngularSpectrum load_validated_spectrum(const Options& opt) {
  if (opt.spectrum_path.empty())
    throw std::invalid_argument("--spectrum is required for this command");
  auto loaded = load_spectrum(opt.spectrum_path, opt.format);
  for (const auto& w : loaded.warnings)
    std::cerr << "warning: " << opt.spectrum_path << ": " << w << "\n";
  validate_spectrum(loaded.spectrum);
  if (opt.truncation > 0) return loaded.spectrum.truncated(opt.truncation);
  return loaded.spectrum;
}

struct FieldStats {
  double min, max, mean, mean_abs, max_abs;
};

FieldStats stats(const std::vector<double>& v) {
  FieldStats s{v[0], v[0], 0.0, 0.0, 0.0};
  for (const double x : v) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    s.mean += x;
    s.mean_abs += std::abs(x);
    s.max_abs = std::max(s.max_abs, std::abs(x));
  }
  s.mean /= static_cast<double>(v.size());
  s.mean_abs /= static_cast<double>(v.size());
  return s;
}

void write_map_csv(const std::string& path, const Options& opt,
                   const SphereGrid& grid, const std::vector<double>& field,
                   const std::vector<std::string>& extra) {
  auto out = open_output(path);
  write_header(out, opt, extra);
  out << "theta,phi,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [theta, phi] = grid.point(i);
    out << format_g17(theta) << "," << format_g17(phi) << "," << format_g17(field[i])
        << "\n";
  }
  if (!out) throw io_error("write to '" + path + "' failed");
}

void write_map_pgm(const std::string& base, const Options& opt,
                   const SphereGrid& grid, const std::vector<double>& field) {
  const auto st = stats(field);
  {
    auto out = open_output(base + ".pgm");
    out << "P5\n";
    out << "# sphdiff " << version_string << "\n";
    out << "# invocation: " << opt.invocation << "\n";
    out << grid.nphi() << " " << grid.ntheta() << "\n255\n";
    const double span = st.max - st.min;
    std::string bytes;
    bytes.reserve(field.size());
    for (const double v : field) {
      const double unit = span > 0.0 ? (v - st.min) / span : 0.0;
      const int byte = std::clamp(static_cast<int>(std::lround(255.0 * unit)), 0, 255);
      bytes.push_back(static_cast<char>(byte));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write to '" + base + ".pgm' failed");
  }
  // scaling bounds go to a sidecar so the image stays reconstructible
  nlohmann::json side;
  side["version"] = version_string;
  side["invocation"] = opt.invocation;
  side["file"] = fs::path(base + ".pgm").filename().string();
  side["ntheta"] = grid.ntheta();
  side["nphi"] = grid.nphi();
  side["min"] = st.min;
  side["max"] = st.max;
  auto out = open_output(base + ".json");
  out << side.dump(2) << "\n";
  if (!out) throw io_error("write to '" + base + ".json' failed");
}

}  // namespace

int cmd_evolve(const Options& opt) {
  const auto spectrum = load_validated_spectrum(opt);
  const auto grid = parse_grid_spec(opt.grid_spec);
  if (opt.t_list.empty()) throw std::invalid_argument("--t is required for evolve");
  if (opt.out.empty()) throw std::invalid_argument("--out is required for evolve");
  fs::create_directories(opt.out);

  const auto coeffs = sample_coefficients(spectrum, opt.seed);

  std::vector<std::vector<double>> maps;
  maps.reserve(opt.t_list.size());
  for (std::size_t i = 0; i < opt.t_list.size(); ++i) {
    const double t = to_physical(opt.t_list[i], opt);
    const auto evolved = evolve_coefficients(coeffs, t, opt.params);
    maps.push_back(synthesize(evolved, grid, opt.threads));

    const std::string base = (fs::path(opt.out) / ("map_t" + std::to_string(i))).string();
    const auto st = stats(maps.back());
    write_map_csv(base + ".csv", opt, grid, maps.back(),
                  {"time: t=" + format_g17(t) +
                       " tprime=" + format_g17(dimensionless_time(t, opt.params)),
                   "grid: " + opt.grid_spec,
                   "truncation degree: " + std::to_string(spectrum.size())});
    if (opt.pgm) write_map_pgm(base, opt, grid, maps.back());
    std::cout << "map_t" << i << ": min=" << format_g17(st.min)
              << " max=" << format_g17(st.max) << " mean=" << format_g17(st.mean)
              << "\n";
  }

  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      std::vector<double> diff(maps[i].size());
      for (std::size_t n = 0; n < diff.size(); ++n) diff[n] = maps[i][n] - maps[j][n];
      const std::string base =
          (fs::path(opt.out) /
           ("diff_t" + std::to_string(i) + "_t" + std::to_string(j)))
              .string();
      write_map_csv(base + ".csv", opt, grid, diff,
                    {"difference map: u(., t" + std::to_string(i) + ") - u(., t" +
                     std::to_string(j) + ")"});
      if (opt.pgm) write_map_pgm(base, opt, grid, diff);
      const auto st = stats(diff);
      // a bounded max/|mean| ratio flags the absence of localized extremes
      std::cout << "diff_t" << i << "_t" << j << ": max_abs=" << format_g17(st.max_abs)
                << " mean_abs=" << format_g17(st.mean_abs) << " max_over_mean="
                << format_g17(st.mean_abs > 0 ? st.max_abs / st.mean_abs : 0.0) << "\n";
    }
  return 0;
}

int cmd_spectrum_evolve(const Options& opt) {
  const auto spectrum = load_validated_spectrum(opt);
  if (opt.t_list.empty())
    throw std::invalid_argument("--t is required for spectrum-evolve");
  if (opt.out.empty()) throw std::invalid_argument("--out is required for spectrum-evolve");

  std::vector<double> times(opt.t_list.size());
  std::vector<AngularSpectrum> evolved;
  evolved.reserve(opt.t_list.size());
  for (std::size_t i = 0; i < opt.t_list.size(); ++i) {
    times[i] = to_physical(opt.t_list[i], opt);
    evolved.push_back(evolved_spectrum(spectrum, times[i], opt.params));
  }

  auto out = open_output(opt.out);
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < times.size(); ++i)
    extra.push_back("t" + std::to_string(i) + ": t=" + format_g17(times[i]) +
                    " tprime=" + format_g17(dimensionless_time(times[i], opt.params)));
  write_header(out, opt, extra);

  out << "l";
  for (std::size_t i = 0; i < times.size(); ++i) out << ",Dl_t" << i;
  for (std::size_t i = 0; i < times.size(); ++i) out << ",mult_t" << i;
  out << "\n";
  for (int l = 0; l < spectrum.size(); ++l) {
    out << l;
    for (const auto& ev : evolved) out << "," << format_g17(dl_from_cl(l, ev[l]));
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double f = mode_factor(l, times[i], opt.params);
      out << "," << format_g17(f * f);
    }
    out << "\n";
  }
  if (!out) throw io_error("write to '" + opt.out + "' failed");
  return 0;
}

int cmd_cov(const Options& opt) {
  const auto spectrum = load_validated_spectrum(opt);
  if (opt.t_list.empty()) throw std::invalid_argument("--t is required for cov");
  if (opt.out.empty()) throw std::invalid_argument("--out is required for cov");
  if (opt.theta_count < 2)
    throw std::invalid_argument("--theta-grid needs at least 2 points");

  const int L = spectrum.size();
  std::vector<double> times(opt.t_list.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = to_physical(opt.t_list[i], opt);

  double norm = 1.0;
  if (opt.normalize) {
    norm = covariance({0.0, 0.0, 0.0, L}, spectrum, opt.params);
    if (norm == 0.0) throw std::domain_error("cov: cannot normalize by zero variance");
  }

  auto out = open_output(opt.out);
  write_header(out, opt,
               opt.normalize
                   ? std::vector<std::string>{"normalized by the variance at "
                                              "(theta, t, t') = (0, 0, 0)"}
                   : std::vector<std::string>{});
  out << "theta,t,tprime,cov\n";
  for (int it = 0; it < opt.theta_count; ++it) {
    const double theta =
        std::numbers::pi * static_cast<double>(it) / (opt.theta_count - 1);
    for (std::size_t a = 0; a < times.size(); ++a)
      for (std::size_t b = 0; b < times.size(); ++b) {
        const double c = covariance({theta, times[a], times[b], L}, spectrum, opt.params);
        out << format_g17(theta) << "," << format_g17(times[a]) << ","
            << format_g17(times[b]) << "," << format_g17(c / norm) << "\n";
      }
  }
  if (!out) throw io_error("write to '" + opt.out + "' failed");
  return 0;
}

int cmd_truncation(const Options& opt) {
  const auto spectrum = load_validated_spectrum(opt);
  if (opt.t_list.size() != 1)
    throw std::invalid_argument("--t must name exactly one time for truncation");
  if (opt.l_list.empty()) throw std::invalid_argument("--L is required for truncation");
  if (opt.out.empty()) throw std::invalid_argument("--out is required for truncation");

  const double t = to_physical(opt.t_list[0], opt);
  auto out = open_output(opt.out);
  write_header(out, opt,
               {"t=" + format_g17(t) +
                " tprime=" + format_g17(dimensionless_time(t, opt.params))});
  out << "L,error,bound,log_diff\n";
  for (const int L : opt.l_list) {
    const double err = truncation_error_exact(L, t, spectrum, opt.params);
    const double bnd = truncation_bound(L, t, spectrum, opt.params);
    const double diff = bnd - err;
    out << L << "," << format_g17(err) << "," << format_g17(bnd) << ","
        << (diff > 0.0 ? format_g17(std::log(diff)) : "-inf") << "\n";
  }
  if (!out) throw io_error("write to '" + opt.out + "' failed");
  return 0;
}

int cmd_increment(const Options& opt) {
  const auto spectrum = load_validated_spectrum(opt);
  if (opt.t_list.size() != 1)
    throw std::invalid_argument("--t must name exactly one time for increment");
  if (opt.h_list.empty()) throw std::invalid_argument("--h is required for increment");
  if (opt.out.empty()) throw std::invalid_argument("--out is required for increment");

  const double t = to_physical(opt.t_list[0], opt);
  auto out = open_output(opt.out);
  write_header(out, opt,
               {"t=" + format_g17(t) +
                " tprime=" + format_g17(dimensionless_time(t, opt.params))});
  out << "h,norm\n";
  for (const double h_raw : opt.h_list) {
    const double h = to_physical(h_raw, opt);
    out << format_g17(h) << ","
        << format_g17(temporal_increment_norm(t, h, spectrum, opt.params)) << "\n";
  }
  if (!out) throw io_error("write to '" + opt.out + "' failed");
  return 0;
}

int cmd_diffusion_length(const Options& opt) {
  const auto result = diffusion_length(opt.q_mass, opt.u_threshold, opt.params.D);
  std::cout << "r_D=" << format_g17(result.r_d) << " t_star=" << format_g17(result.t_star)
            << "\n";
  if (!opt.out.empty()) {
    auto out = open_output(opt.out);
    write_header(out, opt);
    out << "Q,u,D,r_D,t_star\n";
    out << format_g17(opt.q_mass) << "," << format_g17(opt.u_threshold) << ","
        << format_g17(opt.params.D) << "," << format_g17(result.r_d) << ","
        << format_g17(result.t_star) << "\n";
    if (!out) throw io_error("write to '" + opt.out + "' failed");
  }
  return 0;
}

}  // namespace sphdiff::cli
