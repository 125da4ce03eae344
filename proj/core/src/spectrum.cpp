#include "sphdiff/spectrum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "sphdiff/errors.hpp"
#include "sphdiff/io.hpp"

namespace sphdiff {

namespace {

std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw parse_error(where + ": trailing characters in '" + s + "'");
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error(where + ": cannot parse number '" + s + "'");
  }
}

long parse_long(const std::string& s, const std::string& where) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw parse_error(where + ": cannot parse integer '" + s + "'");
  return v;
}

}  // namespace

AngularSpectrum AngularSpectrum::truncated(int L0) const {
  if (L0 < 0) throw std::domain_error("AngularSpectrum::truncated: L0 must be nonnegative");
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(L0), values_.size());
  return AngularSpectrum(std::vector<double>(values_.begin(), values_.begin() + n));
}

double dl_from_cl(int l, double cl) {
  if (l < 0) throw std::domain_error("dl_from_cl: degree must be nonnegative");
  const double ld = static_cast<double>(l);
  return ld * (ld + 1.0) * cl / (2.0 * std::numbers::pi);
}

double cl_from_dl(int l, double dl) {
  if (l < 0) throw std::domain_error("cl_from_dl: degree must be nonnegative");
  if (l == 0)
    throw std::domain_error("cl_from_dl: l(l+1) = 0 at l = 0, C_0 cannot be recovered from D_0");
  const double ld = static_cast<double>(l);
  return 2.0 * std::numbers::pi * dl / (ld * (ld + 1.0));
}

SpectrumLoadResult load_spectrum(const std::string& path,
                                 std::optional<SpectrumFormat> expected) {
  std::ifstream in(path);
  if (!in) throw io_error("load_spectrum: cannot open '" + path + "'");

  SpectrumLoadResult result;
  bool header_seen = false;
  std::vector<double> values;
  long next_l = 0;
  long line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);

    if (!header_seen) {
      const auto fields = split_csv(content);
      if (fields.size() != 2 || lower(fields[0]) != "l")
        throw parse_error(where + ": expected header 'l,Cl' or 'l,Dl'");
      const std::string col = lower(fields[1]);
      if (col == "cl")
        result.format = SpectrumFormat::Cl;
      else if (col == "dl")
        result.format = SpectrumFormat::Dl;
      else
        throw parse_error(where + ": value column must be named 'Cl' or 'Dl', got '" +
                          fields[1] + "'");
      if (expected && *expected != result.format)
        throw parse_error(where + ": header names column '" + fields[1] +
                          "' but the other format was requested");
      header_seen = true;
      continue;
    }

    const auto fields = split_csv(content);
    if (fields.size() != 2) throw parse_error(where + ": expected 'l,value'");
    const long l = parse_long(fields[0], where);
    const double raw = parse_double(fields[1], where);
    if (l < 0) throw parse_error(where + ": negative degree");
    if (l < next_l) throw parse_error(where + ": degrees must be strictly increasing");
    if (l > next_l) {
      result.warnings.push_back("degrees " + std::to_string(next_l) + ".." +
                                std::to_string(l - 1) + " missing, filled with 0");
      values.resize(static_cast<std::size_t>(l), 0.0);
    }
    values.push_back(result.format == SpectrumFormat::Dl
                         ? cl_from_dl(static_cast<int>(l), raw)
                         : raw);
    next_l = l + 1;
  }

  if (!header_seen) throw parse_error(path + ": no header line found");
  if (values.empty()) throw parse_error(path + ": no data rows");
  result.spectrum = AngularSpectrum(std::move(values));
  return result;
}

void save_spectrum(const std::string& path, const AngularSpectrum& s,
                   SpectrumFormat format,
                   const std::vector<std::string>& header_comments) {
  std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
  if (!out) throw io_error("save_spectrum: cannot open '" + path + "' for writing");
  for (const auto& c : header_comments) out << "# " << c << "\n";
  if (format == SpectrumFormat::Cl) {
    out << "l,Cl\n";
    for (int l = 0; l < s.size(); ++l)
      out << l << "," << io::format_g17(s[l]) << "\n";
  } else {
    // D_0 carries no information (l(l+1) = 0); Dl files start at l = 1.
    out << "l,Dl\n";
    for (int l = 1; l < s.size(); ++l)
      out << l << "," << io::format_g17(dl_from_cl(l, s[l])) << "\n";
  }
  if (!out) throw io_error("save_spectrum: write to '" + path + "' failed");
}

AngularSpectrum power_law_spectrum(double alpha, double scale, int l0, int lmax) {
  if (!(alpha > 2.0))
    throw std::domain_error(
        "power_law_spectrum: alpha must exceed 2 (sum (2l+1) C_l diverges otherwise)");
  if (!(scale > 0.0)) throw std::domain_error("power_law_spectrum: scale must be positive");
  if (l0 < 0 || lmax < l0)
    throw std::domain_error("power_law_spectrum: need 0 <= l0 <= lmax");
  std::vector<double> values(static_cast<std::size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l)
    values[static_cast<std::size_t>(l)] =
        (l >= std::max(1, l0)) ? scale * std::pow(static_cast<double>(l), -alpha) : scale;
  return AngularSpectrum(std::move(values));
}

SpectrumReport validate_spectrum(const AngularSpectrum& s) {
  SpectrumReport report;
  for (int l = 0; l < s.size(); ++l) {
    const double cl = s[l];
    if (cl < 0.0 || !std::isfinite(cl))
      throw std::domain_error("validate_spectrum: C_" + std::to_string(l) + " = " +
                              io::format_g17(cl) + " is not a valid power spectrum value");
    const double w = 2.0 * l + 1.0;
    report.sum_weighted += w * cl;
    report.sum_weighted_cubed += w * w * w * cl;
  }

  // Tail exponent: log-log least squares over the top decade of degrees.
  const int lmax = s.lmax();
  const int lo = std::max(1, lmax / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int l = lo; l <= lmax; ++l) {
    if (!(s[l] > 0.0)) continue;
    const double x = std::log(static_cast<double>(l));
    const double y = std::log(s[l]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n >= 5) {
    const double denom = n * sxx - sx * sx;
    if (denom > 0) report.tail_exponent = -(n * sxy - sx * sy) / denom;
  }
  if (report.tail_exponent && *report.tail_exponent > 2.0 && s[lmax] > 0.0) {
    const double alpha = *report.tail_exponent;
    report.tail_remainder_estimate =
        2.0 * s[lmax] * static_cast<double>(lmax) * lmax / (alpha - 2.0);
  }
  return report;
}

}  // namespace sphdiff
