#include "sphdiff/coefficients.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sphdiff/errors.hpp"
#include "sphdiff/io.hpp"

namespace sphdiff {

HarmonicCoefficients::HarmonicCoefficients(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw std::domain_error("HarmonicCoefficients: lmax must be nonnegative");
  const auto n = static_cast<std::size_t>(lmax) + 1;
  data_.assign(n * (n + 1) / 2, {0.0, 0.0});
}

std::size_t HarmonicCoefficients::index(int l, int m) const {
  if (l < 0 || l > lmax_ || m < 0 || m > l)
    throw std::domain_error("HarmonicCoefficients: index (l, m) = (" + std::to_string(l) +
                            ", " + std::to_string(m) + ") out of range for lmax " +
                            std::to_string(lmax_));
  return static_cast<std::size_t>(l) * (l + 1) / 2 + static_cast<std::size_t>(m);
}

std::complex<double> HarmonicCoefficients::get(int l, int m) const {
  if (m >= 0) return data_[index(l, m)];
  const std::complex<double> v = data_[index(l, -m)];
  // a_{l,-m} = (-1)^m conj(a_lm)
  return ((-m) & 1) ? -std::conj(v) : std::conj(v);
}

std::complex<double>& HarmonicCoefficients::at(int l, int m) { return data_[index(l, m)]; }

const std::complex<double>& HarmonicCoefficients::at(int l, int m) const {
  return data_[index(l, m)];
}

void save_coefficients(const std::string& path, const HarmonicCoefficients& c,
                       const std::vector<std::string>& header_comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("save_coefficients: cannot open '" + path + "' for writing");
  for (const auto& h : header_comments) out << "# " << h << "\n";
  out << "l,m,re,im\n";
  for (int l = 0; l <= c.lmax(); ++l)
    for (int m = 0; m <= l; ++m) {
      const auto v = c.at(l, m);
      out << l << "," << m << "," << io::format_g17(v.real()) << ","
          << io::format_g17(v.imag()) << "\n";
    }
  if (!out) throw io_error("save_coefficients: write to '" + path + "' failed");
}

HarmonicCoefficients load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("load_coefficients: cannot open '" + path + "'");

  struct Row {
    int l, m;
    std::complex<double> v;
  };
  std::vector<Row> rows;
  int lmax = -1;
  bool header_seen = false;
  long line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string s = line;
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    s = s.substr(b);
    if (s.empty() || s.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);

    if (!header_seen) {
      if (s != "l,m,re,im") throw parse_error(where + ": expected header 'l,m,re,im'");
      header_seen = true;
      continue;
    }

    long l = 0, m = 0;
    double re = 0, im = 0;
    const char* p = s.data();
    const char* end = s.data() + s.size();
    auto eat_int = [&](long& out_v) {
      const auto [np, ec] = std::from_chars(p, end, out_v);
      if (ec != std::errc{} || np == end || *np != ',')
        throw parse_error(where + ": malformed row");
      p = np + 1;
    };
    eat_int(l);
    eat_int(m);
    {
      std::size_t used = 0;
      const std::string rest(p, end);
      const std::size_t comma = rest.find(',');
      if (comma == std::string::npos) throw parse_error(where + ": malformed row");
      try {
        re = std::stod(rest.substr(0, comma), &used);
        im = std::stod(rest.substr(comma + 1), &used);
      } catch (const std::exception&) {
        throw parse_error(where + ": cannot parse coefficient value");
      }
    }
    if (l < 0 || m < 0 || m > l) throw parse_error(where + ": need 0 <= m <= l");
    if (m == 0 && im != 0.0)
      throw parse_error(where + ": m = 0 coefficients must be real");
    rows.push_back({static_cast<int>(l), static_cast<int>(m), {re, im}});
    lmax = std::max(lmax, static_cast<int>(l));
  }
  if (!header_seen) throw parse_error(path + ": no header line found");
  if (lmax < 0) throw parse_error(path + ": no data rows");

  HarmonicCoefficients out(lmax);
  for (const auto& r : rows) out.at(r.l, r.m) = r.v;
  return out;
}

}  // namespace sphdiff
